#include "sortpm/params_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sortpm/errors.hpp"

namespace sortpm {

namespace {

struct Field {
    const char* key;
    double GeometryParams::*member;
    bool required;
};

constexpr Field kFields[] = {
    {"a", &GeometryParams::a, true},    {"l1", &GeometryParams::l1, true},
    {"l2", &GeometryParams::l2, true},  {"l3", &GeometryParams::l3, true},
    {"l4", &GeometryParams::l4, true},  {"l5", &GeometryParams::l5, true},
    {"l6", &GeometryParams::l6, true},  {"l7", &GeometryParams::l7, true},
    {"l0", &GeometryParams::l0, false}, {"l8", &GeometryParams::l8, false},
};

}  // namespace

LoadedParams parse_params_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("params: malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("params: top-level value must be an object");

    LoadedParams out;
    for (const auto& f : kFields) {
        auto it = doc.find(f.key);
        if (it == doc.end()) {
            if (f.required) throw InputError(std::string("params: missing key \"") + f.key + "\"");
            out.warnings.push_back(std::string("params: \"") + f.key + "\" absent, defaulting to 0");
            continue;
        }
        if (!it->is_number()) {
            throw InputError(std::string("params: key \"") + f.key + "\" must be numeric");
        }
        out.params.*f.member = it->get<double>();
    }
    for (const auto& [key, value] : doc.items()) {
        bool known = false;
        for (const auto& f : kFields) known = known || key == f.key;
        if (!known) out.warnings.push_back("params: unknown key \"" + key + "\" ignored");
    }
    return out;
}

LoadedParams load_params_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("params: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_params_json(buf.str());
}

std::string params_to_json(const GeometryParams& p) {
    nlohmann::ordered_json doc;
    for (const auto& f : kFields) doc[f.key] = p.*f.member;
    return doc.dump(2);
}

}  // namespace sortpm
