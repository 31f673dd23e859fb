#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sortpm/geometry.hpp"

namespace sortpm {

struct LoadedParams {
    GeometryParams params;
    std::vector<std::string> warnings;  // e.g. l0/l8 absent and defaulted to 0
};

// Parses the flat JSON parameter object {"a":..,"l1":..,...,"l8":..,"l0":..}.
// Keys a and l1..l7 are required; l0 and l8 default to 0 with a warning.
// Throws InputError on malformed JSON, missing required keys or non-numeric values.
LoadedParams parse_params_json(std::string_view text);
LoadedParams load_params_file(const std::filesystem::path& path);

std::string params_to_json(const GeometryParams& p);

}  // namespace sortpm
