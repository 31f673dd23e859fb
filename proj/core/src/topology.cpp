#include "sortpm/topology.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include "sortpm/errors.hpp"

namespace sortpm {

namespace {

using Basis = Eigen::Matrix<double, 3, Eigen::Dynamic>;

const Eigen::Vector3d kX = Eigen::Vector3d::UnitX();
const Eigen::Vector3d kY = Eigen::Vector3d::UnitY();
const Eigen::Vector3d kZ = Eigen::Vector3d::UnitZ();

// Orthonormal basis of the column span and of its complement.
std::pair<Basis, Basis> split_span(const Basis& M) {
    if (M.cols() == 0) return {Basis(3, 0), Basis(Eigen::Matrix3d::Identity())};
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv[i] > Subspace::kRankTolerance) ++rank;
    }
    const Eigen::Matrix3d U = svd.matrixU();
    return {Basis(U.leftCols(rank)), Basis(U.rightCols(3 - rank))};
}

bool parallel(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    return a.normalized().cross(b.normalized()).norm() <= 1e-9;
}

bool perpendicular(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    return std::abs(a.normalized().dot(b.normalized())) <= 1e-9;
}

std::string axis_name(const Eigen::Vector3d& v) {
    if (parallel(v, kX)) return "x";
    if (parallel(v, kY)) return "y";
    if (parallel(v, kZ)) return "z";
    std::ostringstream out;
    const Eigen::Vector3d u = v.normalized();
    out << "[" << u.x() << "," << u.y() << "," << u.z() << "]";
    return out.str();
}

std::string plane_name(const Eigen::Vector3d& normal) {
    if (parallel(normal, kX)) return "||yoz";
    if (parallel(normal, kY)) return "||xoz";
    if (parallel(normal, kZ)) return "||xoy";
    return "_|_" + axis_name(normal);
}

std::string describe_part(char symbol, const Subspace& s) {
    std::string out(1, symbol);
    out += "^" + std::to_string(s.dim());
    if (s.dim() == 1) {
        out += "(||" + axis_name(s.basis().col(0)) + ")";
    } else if (s.dim() == 2) {
        out += "(" + plane_name(s.orthogonal_complement().basis().col(0)) + ")";
    }
    return out;
}

}  // namespace

Subspace Subspace::span(const std::vector<Eigen::Vector3d>& directions) {
    Basis M(3, static_cast<Eigen::Index>(directions.size()));
    Eigen::Index k = 0;
    for (const auto& d : directions) {
        const double n = d.norm();
        M.col(k++) = n > 0.0 ? Eigen::Vector3d(d / n) : d;
    }
    return Subspace(split_span(M).first);
}

Subspace Subspace::full() { return Subspace(Basis(Eigen::Matrix3d::Identity())); }

bool Subspace::contains(const Eigen::Vector3d& v, double tol) const {
    const Eigen::Vector3d projected = basis_ * (basis_.transpose() * v);
    return (v - projected).norm() <= tol * std::max(1.0, v.norm());
}

Subspace Subspace::orthogonal_complement() const { return Subspace(split_span(basis_).second); }

Subspace Subspace::sum(const Subspace& other) const {
    Basis M(3, basis_.cols() + other.basis_.cols());
    M << basis_, other.basis_;
    return Subspace(split_span(M).first);
}

Subspace Subspace::intersect(const Subspace& other) const {
    return orthogonal_complement().sum(other.orthogonal_complement()).orthogonal_complement();
}

Subspace Subspace::rotated(const Eigen::Matrix3d& R) const { return Subspace(Basis(R * basis_)); }

bool Subspace::operator==(const Subspace& other) const {
    if (dim() != other.dim()) return false;
    for (Eigen::Index i = 0; i < other.basis_.cols(); ++i) {
        if (!contains(other.basis_.col(i))) return false;
    }
    return true;
}

std::string PocSet::describe() const {
    return "[" + describe_part('t', t) + "; " + describe_part('r', r) + "]";
}

PocSet poc_union(const PocSet& a, const PocSet& b) { return {a.t.sum(b.t), a.r.sum(b.r)}; }

PocSet poc_intersect(const PocSet& a, const PocSet& b) {
    return {a.t.intersect(b.t), a.r.intersect(b.r)};
}

int loop_equation_count(const PocSet& sub_poc, const PocSet& next_limb_poc) {
    return poc_union(sub_poc, next_limb_poc).dim();
}

std::string motion_pattern(const PocSet& poc) {
    return std::to_string(poc.t_dim()) + "T" + std::to_string(poc.r_dim()) + "R";
}

std::string LoopSpec::str() const {
    std::string out;
    for (std::size_t i = 0; i < joints.size(); ++i) {
        if (i > 0) {
            switch (relations[i - 1]) {
                case AxisRelation::Parallel: out += " || "; break;
                case AxisRelation::Perpendicular: out += " ^ "; break;
                case AxisRelation::Unspecified: out += " - "; break;
            }
        }
        out += joints[i].label;
        if (joints[i].actuated) out += "*";
        if (joints[i].axis) out += "(" + axis_name(*joints[i].axis) + ")";
    }
    return out;
}

namespace {

class LoopParser {
public:
    explicit LoopParser(std::string_view text) : text_(text) {}

    LoopSpec parse() {
        trim_decorations();
        LoopSpec loop;
        if (at_end()) throw InputError("loop notation: empty loop");
        loop.joints.push_back(joint());
        while (true) {
            skip_space();
            if (at_end()) break;
            const AxisRelation rel = relation();
            skip_space();
            if (at_end()) throw InputError("loop notation: dangling relation at end");
            loop.relations.push_back(rel);
            loop.joints.push_back(joint());
        }
        infer_axes(loop);
        for (const auto& j : loop.joints) loop.actuated += j.actuated ? 1 : 0;
        return loop;
    }

private:
    void trim_decorations() {
        auto is_trim = [](char c) {
            return std::isspace(static_cast<unsigned char>(c)) || c == '{' || c == '}';
        };
        while (!text_.empty() && is_trim(text_.front())) text_.remove_prefix(1);
        while (!text_.empty() && is_trim(text_.back())) text_.remove_suffix(1);
        // Chain notation may open and close with a bare "-".
        if (!text_.empty() && text_.front() == '-') text_.remove_prefix(1);
        if (!text_.empty() && text_.back() == '-') text_.remove_suffix(1);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(std::string_view token) {
        if (text_.substr(pos_).starts_with(token)) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("loop notation: " + what + " at offset " + std::to_string(pos_) +
                         " in \"" + std::string(text_) + "\"");
    }

    AxisRelation relation() {
        if (consume("||") || consume("∥")) return AxisRelation::Parallel;
        if (consume("^") || consume("⊥")) return AxisRelation::Perpendicular;
        if (consume("-")) return AxisRelation::Unspecified;
        fail("expected relation '||', '^' or '-'");
    }

    JointDescriptor joint() {
        JointDescriptor j;
        const std::size_t start = pos_;
        if (consume("Pa") || consume("π")) {
            j.kind = JointKind::Parallelogram;
        } else if (consume("P")) {
            j.kind = JointKind::Prismatic;
        } else if (consume("R")) {
            j.kind = JointKind::Revolute;
        } else {
            fail("expected joint kind P, R or Pa");
        }
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        j.label = std::string(text_.substr(start, pos_ - start));
        if (consume("*")) j.actuated = true;
        if (consume("(")) {
            const std::size_t close = text_.find(')', pos_);
            if (close == std::string_view::npos) fail("unterminated axis");
            j.axis = parse_axis(text_.substr(pos_, close - pos_));
            pos_ = close + 1;
        }
        return j;
    }

    Eigen::Vector3d parse_axis(std::string_view body) const {
        std::string s;
        for (char c : body) {
            if (!std::isspace(static_cast<unsigned char>(c))) s += c;
        }
        if (s == "x") return kX;
        if (s == "y") return kY;
        if (s == "z") return kZ;
        Eigen::Vector3d v;
        std::stringstream in(s);
        std::string item;
        int k = 0;
        while (std::getline(in, item, ',')) {
            if (k >= 3) fail("axis needs three components");
            char* end = nullptr;
            v[k++] = std::strtod(item.c_str(), &end);
            if (item.empty() || end != item.c_str() + item.size()) fail("bad axis component");
        }
        if (k != 3) fail("axis needs three components");
        if (v.norm() == 0.0) fail("zero axis");
        return v.normalized();
    }

    static void infer_axes(LoopSpec& loop) {
        auto& js = loop.joints;
        if (!js.front().axis) js.front().axis = kY;
        for (std::size_t i = 1; i < js.size(); ++i) {
            const AxisRelation rel = loop.relations[i - 1];
            const auto& prev = js[i - 1].axis;
            auto& cur = js[i].axis;
            if (cur && prev) {
                if (rel == AxisRelation::Parallel && !parallel(*cur, *prev)) {
                    throw InputError("loop notation: " + js[i - 1].label + " || " + js[i].label +
                                     " but axes are not parallel");
                }
                if (rel == AxisRelation::Perpendicular && !perpendicular(*cur, *prev)) {
                    throw InputError("loop notation: " + js[i - 1].label + " ^ " + js[i].label +
                                     " but axes are not perpendicular");
                }
                continue;
            }
            if (cur || !prev) continue;
            if (rel == AxisRelation::Parallel) {
                cur = *prev;
            } else if (rel == AxisRelation::Perpendicular) {
                for (const auto& candidate : {kX, kY, kZ}) {
                    if (perpendicular(candidate, *prev)) {
                        cur = candidate;
                        break;
                    }
                }
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

LoopSpec parse_loop(std::string_view notation) { return LoopParser(notation).parse(); }

PocSet joint_poc(const JointDescriptor& joint, bool base_on_axis) {
    if (!joint.axis) throw InputError("joint " + joint.label + " has no axis");
    const Subspace along = Subspace::span({*joint.axis});
    switch (joint.kind) {
        case JointKind::Prismatic:
        case JointKind::Parallelogram:
            return {along, Subspace::empty()};
        case JointKind::Revolute:
            return {base_on_axis ? Subspace::empty() : along.orthogonal_complement(), along};
    }
    return {};
}

PocSet limb_poc(const std::vector<PocSet>& joint_pocs) {
    PocSet out;
    for (const auto& j : joint_pocs) out = poc_union(out, j);
    return out;
}

MobilityResult mobility_analysis(const std::vector<LoopSpec>& loops, const std::vector<int>& xi) {
    if (loops.empty()) throw InputError("mobility_analysis: no loops");
    if (xi.size() != loops.size()) throw InputError("mobility_analysis: one xi per loop required");
    MobilityResult m;
    int total_f = 0;
    int total_xi = 0;
    int abs_delta = 0;
    for (std::size_t j = 0; j < loops.size(); ++j) {
        const int f = loops[j].freedoms();
        const int d = f - loops[j].actuated - xi[j];
        m.freedoms.push_back(f);
        m.xi.push_back(xi[j]);
        m.delta.push_back(d);
        total_f += f;
        total_xi += xi[j];
        abs_delta += std::abs(d);
    }
    m.dof = total_f - total_xi;
    m.kappa = 0.5 * abs_delta;
    return m;
}

MobilityResult mobility_analysis(const std::vector<LoopSpec>& loops,
                                 const std::vector<LoopPocPair>& pocs) {
    if (pocs.size() != loops.size()) {
        throw InputError("mobility_analysis: one characteristic-set pair per loop required");
    }
    std::vector<int> xi;
    xi.reserve(pocs.size());
    for (const auto& pair : pocs) xi.push_back(loop_equation_count(pair.sub, pair.next));
    return mobility_analysis(loops, xi);
}

std::string topological_formula(const std::string& pm_pattern, const MobilityResult& m,
                                 const std::vector<SkcTerm>& skcs) {
    auto number = [](double v) {
        std::ostringstream out;
        out << v;
        return out.str();
    };
    std::ostringstream out;
    out << pm_pattern << "-PM^" << number(m.kappa) << "[" << m.dof << ", " << m.freedoms.size()
        << "(";
    for (std::size_t i = 0; i < m.freedoms.size(); ++i) {
        out << (i ? ", " : "") << m.freedoms[i];
    }
    out << ")] = ";
    for (std::size_t i = 0; i < skcs.size(); ++i) {
        const auto& s = skcs[i];
        out << (i ? " + " : "") << s.pattern << "-SKC" << (i + 1) << "^" << s.kappa << "("
            << s.delta << "; " << s.xi << ")";
    }
    return out.str();
}

SortingMechanismTopology sorting_mechanism_topology() {
    SortingMechanismTopology topo;
    topo.loops.push_back(parse_loop("P11*(y) || R12 || R13 || R14 ^ R23 || R22 ^ P21*"));
    topo.loops.push_back(parse_loop("P31*(y) - Pa(z) - R33(y) || R34 - R24(y)"));
    const auto& l1 = topo.loops[0].joints;
    const auto& l2 = topo.loops[1].joints;

    // The base point sits on the common axis of R14 and R24.
    topo.limb_a = limb_poc({joint_poc(l1[0]), joint_poc(l1[1]), joint_poc(l1[2]),
                            joint_poc(l1[3], true)});
    topo.limb_b = limb_poc({joint_poc(l1[6]), joint_poc(l1[5]), joint_poc(l1[4])});
    topo.sub_pm = poc_intersect(topo.limb_a, topo.limb_b);
    topo.hybrid_chain1 = poc_union(topo.sub_pm, joint_poc(l2[4], true));
    const PocSet pi_part = limb_poc({joint_poc(l2[0]), joint_poc(l2[1])});
    const PocSet rr_part = limb_poc({joint_poc(l2[2]), joint_poc(l2[3])});
    topo.hybrid_chain2 = poc_union(pi_part, rr_part);
    topo.platform = poc_intersect(topo.hybrid_chain1, topo.hybrid_chain2);

    topo.loop_pocs = {{topo.limb_a, topo.limb_b}, {topo.hybrid_chain1, topo.hybrid_chain2}};
    topo.mobility = mobility_analysis(topo.loops, topo.loop_pocs);

    std::vector<SkcTerm> skcs;
    const PocSet skc_outputs[] = {topo.hybrid_chain1, poc_union(topo.hybrid_chain1, topo.hybrid_chain2)};
    for (std::size_t j = 0; j < topo.loops.size(); ++j) {
        const int delta = topo.mobility.delta[j];
        skcs.push_back({motion_pattern(skc_outputs[j]), std::abs(delta) / 2, delta, topo.mobility.xi[j]});
    }
    topo.formula = topological_formula(motion_pattern(topo.platform), topo.mobility, skcs);
    return topo;
}

}  // namespace sortpm
