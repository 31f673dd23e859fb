#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace sortpm {

// Linear subspace of R^3 held as an orthonormal basis.
class Subspace {
public:
    Subspace() = default;

    // Span of the given directions; rank decided on singular values with
    // tolerance kRankTolerance. Directions need not be normalised.
    static Subspace span(const std::vector<Eigen::Vector3d>& directions);
    static Subspace full();
    static Subspace empty() { return {}; }

    int dim() const { return static_cast<int>(basis_.cols()); }
    const Eigen::Matrix<double, 3, Eigen::Dynamic>& basis() const { return basis_; }

    bool contains(const Eigen::Vector3d& v, double tol = 1e-9) const;
    Subspace orthogonal_complement() const;
    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;
    Subspace rotated(const Eigen::Matrix3d& R) const;

    // Same subspace, whatever basis represents it.
    bool operator==(const Subspace& other) const;

    static constexpr double kRankTolerance = 1e-10;

private:
    explicit Subspace(Eigen::Matrix<double, 3, Eigen::Dynamic> basis) : basis_(std::move(basis)) {}
    Eigen::Matrix<double, 3, Eigen::Dynamic> basis_{3, 0};
};

// Position and orientation characteristics of a link: the independent
// translation and rotation subspaces of its motion.
struct PocSet {
    Subspace t;
    Subspace r;

    int t_dim() const { return t.dim(); }
    int r_dim() const { return r.dim(); }
    int dim() const { return t_dim() + r_dim(); }

    bool operator==(const PocSet& other) const { return t == other.t && r == other.r; }

    // e.g. "[t^2(yoz); r^1(||y)]"
    std::string describe() const;
};

PocSet poc_union(const PocSet& a, const PocSet& b);
PocSet poc_intersect(const PocSet& a, const PocSet& b);

// Number of independent displacement equations of a loop: the dimension of the
// sub-mechanism's characteristic set united with the next limb's.
int loop_equation_count(const PocSet& sub_poc, const PocSet& next_limb_poc);

// "2T1R" style label of a characteristic set.
std::string motion_pattern(const PocSet& poc);

enum class JointKind { Prismatic, Revolute, Parallelogram };

struct JointDescriptor {
    JointKind kind = JointKind::Revolute;
    std::string label;                    // e.g. "P11", "R24", "Pa"
    std::optional<Eigen::Vector3d> axis;  // unit axis, or translation direction for P / Pa
    bool actuated = false;
};

enum class AxisRelation { Parallel, Perpendicular, Unspecified };

struct LoopSpec {
    std::vector<JointDescriptor> joints;
    std::vector<AxisRelation> relations;  // relations[i] links joints[i] and joints[i + 1]
    int actuated = 0;                     // I_j

    // Sum of joint freedoms; every joint contributes one.
    int freedoms() const { return static_cast<int>(joints.size()); }
    std::string str() const;
};

// Parses the compact loop notation
//
//   loop     := joint ( relation joint )*
//   relation := "||" (parallel axes) | "^" (perpendicular) | "-" (unspecified)
//   joint    := kind [index] ["*"] ["(" axis ")"]
//   kind     := "P" (prismatic) | "R" (revolute) | "Pa" (parallelogram / pi joint)
//   axis     := "x" | "y" | "z" | number "," number "," number
//
// "*" marks an actuated joint. A missing axis is inferred: the first joint
// defaults to y (the rail direction), "||" copies the previous axis and "^"
// takes the first of x, y, z perpendicular to it; after "-" it stays unknown.
// Explicit axes must agree with the stated relation. Throws InputError.
LoopSpec parse_loop(std::string_view notation);

// Characteristic set of one joint seen from the base point. A revolute joint
// whose axis passes through the base point contributes no translation.
PocSet joint_poc(const JointDescriptor& joint, bool base_on_axis = false);

// Serial chain union of joint characteristic sets.
PocSet limb_poc(const std::vector<PocSet>& joint_pocs);

struct LoopPocPair {
    PocSet sub;   // intersection of the limbs already closed
    PocSet next;  // end link of the next limb
};

struct MobilityResult {
    int dof = 0;                     // F
    std::vector<int> freedoms;       // sum f_i per loop
    std::vector<int> xi;             // independent equations per loop
    std::vector<int> delta;          // constraint degree per loop
    double kappa = 0.0;              // coupling degree of the given decomposition
};

// F = sum f - sum xi; delta_j = sum_j f - I_j - xi_j; kappa = 1/2 sum |delta_j|.
// Throws InputError when loops is empty or sizes disagree.
MobilityResult mobility_analysis(const std::vector<LoopSpec>& loops,
                                 const std::vector<LoopPocPair>& pocs);
MobilityResult mobility_analysis(const std::vector<LoopSpec>& loops, const std::vector<int>& xi);

struct SkcTerm {
    std::string pattern;  // motion pattern of the sub-kinematic chain
    int kappa = 0;
    int delta = 0;
    int xi = 0;
};

// "2T1R-PM^0[3, 2(7, 5)] = 2T1R-SKC1^0(0; 5) + 3T1R-SKC2^0(0; 4)"
std::string topological_formula(const std::string& pm_pattern, const MobilityResult& m,
                                 const std::vector<SkcTerm>& skcs);

// The sorting mechanism's two hybrid chains, assembled from joint axes.
struct SortingMechanismTopology {
    std::vector<LoopSpec> loops;
    PocSet limb_a;        // P11 || R12 || R13 || R14
    PocSet limb_b;        // P21 ^ R22 || R23
    PocSet sub_pm;        // limb_a intersect limb_b
    PocSet hybrid_chain1; // sub_pm + R24
    PocSet hybrid_chain2; // P31 - Pa - R33 || R34
    PocSet platform;      // hybrid_chain1 intersect hybrid_chain2
    std::vector<LoopPocPair> loop_pocs;
    MobilityResult mobility;
    std::string formula;
};

SortingMechanismTopology sorting_mechanism_topology();

}  // namespace sortpm
