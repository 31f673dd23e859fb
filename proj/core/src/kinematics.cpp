#include "sortpm/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sortpm/errors.hpp"

namespace sortpm {

namespace {

using cplx = std::complex<double>;

// Principal square root of a real radicand. The real branch uses the real sqrt
// so that decoupled outputs stay bit-identical whatever the later stages do.
cplx root_of(double radicand) {
    if (radicand >= 0.0) return {std::sqrt(radicand), 0.0};
    return {0.0, std::sqrt(-radicand)};
}

cplx root_of(cplx radicand) {
    if (radicand.imag() == 0.0) return root_of(radicand.real());
    return std::sqrt(radicand);
}

bool is_real_value(cplx v) { return v.imag() == 0.0; }

void require_lengths(const GeometryParams& p) {
    const double lengths[] = {p.a, p.l1, p.l2, p.l3, p.l4, p.l5, p.l6, p.l7};
    for (double l : lengths) {
        if (!(l > 0.0) || !std::isfinite(l)) {
            throw DomainError("geometry: every link length and a must be positive and finite");
        }
    }
}

bool classify_real(const Eigen::Vector3d& imag) {
    return imag.cwiseAbs().maxCoeff() <= kRealTolerance;
}

// Solves A sin(beta) + B cos(beta) = C on the root selected by q with the
// half-angle substitution t = tan(beta/2):
//   t = (A + q s) / (B + C) = (C - B) / (A - q s),   s = sqrt(A^2 + B^2 - C^2).
// The real case is evaluated as 2 atan2(num, den), which has no pole at B + C = 0.
struct HalfAngleResult {
    cplx beta;
    bool degenerate = false;
};

HalfAngleResult solve_half_angle(cplx A, double B, cplx C, int q) {
    const cplx disc = A * A + B * B - C * C;
    const cplx s = root_of(disc);
    const double qs = static_cast<double>(q);

    const cplx num1 = A + qs * s;
    const cplx den1 = B + C;
    const cplx num2 = C - B;
    const cplx den2 = A - qs * s;

    HalfAngleResult out;
    if (is_real_value(A) && is_real_value(C) && is_real_value(s)) {
        double num = num1.real();
        double den = den1.real();
        if (num == 0.0 && den == 0.0) {
            num = num2.real();
            den = den2.real();
        }
        if (num == 0.0 && den == 0.0) {
            out.degenerate = true;
            out.beta = {std::numeric_limits<double>::quiet_NaN(), 0.0};
            return out;
        }
        out.beta = {normalize_angle(2.0 * std::atan2(num, den)), 0.0};
        return out;
    }

    // Complex roots: take the better conditioned of the two equivalent quotients.
    if (std::abs(den1) == 0.0 && std::abs(den2) == 0.0) {
        // Infinite tangent: a half turn, unless beta is undetermined.
        out.degenerate = std::abs(num1) == 0.0 && std::abs(num2) == 0.0;
        out.beta = {out.degenerate ? std::numeric_limits<double>::quiet_NaN() : std::numbers::pi, 0.0};
        return out;
    }
    const cplx t = std::abs(den1) >= std::abs(den2) ? num1 / den1 : num2 / den2;
    // catan is not bit-symmetric under conjugation; evaluating in the upper half
    // plane keeps the q = +1/-1 roots exact conjugates.
    const cplx beta = t.imag() < 0.0 ? std::conj(2.0 * std::atan(std::conj(t))) : 2.0 * std::atan(t);
    out.beta = {normalize_angle(beta.real()), beta.imag()};
    return out;
}

}  // namespace

BranchSelector::BranchSelector(int s1, int s2, int s3) : s1_(s1), s2_(s2), s3_(s3) {
    for (int s : {s1, s2, s3}) {
        if (s != 1 && s != -1) {
            throw InputError("branch components must be +1 or -1");
        }
    }
}

std::array<BranchSelector, 8> BranchSelector::all() {
    std::array<BranchSelector, 8> out;
    std::size_t k = 0;
    for (int s1 : {1, -1})
        for (int s2 : {1, -1})
            for (int s3 : {1, -1}) out[k++] = BranchSelector(s1, s2, s3);
    return out;
}

BranchSelector BranchSelector::parse(const std::string& text) {
    std::array<int, 3> signs{};
    std::size_t count = 0;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (count >= 3) throw InputError("branch: expected three comma-separated signs");
        if (item == "+1" || item == "1" || item == "+") {
            signs[count++] = 1;
        } else if (item == "-1" || item == "-") {
            signs[count++] = -1;
        } else {
            throw InputError("branch: component \"" + item + "\" is not +1 or -1");
        }
    }
    if (count != 3) throw InputError("branch: expected three comma-separated signs");
    return BranchSelector(signs[0], signs[1], signs[2]);
}

std::string BranchSelector::str() const {
    auto sign = [](int s) { return s > 0 ? std::string("+1") : std::string("-1"); };
    return sign(s1_) + "," + sign(s2_) + "," + sign(s3_);
}

PlatformPose KinematicSolution::pose() const {
    if (kind != SolutionKind::Forward) throw Error("pose() requested from an inverse solution");
    return {values[0], values[1], values[2]};
}

JointInput KinematicSolution::joints() const {
    if (kind != SolutionKind::Inverse) throw Error("joints() requested from a forward solution");
    return {values[0], values[1], values[2]};
}

namespace {

KinematicSolution fk_solve(const GeometryParams& p, const JointInput& q, BranchSelector b) {
    const double m = b.s1();
    const double n = b.s2();

    // y depends on y1 only, z on (y1, y2) only.
    const double y = q.y1 + p.l3;
    const double leg2_offset = q.y1 + 2.0 * p.l3 - q.y2;
    const cplx z = p.l1 + m * root_of(p.l4 * p.l4 - leg2_offset * leg2_offset);
    const double leg3_offset = q.y1 + p.l3 - q.y3;
    const cplx z_c3 = p.l1 + n * root_of(p.l5 * p.l5 - leg3_offset * leg3_offset);

    const cplx dz = z - z_c3;
    const cplx A = 2.0 * dz * p.l7;
    const double B = -4.0 * p.a * p.l7;
    const cplx C = p.l6 * p.l6 - 4.0 * p.a * p.a - p.l7 * p.l7 - dz * dz;
    const HalfAngleResult beta = solve_half_angle(A, B, C, b.s3());

    KinematicSolution sol;
    sol.kind = SolutionKind::Forward;
    sol.branch = b;
    sol.z_c3 = z_c3;
    sol.degenerate = beta.degenerate;
    sol.values = {y, z.real(), beta.beta.real()};
    sol.imag = {0.0, z.imag(), beta.beta.imag()};
    // A real tilt can still come from a complex parallelogram height.
    sol.is_real = !sol.degenerate && classify_real(sol.imag) && std::abs(z_c3.imag()) <= kRealTolerance;
    return sol;
}

}  // namespace

KinematicSolution fk_branch(const GeometryParams& p, const JointInput& q, BranchSelector b) {
    require_lengths(p);
    KinematicSolution sol = fk_solve(p, q, b);
    if (sol.degenerate) {
        throw DegenerateHalfAngle("fk: beta undetermined on branch " + b.str());
    }
    return sol;
}

SolutionSet fk_enumerate(const GeometryParams& p, const JointInput& q) {
    require_lengths(p);
    SolutionSet out;
    const auto branches = BranchSelector::all();
    for (std::size_t i = 0; i < branches.size(); ++i) out[i] = fk_solve(p, q, branches[i]);
    return out;
}

KinematicSolution ik_branch(const GeometryParams& p, const PlatformPose& pose, BranchSelector b) {
    require_lengths(p);
    const double u = b.s1();
    const double v = b.s2();
    const double w = b.s3();

    const double y1 = pose.y - p.l3;
    const double dz = pose.z - p.l1;
    const cplx y2 = pose.y + p.l3 + u * root_of(p.l4 * p.l4 - dz * dz);

    const double horizontal = 2.0 * p.a - p.l7 * std::cos(pose.beta);
    const double z_f = pose.z + p.l7 * std::sin(pose.beta);
    const cplx z_c3 = z_f + w * root_of(p.l6 * p.l6 - horizontal * horizontal);
    const cplx rise = z_c3 - p.l1;
    const cplx y3 = pose.y + v * root_of(p.l5 * p.l5 - rise * rise);

    KinematicSolution sol;
    sol.kind = SolutionKind::Inverse;
    sol.branch = b;
    sol.z_c3 = z_c3;
    sol.values = {y1, y2.real(), y3.real()};
    sol.imag = {0.0, y2.imag(), y3.imag()};
    sol.is_real = classify_real(sol.imag) && std::abs(z_c3.imag()) <= kRealTolerance;
    return sol;
}

SolutionSet ik_enumerate(const GeometryParams& p, const PlatformPose& pose) {
    SolutionSet out;
    const auto branches = BranchSelector::all();
    for (std::size_t i = 0; i < branches.size(); ++i) out[i] = ik_branch(p, pose, branches[i]);
    return out;
}

double coupler_joint_height(const GeometryParams& p, double y, double y3, int n_sign) {
    const double offset = y - y3;
    const double radicand = p.l5 * p.l5 - offset * offset;
    if (std::abs(offset) > p.l5 || radicand < 0.0) {
        throw DomainError("|y - y3| exceeds l5: parallelogram leg cannot close");
    }
    return p.l1 + static_cast<double>(n_sign) * std::sqrt(radicand);
}

Eigen::Vector3d constraint_residuals(const GeometryParams& p, const PlatformPose& pose,
                                     const JointInput& q, int n_sign) {
    const double z_c3 = coupler_joint_height(p, pose.y, q.y3, n_sign);
    const double z_f = pose.z + p.l7 * std::sin(pose.beta);
    const double e1 = pose.y - q.y1;
    const double e2y = pose.y + p.l3 - q.y2;
    const double e2z = pose.z - p.l1;
    const double e3x = 2.0 * p.a - p.l7 * std::cos(pose.beta);
    const double e3z = z_c3 - z_f;
    return {e1 * e1 - p.l3 * p.l3,
            e2y * e2y + e2z * e2z - p.l4 * p.l4,
            e3x * e3x + e3z * e3z - p.l6 * p.l6};
}

namespace {

MechanismPoints build_points(const GeometryParams& p, const JointInput& q,
                             const PlatformPose& pose, double z_c3) {
    MechanismPoints pts;
    pts.A1 = {p.a, q.y1, 0.0};
    pts.A2 = {p.a, q.y2, 0.0};
    pts.A3 = {-p.a, q.y3, 0.0};
    pts.B1 = {p.a, q.y1, p.l1};
    pts.B2 = {p.a, q.y2, p.l1};
    pts.B3 = {-p.a, q.y3, p.l1};
    pts.D = {p.a, q.y1, pose.z};
    pts.E = {p.a, q.y1 + p.l3, pose.z};
    pts.C2 = {p.a, q.y1 + 2.0 * p.l3, pose.z};
    pts.F = {p.a - p.l7 * std::cos(pose.beta), q.y1 + p.l3, pose.z + p.l7 * std::sin(pose.beta)};
    pts.C3 = {-p.a, q.y1 + p.l3, z_c3};
    pts.z_c3 = z_c3;
    return pts;
}

}  // namespace

MechanismPoints mechanism_points(const GeometryParams& p, const JointInput& q,
                                 const KinematicSolution& fk_solution) {
    if (fk_solution.kind != SolutionKind::Forward) {
        throw Error("mechanism_points: expected a forward solution with joint inputs");
    }
    if (!fk_solution.is_real) throw NotReal("mechanism_points: solution is not real");
    return build_points(p, q, fk_solution.pose(), fk_solution.z_c3.real());
}

MechanismPoints mechanism_points(const GeometryParams& p, const PlatformPose& pose,
                                 const KinematicSolution& ik_solution) {
    if (ik_solution.kind != SolutionKind::Inverse) {
        throw Error("mechanism_points: expected an inverse solution with a pose");
    }
    if (!ik_solution.is_real) throw NotReal("mechanism_points: solution is not real");
    return build_points(p, ik_solution.joints(), pose, ik_solution.z_c3.real());
}

}  // namespace sortpm
