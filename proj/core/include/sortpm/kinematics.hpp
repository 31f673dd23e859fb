#pragma once

#include <array>
#include <complex>
#include <string>

#include <Eigen/Core>

#include "sortpm/geometry.hpp"

namespace sortpm {

// Imaginary parts up to this magnitude (mm or rad) still count as real.
inline constexpr double kRealTolerance = 1e-9;

// Sign triple picking one root of each quadratic. Read as (m, n, q) for the
// forward model and (u, v, w) for the inverse model.
class BranchSelector {
public:
    constexpr BranchSelector() = default;
    // Throws InputError unless every component is exactly +1 or -1.
    BranchSelector(int s1, int s2, int s3);

    int s1() const { return s1_; }
    int s2() const { return s2_; }
    int s3() const { return s3_; }
    int operator[](std::size_t i) const { return i == 0 ? s1_ : (i == 1 ? s2_ : s3_); }

    // All eight selectors, lexicographic, +1 before -1.
    static std::array<BranchSelector, 8> all();
    // Parses "+1,-1,+1" (also "1,-1,1").
    static BranchSelector parse(const std::string& text);

    std::string str() const;
    bool operator==(const BranchSelector&) const = default;

private:
    int s1_ = 1;
    int s2_ = 1;
    int s3_ = 1;
};

enum class SolutionKind { Forward, Inverse };

struct KinematicSolution {
    SolutionKind kind = SolutionKind::Forward;
    Eigen::Vector3d values = Eigen::Vector3d::Zero();  // (y, z, beta) or (y1, y2, y3)
    Eigen::Vector3d imag = Eigen::Vector3d::Zero();
    BranchSelector branch;
    // Every imaginary part within kRealTolerance, C3 height included.
    bool is_real = false;
    // Set when beta is undetermined (both half-angle forms 0/0).
    bool degenerate = false;
    // Height of C3, carried for point reconstruction and Jacobians.
    std::complex<double> z_c3;

    PlatformPose pose() const;    // Forward solutions only
    JointInput joints() const;    // Inverse solutions only
};

using SolutionSet = std::array<KinematicSolution, 8>;

// Forward model on one assembly mode (m, n, q). Negative radicands are not
// errors: the principal imaginary root is carried through and reported in imag.
// Throws DomainError on non-positive lengths and DegenerateHalfAngle when beta
// is undetermined.
KinematicSolution fk_branch(const GeometryParams& p, const JointInput& q, BranchSelector b);

// All eight assembly modes in BranchSelector::all() order. Never throws for a
// degenerate branch; the solution's degenerate flag is set instead.
SolutionSet fk_enumerate(const GeometryParams& p, const JointInput& q);

// Inverse model on one working mode (u, v, w).
KinematicSolution ik_branch(const GeometryParams& p, const PlatformPose& pose, BranchSelector b);

SolutionSet ik_enumerate(const GeometryParams& p, const PlatformPose& pose);

// Height of C3 from the parallelogram bar constraint |B3C3| = l5 with sign n.
// Throws DomainError when |y - y3| > l5.
double coupler_joint_height(const GeometryParams& p, double y, double y3, int n_sign);

// Constraint residuals (mm^2):
//   f1 = (y - y1)^2 - l3^2
//   f2 = (y + l3 - y2)^2 + (z - l1)^2 - l4^2
//   f3 = (2a - l7 cos beta)^2 + (z_c3 - z_F)^2 - l6^2,  z_F = z + l7 sin beta
// Throws DomainError when |y - y3| > l5.
Eigen::Vector3d constraint_residuals(const GeometryParams& p, const PlatformPose& pose,
                                     const JointInput& q, int n_sign);

struct MechanismPoints {
    Eigen::Vector3d A1, A2, A3;
    Eigen::Vector3d B1, B2, B3;
    Eigen::Vector3d C2, C3;
    Eigen::Vector3d D, E, F;
    double z_c3 = 0.0;
};

// Reconstructs the joint centres of a real forward solution. Throws NotReal.
MechanismPoints mechanism_points(const GeometryParams& p, const JointInput& q,
                                 const KinematicSolution& fk_solution);
// Same for a real inverse solution of the given pose.
MechanismPoints mechanism_points(const GeometryParams& p, const PlatformPose& pose,
                                 const KinematicSolution& ik_solution);

}  // namespace sortpm
