#pragma once

#include <array>
#include <string>

#include <Eigen/Core>

#include "sortpm/geometry.hpp"

namespace sortpm {

// Velocity relation A t + B rho_dot = 0 with t = (y', z', beta') and
// rho_dot = (y1', y2', y3'). A is lower triangular, B diagonal.
struct JacobianPair {
    Eigen::Matrix3d A = Eigen::Matrix3d::Zero();  // parallel Jacobian, d f_i / d(y, z, beta)
    Eigen::Matrix3d B = Eigen::Matrix3d::Zero();  // serial Jacobian, d f_i / d(y1, y2, y3)
};

inline constexpr double kDefaultSingularEps = 1e-9;

// Closed-form entries. n_sign selects the parallelogram branch and multiplies
// the radical terms of f31 and g33. Throws DomainError when |y - y3| >= l5,
// where those entries are unbounded.
JacobianPair analytic_jacobians(const GeometryParams& p, const PlatformPose& pose,
                                const JointInput& q, int n_sign);

// Central differences of constraint_residuals with step h (mm for lengths,
// rad for beta). Full 3x3 matrices are differenced, including structural zeros.
JacobianPair fd_jacobians(const GeometryParams& p, const PlatformPose& pose,
                          const JointInput& q, int n_sign, double h);

enum class SingularityKind { Regular, Serial, Parallel, Both };

const char* to_string(SingularityKind kind);

// Diagonal factors normalised by the largest magnitude in their row of [A | B].
// A factor is "near zero" when its normalised value is <= eps.
struct FactorMargins {
    std::array<double, 3> serial{};    // |g_ii| / row scale
    std::array<double, 3> parallel{};  // |f_ii| / row scale
};

FactorMargins normalized_factors(const JacobianPair& J);

struct SingularityClass {
    SingularityKind kind = SingularityKind::Regular;
    std::array<bool, 3> serial_cases{};    // g11, g22, g33
    std::array<bool, 3> parallel_cases{};  // f11, f22, f33
    double det_A = 0.0;
    double det_B = 0.0;

    // e.g. "{g22}" or "{f33}"
    std::string serial_names() const;
    std::string parallel_names() const;
};

SingularityClass classify_configuration(const JacobianPair& J, double eps = kDefaultSingularEps);

// t = -A^{-1} B rho_dot by forward substitution. Throws SingularError when a
// diagonal factor of A is near zero (same normalisation as classification).
Eigen::Vector3d platform_velocity(const JacobianPair& J, const Eigen::Vector3d& joint_rates,
                                  double eps = kDefaultSingularEps);

// Distance from the leg-1 alignment singularity (B1, C1, D collinear), which the
// Jacobians cannot see because leg 1 carries no actuator: 2 l2 - |z - l1|.
double leg1_alignment_margin(const GeometryParams& p, const PlatformPose& pose);

}  // namespace sortpm
