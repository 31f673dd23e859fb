#include "sortpm/singularity.hpp"

#include <cmath>

#include "sortpm/errors.hpp"
#include "sortpm/kinematics.hpp"

namespace sortpm {

JacobianPair analytic_jacobians(const GeometryParams& p, const PlatformPose& pose,
                                const JointInput& q, int n_sign) {
    const double offset = pose.y - q.y3;
    const double radicand = p.l5 * p.l5 - offset * offset;
    if (!(radicand > 0.0)) {
        throw DomainError("analytic_jacobians: |y - y3| >= l5, parallelogram leg fully stretched");
    }
    const double root = std::sqrt(radicand);
    const double n = static_cast<double>(n_sign);
    const double z_c3 = p.l1 + n * root;
    const double z_f = pose.z + p.l7 * std::sin(pose.beta);
    const double gap = z_c3 - z_f;
    const double sb = std::sin(pose.beta);
    const double cb = std::cos(pose.beta);

    JacobianPair J;
    J.A(0, 0) = -2.0 * (q.y1 - pose.y);
    J.A(1, 0) = 2.0 * (pose.y + p.l3 - q.y2);
    J.A(1, 1) = 2.0 * (pose.z - p.l1);
    J.A(2, 0) = n * 2.0 * gap * (q.y3 - pose.y) / root;
    J.A(2, 1) = -2.0 * gap;
    J.A(2, 2) = -2.0 * p.l7 * sb * (-2.0 * p.a + p.l7 * cb) - 2.0 * p.l7 * cb * gap;

    J.B(0, 0) = 2.0 * (q.y1 - pose.y);
    J.B(1, 1) = 2.0 * (q.y2 - pose.y - p.l3);
    J.B(2, 2) = n * 2.0 * gap * (pose.y - q.y3) / root;
    return J;
}

JacobianPair fd_jacobians(const GeometryParams& p, const PlatformPose& pose,
                          const JointInput& q, int n_sign, double h) {
    if (!(h > 0.0)) throw DomainError("fd_jacobians: step must be positive");
    // Same domain as the analytic form.
    const double offset = pose.y - q.y3;
    if (!(p.l5 * p.l5 - offset * offset > 0.0)) {
        throw DomainError("fd_jacobians: |y - y3| >= l5, parallelogram leg fully stretched");
    }

    JacobianPair J;
    for (int j = 0; j < 3; ++j) {
        PlatformPose plus = pose;
        PlatformPose minus = pose;
        double* fp = j == 0 ? &plus.y : (j == 1 ? &plus.z : &plus.beta);
        double* fm = j == 0 ? &minus.y : (j == 1 ? &minus.z : &minus.beta);
        *fp += h;
        *fm -= h;
        J.A.col(j) = (constraint_residuals(p, plus, q, n_sign) -
                      constraint_residuals(p, minus, q, n_sign)) / (2.0 * h);
    }
    for (int j = 0; j < 3; ++j) {
        JointInput plus = q;
        JointInput minus = q;
        double* fp = j == 0 ? &plus.y1 : (j == 1 ? &plus.y2 : &plus.y3);
        double* fm = j == 0 ? &minus.y1 : (j == 1 ? &minus.y2 : &minus.y3);
        *fp += h;
        *fm -= h;
        J.B.col(j) = (constraint_residuals(p, pose, plus, n_sign) -
                      constraint_residuals(p, pose, minus, n_sign)) / (2.0 * h);
    }
    return J;
}

const char* to_string(SingularityKind kind) {
    switch (kind) {
        case SingularityKind::Regular: return "Regular";
        case SingularityKind::Serial: return "Serial";
        case SingularityKind::Parallel: return "Parallel";
        case SingularityKind::Both: return "Both";
    }
    return "Unknown";
}

FactorMargins normalized_factors(const JacobianPair& J) {
    FactorMargins m;
    for (int i = 0; i < 3; ++i) {
        const double scale = std::max(J.A.row(i).cwiseAbs().maxCoeff(), J.B.row(i).cwiseAbs().maxCoeff());
        if (scale == 0.0) {
            m.parallel[i] = 0.0;
            m.serial[i] = 0.0;
            continue;
        }
        m.parallel[i] = std::abs(J.A(i, i)) / scale;
        m.serial[i] = std::abs(J.B(i, i)) / scale;
    }
    return m;
}

namespace {

std::string names(const std::array<bool, 3>& flags, char prefix) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < 3; ++i) {
        if (!flags[i]) continue;
        if (!first) out += ",";
        out += prefix;
        out += std::to_string(i + 1);
        out += std::to_string(i + 1);
        first = false;
    }
    return out + "}";
}

}  // namespace

std::string SingularityClass::serial_names() const { return names(serial_cases, 'g'); }
std::string SingularityClass::parallel_names() const { return names(parallel_cases, 'f'); }

SingularityClass classify_configuration(const JacobianPair& J, double eps) {
    const FactorMargins m = normalized_factors(J);
    SingularityClass c;
    bool serial = false;
    bool parallel = false;
    for (int i = 0; i < 3; ++i) {
        c.serial_cases[i] = m.serial[i] <= eps;
        c.parallel_cases[i] = m.parallel[i] <= eps;
        serial = serial || c.serial_cases[i];
        parallel = parallel || c.parallel_cases[i];
    }
    // Triangular and diagonal: determinants are diagonal products.
    c.det_A = J.A(0, 0) * J.A(1, 1) * J.A(2, 2);
    c.det_B = J.B(0, 0) * J.B(1, 1) * J.B(2, 2);
    if (serial && parallel) {
        c.kind = SingularityKind::Both;
    } else if (serial) {
        c.kind = SingularityKind::Serial;
    } else if (parallel) {
        c.kind = SingularityKind::Parallel;
    }
    return c;
}

Eigen::Vector3d platform_velocity(const JacobianPair& J, const Eigen::Vector3d& joint_rates,
                                  double eps) {
    const FactorMargins m = normalized_factors(J);
    for (int i = 0; i < 3; ++i) {
        if (m.parallel[i] <= eps) {
            throw SingularError("platform_velocity: parallel Jacobian factor f" +
                                std::to_string(i + 1) + std::to_string(i + 1) + " vanishes");
        }
    }
    const Eigen::Vector3d rhs = -(J.B * joint_rates);
    Eigen::Vector3d t;
    for (int i = 0; i < 3; ++i) {
        double acc = rhs[i];
        for (int j = 0; j < i; ++j) acc -= J.A(i, j) * t[j];
        t[i] = acc / J.A(i, i);
    }
    return t;
}

double leg1_alignment_margin(const GeometryParams& p, const PlatformPose& pose) {
    return 2.0 * p.l2 - std::abs(pose.z - p.l1);
}

}  // namespace sortpm
