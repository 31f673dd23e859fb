#pragma once

// Hand-rolled random generators for property tests. Seeds are fixed per test so
// failures reproduce; every generator draws only through Rng.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>

#include <Eigen/Core>

#include "sortpm/errors.hpp"
#include "sortpm/geometry.hpp"
#include "sortpm/kinematics.hpp"
#include "sortpm/singularity.hpp"

namespace sortpm::testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    int sign() { return integer(0, 1) == 0 ? 1 : -1; }
    BranchSelector branch() { return BranchSelector(sign(), sign(), sign()); }

    Eigen::Vector3d direction() {
        Eigen::Vector3d v;
        do {
            v = {uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
        } while (v.norm() < 1e-3);
        return v.normalized();
    }

    // Proper rotation from a random unit quaternion.
    Eigen::Matrix3d rotation() {
        Eigen::Vector4d q;
        do {
            q = {uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
        } while (q.norm() < 1e-3 || q.norm() > 1.0);
        q.normalize();
        const double w = q[0], x = q[1], y = q[2], z = q[3];
        Eigen::Matrix3d R;
        R << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
            2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
            2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
        return R;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// A real assembly mode with its Jacobians.
struct Configuration {
    JointInput q;
    KinematicSolution fk;
    JacobianPair J;

    PlatformPose pose() const { return fk.pose(); }
    int n() const { return fk.branch.s2(); }
};

// Random joints whose leg offsets lie inside the reachable bands, solved on a
// random assembly mode. Accepted only when the mode is real and every
// row-scaled diagonal factor of A and B is at least min_margin, which keeps the
// state away from serial and parallel singularities where joint and pose
// errors are no longer comparable.
inline Configuration feasible_configuration(Rng& rng, const GeometryParams& p, double min_margin,
                                            std::optional<int> n_sign = std::nullopt) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        Configuration c;
        c.q.y1 = rng.uniform(-400.0, 400.0);
        c.q.y2 = c.q.y1 + 2.0 * p.l3 - rng.uniform(-p.l4, p.l4);
        c.q.y3 = c.q.y1 + p.l3 - rng.uniform(-p.l5, p.l5);
        BranchSelector b = rng.branch();
        if (n_sign) b = BranchSelector(b.s1(), *n_sign, b.s3());
        c.fk = fk_branch(p, c.q, b);
        if (!c.fk.is_real) continue;
        try {
            c.J = analytic_jacobians(p, c.pose(), c.q, c.n());
        } catch (const DomainError&) {
            continue;
        }
        const FactorMargins m = normalized_factors(c.J);
        bool regular = true;
        for (int i = 0; i < 3; ++i) regular = regular && m.serial[i] >= min_margin && m.parallel[i] >= min_margin;
        if (regular) return c;
    }
    throw std::runtime_error("feasible_configuration: no admissible sample");
}

}  // namespace sortpm::testing
