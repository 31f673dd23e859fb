#include "sortpm/workspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include "sortpm/errors.hpp"
#include "sortpm/singularity.hpp"

namespace sortpm {

double AxisRange::at(int k) const {
    if (k == count - 1) return max;
    return min + (max - min) * static_cast<double>(k) / static_cast<double>(count - 1);
}

void SampleGrid::validate() const {
    for (const auto& ax : axes) {
        if (ax.count < 2) throw InputError("grid: every axis needs count >= 2");
        if (!(ax.min < ax.max)) throw InputError("grid: every axis needs min < max");
    }
}

std::size_t SampleGrid::size() const {
    std::size_t n = 1;
    for (const auto& ax : axes) n *= static_cast<std::size_t>(ax.count);
    return n;
}

namespace {

using Slot = std::optional<WorkspaceRecord>;

// Fills slots[i] = eval(i) on a pool of threads; slot order is the grid order,
// so the merged cloud is independent of scheduling.
WorkspaceCloud run_grid(std::size_t n, unsigned threads,
                        const std::function<Slot(std::size_t)>& eval) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));

    std::vector<Slot> slots(n);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) slots[i] = eval(i);
    };
    if (threads <= 1) {
        work(0, n);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(work, begin, end);
        }
    }

    WorkspaceCloud cloud;
    for (auto& s : slots) {
        if (s) cloud.records.push_back(*s);
    }
    return cloud;
}

// Margins for a consistent real configuration; nullopt when the Jacobians are
// undefined (|y - y3| = l5) or leg 1 cannot close.
Slot make_record(const GeometryParams& p, const JointInput& q, const PlatformPose& pose,
                 BranchSelector assembly_mode) {
    WorkspaceRecord rec;
    rec.joints = q;
    rec.pose = pose;
    rec.branch = assembly_mode;
    rec.leg1_margin = leg1_alignment_margin(p, pose);
    if (rec.leg1_margin < 0.0) return std::nullopt;
    JacobianPair J;
    try {
        J = analytic_jacobians(p, pose, q, assembly_mode.s2());
    } catch (const DomainError&) {
        return std::nullopt;
    }
    const FactorMargins m = normalized_factors(J);
    rec.margin_serial = *std::min_element(m.serial.begin(), m.serial.end());
    rec.margin_parallel = *std::min_element(m.parallel.begin(), m.parallel.end());
    return rec;
}

}  // namespace

WorkspaceCloud sample_workspace(const GeometryParams& p, const SampleGrid& joint_grid,
                                BranchSelector branch, unsigned threads) {
    joint_grid.validate();
    const auto& ax = joint_grid.axes;
    const std::size_t n1 = static_cast<std::size_t>(ax[1].count);
    const std::size_t n2 = static_cast<std::size_t>(ax[2].count);

    return run_grid(joint_grid.size(), threads, [&](std::size_t idx) -> Slot {
        const int i = static_cast<int>(idx / (n1 * n2));
        const int j = static_cast<int>((idx / n2) % n1);
        const int k = static_cast<int>(idx % n2);
        const JointInput q{ax[0].at(i), ax[1].at(j), ax[2].at(k)};
        KinematicSolution sol;
        try {
            sol = fk_branch(p, q, branch);
        } catch (const DegenerateHalfAngle&) {
            return std::nullopt;
        }
        if (!sol.is_real) return std::nullopt;
        return make_record(p, q, sol.pose(), branch);
    });
}

WorkspaceCloud constant_orientation_slice(const GeometryParams& p, const AxisRange& y_range,
                                          const AxisRange& z_range, double beta,
                                          BranchSelector ik_branch_sel, unsigned threads) {
    SampleGrid check{{y_range, z_range, AxisRange{0.0, 1.0, 2}}};
    check.validate();
    const std::size_t nz = static_cast<std::size_t>(z_range.count);
    const std::size_t n = static_cast<std::size_t>(y_range.count) * nz;

    return run_grid(n, threads, [&](std::size_t idx) -> Slot {
        const PlatformPose pose{y_range.at(static_cast<int>(idx / nz)),
                                z_range.at(static_cast<int>(idx % nz)), beta};
        const KinematicSolution sol = ik_branch(p, pose, ik_branch_sel);
        if (!sol.is_real) return std::nullopt;
        const JointInput q = sol.joints();

        // Identify the assembly mode: m and n from the heights, q by matching beta.
        const int m = pose.z - p.l1 >= 0.0 ? 1 : -1;
        const int n_sign = sol.z_c3.real() - p.l1 >= 0.0 ? 1 : -1;
        int q_sign = 1;
        double best = std::numeric_limits<double>::infinity();
        for (int cand : {1, -1}) {
            try {
                const KinematicSolution fk = fk_branch(p, q, BranchSelector(m, n_sign, cand));
                const double err = std::abs(normalize_angle(fk.values[2] - beta)) + fk.imag.norm();
                if (err < best) {
                    best = err;
                    q_sign = cand;
                }
            } catch (const DegenerateHalfAngle&) {
            }
        }
        return make_record(p, q, pose, BranchSelector(m, n_sign, q_sign));
    });
}

void write_csv(std::ostream& out, const WorkspaceCloud& cloud) {
    out << kWorkspaceCsvHeader << '\n';
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.9g", v);
        out << buf;
    };
    for (const auto& r : cloud.records) {
        num(r.joints.y1); out << ',';
        num(r.joints.y2); out << ',';
        num(r.joints.y3); out << ',';
        num(r.pose.y); out << ',';
        num(r.pose.z); out << ',';
        num(r.pose.beta); out << ',';
        out << r.branch.s1() << ',' << r.branch.s2() << ',' << r.branch.s3() << ',';
        num(r.margin_serial); out << ',';
        num(r.margin_parallel); out << ',';
        num(r.leg1_margin);
        out << '\n';
    }
}

std::string to_csv(const WorkspaceCloud& cloud) {
    std::ostringstream out;
    write_csv(out, cloud);
    return out.str();
}

}  // namespace sortpm
