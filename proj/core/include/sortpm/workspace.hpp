#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "sortpm/geometry.hpp"
#include "sortpm/kinematics.hpp"

namespace sortpm {

// Inclusive, evenly spaced samples min, ..., max.
struct AxisRange {
    double min = 0.0;
    double max = 0.0;
    int count = 2;

    double at(int k) const;
};

// Per-axis sampling over (y1, y2, y3) or (y, z, beta).
struct SampleGrid {
    std::array<AxisRange, 3> axes;

    // Throws InputError unless count >= 2 and min < max on every axis.
    void validate() const;
    std::size_t size() const;
};

struct WorkspaceRecord {
    JointInput joints;
    PlatformPose pose;
    BranchSelector branch;   // assembly mode (m, n, q) of the configuration
    double margin_serial = 0.0;    // min |g_ii| / row scale
    double margin_parallel = 0.0;  // min |f_ii| / row scale
    double leg1_margin = 0.0;      // 2 l2 - |z - l1|
};

// Records in row-major grid order (last axis fastest).
struct WorkspaceCloud {
    std::vector<WorkspaceRecord> records;
};

// Forward-kinematics sweep of a joint-space grid on one assembly mode. A grid
// point yields a record when the branch is real, the Jacobians are defined and
// leg 1 can close (leg1_margin >= 0). threads = 0 uses the hardware concurrency;
// the result never depends on the thread count.
WorkspaceCloud sample_workspace(const GeometryParams& p, const SampleGrid& joint_grid,
                                BranchSelector branch, unsigned threads = 0);

// Inverse-kinematics sweep of a (y, z) grid at fixed beta on one working mode
// (u, v, w). A record is kept when all three joints are real; its branch column
// holds the matching assembly mode.
WorkspaceCloud constant_orientation_slice(const GeometryParams& p, const AxisRange& y_range,
                                          const AxisRange& z_range, double beta,
                                          BranchSelector ik_branch, unsigned threads = 0);

inline constexpr const char* kWorkspaceCsvHeader =
    "y1,y2,y3,y,z,beta,m,n,q,margin_serial,margin_parallel,leg1_margin";

// Header row then one record per line, floats with 9 significant digits.
void write_csv(std::ostream& out, const WorkspaceCloud& cloud);
std::string to_csv(const WorkspaceCloud& cloud);

}  // namespace sortpm
