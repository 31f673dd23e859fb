#pragma once

#include <numbers>
#include <string>

namespace sortpm {

// Requirements for sizing the platform and loop I.
struct DesignSpec {
    double a = 300.0;                           // half rail / hopper spacing, mm
    double beta_min = -std::numbers::pi / 4.0;  // platform tilt range, rad
    double beta_max = std::numbers::pi / 4.0;
    double theta_min = 0.20135792079033080;     // asin(1/5): angle between EF and FC3
    double beta_clearance = 0.1;                // leg clearance angle, rad
    double l6_cap_factor = 10.0;                // search gives up above cap_factor * a
    int beta_samples = 2001;                    // coarse grid over the tilt range

    // Platform extension reaching the hoppers at +-45 degrees.
    double l7() const { return 2.0 * a * std::numbers::sqrt2; }

    // Throws DomainError on a range outside (-pi/2, pi/2), theta_min outside
    // [0, pi/2) or non-positive a.
    void validate() const;
};

struct ClearanceLengths {
    double l2 = 0.0;
    double l4 = 0.0;
};

// l2 = a / (cos c - sin c), l4 = 2a / (cos c - sin c) for clearance angle c.
// Throws DomainError when cos c <= sin c.
ClearanceLengths clearance_lengths(const DesignSpec& spec);

struct PlatformConstraintEval {
    double closure_residual = 0.0;  // (l7 cos b - 2a)^2 + (rho + l7 sin b)^2 - l6^2
    double theta = 0.0;             // angle between EF and FC3, rad
    double sin_theta = 0.0;
    double cos_theta = 0.0;
};

// rho is the height of E above C3. theta comes from
//   sin(theta) l6 l7 = (rho + l7 sin b) l7 cos b + (2a - l7 cos b) l7 sin b
//   cos(theta) l6 l7 = (2a - l7 cos b) l7 cos b - (rho + l7 sin b) l7 sin b
// through atan2, so it is defined even off closure.
PlatformConstraintEval platform_constraints(double a, double l6, double l7, double beta, double rho);

struct BetaFeasibility {
    double l6 = 0.0;   // smallest coupler length closing the platform at beta
    double rho = 0.0;  // height offset achieving it
};

// Smallest l6 for which some rho closes the loop at this beta with
// sin(theta) >= sin(theta_min). Throws Infeasible above the cap.
BetaFeasibility min_l6_at(const DesignSpec& spec, double beta);

struct MinL6Result {
    double l6_min = 0.0;
    double beta_critical = 0.0;
    double rho_critical = 0.0;
    double sin_theta_critical = 0.0;
};

// Max over the tilt range of min_l6_at: a coarse grid then golden-section
// refinement of the worst bracket until the l6 estimate moves less than tol.
// Threads split the grid; the reduction is deterministic.
MinL6Result min_l6_search(const DesignSpec& spec, double tol, unsigned threads = 0);

struct DesignReport {
    ClearanceLengths clearance;
    MinL6Result coupler;
    double l7 = 0.0;
};

DesignReport design_report(const DesignSpec& spec, double tol, unsigned threads = 0);

// {l2, l4, l6_min, beta_critical, l7, table3_comparison}
std::string design_report_json(const DesignReport& report, const DesignSpec& spec);

}  // namespace sortpm
