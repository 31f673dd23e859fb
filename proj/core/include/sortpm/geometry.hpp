#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace sortpm {

// Dimensional model of the 2T1R sorting mechanism. Millimeters throughout.
//
// Leg 1 (A1B1C1D) and leg 2 (A2B2C2) ride the rail at x = +a, leg 3 (the
// parallelogram A3B3C3) rides the rail at x = -a. E is the platform base point,
// F the tip of the platform extension, C3F the coupler.
struct GeometryParams {
    double a = 0.0;   // half rail spacing
    double l1 = 0.0;  // slider-to-joint riser height A_iB_i
    double l2 = 0.0;  // leg 1 bar length, B1C1 = C1D
    double l3 = 0.0;  // platform half-length, DE = EC2
    double l4 = 0.0;  // leg 2 bar length B2C2
    double l5 = 0.0;  // parallelogram bar length B3C3
    double l6 = 0.0;  // coupler length C3F
    double l7 = 0.0;  // platform extension length EF
    double l0 = 0.0;  // parallelogram offset (no kinematic effect)
    double l8 = 0.0;  // parallelogram short side (no kinematic effect)

    bool operator==(const GeometryParams&) const = default;

    // Dimensions used for the numerical verification of the kinematic models.
    static GeometryParams verification_set() {
        GeometryParams p;
        p.a = 300.0;
        p.l1 = 100.0;
        p.l2 = 200.0;
        p.l3 = 160.0;
        p.l4 = 400.0;
        p.l5 = 320.0;
        p.l6 = 240.0;
        p.l7 = 500.0;
        return p;
    }

    // Final dimensioning of the sorting robot. l1 = l0 + l6 and l5 = l4 follow
    // the sizing table conventions.
    static GeometryParams sized_set() {
        GeometryParams p;
        p.a = 300.0;
        p.l0 = 10.0;
        p.l6 = 256.0;
        p.l1 = p.l0 + p.l6;
        p.l2 = 335.0;
        p.l3 = 160.0;
        p.l4 = 670.0;
        p.l5 = p.l4;
        p.l7 = 2.0 * p.a * std::numbers::sqrt2;
        p.l8 = 100.0;
        return p;
    }
};

// Actuated prismatic displacements along y.
struct JointInput {
    double y1 = 0.0;
    double y2 = 0.0;
    double y3 = 0.0;

    bool operator==(const JointInput&) const = default;
};

// Platform output. The x-coordinate of E is structurally the constant a.
struct PlatformPose {
    double y = 0.0;
    double z = 0.0;
    double beta = 0.0;  // rotation about y, radians, in (-pi, pi]

    bool operator==(const PlatformPose&) const = default;
};

// Wraps an angle into (-pi, pi].
double normalize_angle(double angle);

enum class Violation {
    NonPositiveLength,
    Leg2CannotReachRiser,  // l4 < l1: no real z at z = 0
    CouplerCannotSpanRails,  // l6 + l7 < 2a: no real beta at beta = 0
};

struct ViolationEntry {
    Violation kind;
    std::string message;
};

struct ValidationReport {
    std::vector<ViolationEntry> violations;

    bool ok() const { return violations.empty(); }
    bool has(Violation kind) const;
};

// Lists every violated rule; never throws. An empty report means valid.
ValidationReport validate_params(const GeometryParams& p);

const char* to_string(Violation v);

}  // namespace sortpm
