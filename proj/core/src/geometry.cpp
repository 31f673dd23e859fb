#include "sortpm/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>

namespace sortpm {

double normalize_angle(double angle) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double wrapped = std::remainder(angle, two_pi);  // [-pi, pi]
    if (wrapped <= -std::numbers::pi) wrapped += two_pi;
    return wrapped;
}

bool ValidationReport::has(Violation kind) const {
    return std::any_of(violations.begin(), violations.end(),
                       [kind](const ViolationEntry& e) { return e.kind == kind; });
}

const char* to_string(Violation v) {
    switch (v) {
        case Violation::NonPositiveLength: return "non-positive length";
        case Violation::Leg2CannotReachRiser: return "leg 2 cannot reach riser height";
        case Violation::CouplerCannotSpanRails: return "coupler cannot span rails";
    }
    return "unknown";
}

ValidationReport validate_params(const GeometryParams& p) {
    ValidationReport report;
    auto add = [&report](Violation kind, std::string detail) {
        report.violations.push_back({kind, std::string(to_string(kind)) + ": " + std::move(detail)});
    };

    const std::array<std::pair<const char*, double>, 8> kinematic{{
        {"a", p.a}, {"l1", p.l1}, {"l2", p.l2}, {"l3", p.l3},
        {"l4", p.l4}, {"l5", p.l5}, {"l6", p.l6}, {"l7", p.l7},
    }};
    for (const auto& [name, value] : kinematic) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            add(Violation::NonPositiveLength, std::string(name) + " must be > 0");
        }
    }
    // l0 and l8 may be absent (zero) but never negative.
    for (const auto& [name, value] : {std::pair{"l0", p.l0}, std::pair{"l8", p.l8}}) {
        if (value < 0.0 || !std::isfinite(value)) {
            add(Violation::NonPositiveLength, std::string(name) + " must be >= 0");
        }
    }
    if (p.l4 < p.l1) {
        add(Violation::Leg2CannotReachRiser, "l4 < l1, no real z at z = 0");
    }
    if (p.l6 < std::abs(2.0 * p.a - p.l7)) {
        add(Violation::CouplerCannotSpanRails, "l6 < |2a - l7|, no real beta at beta = 0");
    }
    return report;
}

}  // namespace sortpm
