#include "sortpm/design.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <thread>
#include <vector>

#include "json.hpp"
#include "sortpm/errors.hpp"

namespace sortpm {

void DesignSpec::validate() const {
    constexpr double half_pi = std::numbers::pi / 2.0;
    if (!(a > 0.0)) throw DomainError("design: a must be positive");
    if (!(beta_min > -half_pi && beta_max < half_pi && beta_min <= beta_max)) {
        throw DomainError("design: beta range must lie inside (-pi/2, pi/2) with min <= max");
    }
    if (!(theta_min >= 0.0 && theta_min < half_pi)) {
        throw DomainError("design: theta_min must lie in [0, pi/2)");
    }
    if (!(l6_cap_factor > 0.0)) throw DomainError("design: l6 cap must be positive");
    if (beta_samples < 2) throw DomainError("design: need at least two beta samples");
}

ClearanceLengths clearance_lengths(const DesignSpec& spec) {
    const double c = spec.beta_clearance;
    const double denom = std::cos(c) - std::sin(c);
    if (!(denom > 0.0)) throw DomainError("clearance_lengths: cos(c) <= sin(c)");
    return {spec.a / denom, 2.0 * spec.a / denom};
}

PlatformConstraintEval platform_constraints(double a, double l6, double l7, double beta, double rho) {
    if (!(l6 > 0.0) || !(l7 > 0.0)) throw DomainError("platform_constraints: l6 and l7 must be positive");
    const double cb = std::cos(beta);
    const double sb = std::sin(beta);
    const double horizontal = 2.0 * a - l7 * cb;
    const double vertical = rho + l7 * sb;

    PlatformConstraintEval out;
    out.closure_residual = horizontal * horizontal + vertical * vertical - l6 * l6;
    const double s = vertical * l7 * cb + horizontal * l7 * sb;
    const double c = horizontal * l7 * cb - vertical * l7 * sb;
    out.theta = std::atan2(s, c);
    out.sin_theta = std::sin(out.theta);
    out.cos_theta = std::cos(out.theta);
    return out;
}

BetaFeasibility min_l6_at(const DesignSpec& spec, double beta) {
    const double l7 = spec.l7();
    const double cb = std::cos(beta);
    const double sb = std::sin(beta);
    const double horizontal = 2.0 * spec.a - l7 * cb;
    const double s_min = std::sin(spec.theta_min);
    const double cap = spec.l6_cap_factor * spec.a;

    // On closure l6 = |(horizontal, v)| with v = rho + l7 sin(beta), and
    // sin(theta) l6 = v cos(beta) + horizontal sin(beta). The margin
    //   g(v) = v cos(beta) + horizontal sin(beta) - s_min |(horizontal, v)|
    // is concave with g'(0) = cos(beta) > 0, so the admissible v form a ray
    // [v*, inf) and the shortest coupler sits at max(v*, 0).
    auto margin = [&](double v) { return v * cb + horizontal * sb - s_min * std::hypot(horizontal, v); };

    double v_star = 0.0;
    if (margin(0.0) < 0.0) {
        double lo = 0.0;
        double hi = std::max(std::abs(horizontal), 1.0);
        while (margin(hi) < 0.0) {
            if (std::hypot(horizontal, hi) > cap) {
                throw Infeasible("min_l6_at: no coupler below the cap closes the platform at beta = " +
                                 std::to_string(beta));
            }
            lo = hi;
            hi *= 2.0;
        }
        for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            (margin(mid) >= 0.0 ? hi : lo) = mid;
        }
        v_star = hi;
    }
    const double l6 = std::hypot(horizontal, v_star);
    if (l6 > cap) throw Infeasible("min_l6_at: required coupler exceeds the cap");
    return {l6, v_star - l7 * sb};
}

MinL6Result min_l6_search(const DesignSpec& spec, double tol, unsigned threads) {
    spec.validate();
    if (!(tol > 0.0)) throw DomainError("min_l6_search: tol must be positive");

    auto finish = [&](double beta, const BetaFeasibility& f) {
        MinL6Result r;
        r.l6_min = f.l6;
        r.beta_critical = beta;
        r.rho_critical = f.rho;
        r.sin_theta_critical = platform_constraints(spec.a, f.l6, spec.l7(), beta, f.rho).sin_theta;
        return r;
    };

    if (spec.beta_min == spec.beta_max) return finish(spec.beta_min, min_l6_at(spec, spec.beta_min));

    const int n = spec.beta_samples;
    const double step = (spec.beta_max - spec.beta_min) / (n - 1);
    auto beta_at = [&](int k) { return k == n - 1 ? spec.beta_max : spec.beta_min + step * k; };

    // Coarse grid. Each slot is written by exactly one worker.
    std::vector<double> l6(static_cast<std::size_t>(n));
    std::vector<char> infeasible(static_cast<std::size_t>(n), 0);
    auto work = [&](int begin, int end) {
        for (int k = begin; k < end; ++k) {
            try {
                l6[k] = min_l6_at(spec, beta_at(k)).l6;
            } catch (const Infeasible&) {
                infeasible[k] = 1;
            }
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(n));
    if (threads <= 1) {
        work(0, n);
    } else {
        std::vector<std::jthread> pool;
        const int chunk = (n + static_cast<int>(threads) - 1) / static_cast<int>(threads);
        for (int begin = 0; begin < n; begin += chunk) pool.emplace_back(work, begin, std::min(n, begin + chunk));
    }
    for (int k = 0; k < n; ++k) {
        if (infeasible[k]) {
            throw Infeasible("min_l6_search: some tilt in the range cannot be reached below the cap");
        }
    }
    const int best = static_cast<int>(std::max_element(l6.begin(), l6.end()) - l6.begin());

    // Golden-section maximisation on the bracket around the worst grid point,
    // until the bracket spans less than tol of arc at radius a.
    double lo = beta_at(std::max(best - 1, 0));
    double hi = beta_at(std::min(best + 1, n - 1));
    const double width_goal = tol / spec.a;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto f = [&](double b) { return min_l6_at(spec, b).l6; };
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 200 && hi - lo > width_goal; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }

    // Best of the refined interior points and the grid maximum.
    double beta_c = beta_at(best);
    double value = l6[best];
    if (f1 > value) {
        value = f1;
        beta_c = x1;
    }
    if (f2 > value) {
        value = f2;
        beta_c = x2;
    }
    return finish(beta_c, min_l6_at(spec, beta_c));
}

DesignReport design_report(const DesignSpec& spec, double tol, unsigned threads) {
    DesignReport r;
    r.clearance = clearance_lengths(spec);
    r.coupler = min_l6_search(spec, tol, threads);
    r.l7 = spec.l7();
    return r;
}

namespace {

double sig9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::strtod(buf, nullptr);
}

}  // namespace

std::string design_report_json(const DesignReport& report, const DesignSpec& spec) {
    using nlohmann::ordered_json;
    auto compare = [](double computed, double tabulated) {
        ordered_json entry;
        entry["computed"] = sig9(computed);
        entry["table3"] = sig9(tabulated);
        entry["difference"] = sig9(computed - tabulated);
        return entry;
    };

    ordered_json doc;
    doc["a"] = sig9(spec.a);
    doc["l2"] = sig9(report.clearance.l2);
    doc["l4"] = sig9(report.clearance.l4);
    doc["l6_min"] = sig9(report.coupler.l6_min);
    doc["beta_critical"] = sig9(report.coupler.beta_critical);
    doc["sin_theta_critical"] = sig9(report.coupler.sin_theta_critical);
    doc["l7"] = sig9(report.l7);

    // Tabulated sizing of the robot (a = 300 mm); strokes are reference values.
    ordered_json table;
    table["l2"] = compare(report.clearance.l2, 335.0);
    table["l4"] = compare(report.clearance.l4, 670.0);
    table["l6"] = compare(report.coupler.l6_min, 256.0);
    table["l7"] = compare(report.l7, 600.0 * std::numbers::sqrt2);
    table["reference_strokes"] = {{"y1", 0.0}, {"y2", 593.5}, {"y3", 611.5}};
    doc["table3_comparison"] = table;
    return doc.dump(2);
}

}  // namespace sortpm
