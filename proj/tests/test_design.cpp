#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "json.hpp"
#include "sortpm/design.hpp"
#include "sortpm/errors.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace sortpm::testing {
namespace {

TEST(Clearance, DefaultSpec) {
    const ClearanceLengths c = clearance_lengths(DesignSpec{});
    EXPECT_NEAR(c.l2, 335.13, 0.01);
    EXPECT_NEAR(c.l4, 670.26, 0.01);
    EXPECT_NEAR(c.l2, 335.0, 0.5);
    EXPECT_NEAR(c.l4, 670.0, 0.5);
}

TEST(Clearance, ZeroClearance) {
    DesignSpec s;
    s.beta_clearance = 0.0;
    const ClearanceLengths c = clearance_lengths(s);
    EXPECT_EQ(c.l2, s.a);
    EXPECT_EQ(c.l4, 2.0 * s.a);
}

TEST(Clearance, RejectsWideClearance) {
    DesignSpec s;
    s.beta_clearance = std::numbers::pi / 4.0 + 0.01;
    EXPECT_THROW(clearance_lengths(s), DomainError);
}

TEST(ClearanceProperty, HomogeneousAndProportional) {
    Rng rng(61);
    for (int i = 0; i < 1000; ++i) {
        DesignSpec s;
        s.a = rng.uniform(1.0, 2000.0);
        s.beta_clearance = rng.uniform(-0.5, 0.7);
        const ClearanceLengths c = clearance_lengths(s);
        EXPECT_EQ(c.l4, 2.0 * c.l2);
        DesignSpec twice = s;
        twice.a = 2.0 * s.a;
        const ClearanceLengths d = clearance_lengths(twice);
        EXPECT_EQ(d.l2, 2.0 * c.l2);
        EXPECT_EQ(d.l4, 2.0 * c.l4);
    }
}

TEST(PlatformConstraints, ZeroTiltClosure) {
    const double a = 300.0;
    const double l7 = 2.0 * a * std::numbers::sqrt2;
    const double gap = 2.0 * a * (std::numbers::sqrt2 - 1.0);
    const PlatformConstraintEval e = platform_constraints(a, 250.0, l7, 0.0, 0.0);
    EXPECT_NEAR(e.closure_residual, gap * gap - 250.0 * 250.0, 1e-9);
}

TEST(PlatformConstraints, HopperTiltCancelsHorizontalGap) {
    const double a = 300.0;
    const double l7 = 2.0 * a * std::numbers::sqrt2;
    for (double beta : {-std::numbers::pi / 4.0, std::numbers::pi / 4.0}) {
        const double rho = 37.0;
        const PlatformConstraintEval e = platform_constraints(a, 100.0, l7, beta, rho);
        const double vertical = rho + l7 * std::sin(beta);
        EXPECT_NEAR(e.closure_residual, vertical * vertical - 100.0 * 100.0, 1e-9);
    }
}

TEST(PlatformConstraints, AngleMatchesVectorOracle) {
    Rng rng(62);
    for (int i = 0; i < 2000; ++i) {
        const double a = rng.uniform(50.0, 500.0);
        const double l7 = rng.uniform(50.0, 1500.0);
        const double beta = rng.uniform(-1.5, 1.5);
        const double rho = rng.uniform(-800.0, 800.0);
        const double l6 = rng.uniform(10.0, 900.0);
        const PlatformConstraintEval e = platform_constraints(a, l6, l7, beta, rho);
        EXPECT_NEAR(e.sin_theta * e.sin_theta + e.cos_theta * e.cos_theta, 1.0, 1e-14);
        EXPECT_NEAR(e.sin_theta, platform_sin_theta(a, l7, beta, rho), 1e-12);
    }
    EXPECT_THROW(platform_constraints(300.0, 0.0, 500.0, 0.0, 0.0), DomainError);
}

TEST(MinL6At, MatchesBruteForce) {
    const DesignSpec s;
    const double s_min = std::sin(s.theta_min);
    for (double beta = -0.78; beta <= 0.78; beta += 0.13) {
        const BetaFeasibility f = min_l6_at(s, beta);
        const double brute = brute_force_min_l6(s.a, s.l7(), beta, s_min, -1500.0, 1500.0, 300000);
        EXPECT_NEAR(f.l6, brute, 0.05) << beta;
        EXPECT_GE(platform_sin_theta(s.a, s.l7(), beta, f.rho), s_min - 1e-9);
        EXPECT_NEAR(platform_constraints(s.a, f.l6, s.l7(), beta, f.rho).closure_residual, 0.0, 1e-6);
    }
}

TEST(MinL6Search, ReproducesCriticalPoint) {
    const MinL6Result r = min_l6_search(DesignSpec{}, 0.05);
    EXPECT_NEAR(r.l6_min, 255.885, 0.5);
    EXPECT_NEAR(r.beta_critical, 0.0854, 0.01);
    EXPECT_NEAR(r.sin_theta_critical, 0.2, 1e-3);
}

TEST(MinL6Search, MatchesBruteForceMaximum) {
    const DesignSpec s;
    const double s_min = std::sin(s.theta_min);
    double worst = 0.0;
    for (int k = 0; k <= 400; ++k) {
        const double beta = -0.1 + 0.3 * k / 400.0;
        worst = std::max(worst, brute_force_min_l6(s.a, s.l7(), beta, s_min, -1000.0, 1000.0, 40000));
    }
    EXPECT_NEAR(min_l6_search(s, 0.05).l6_min, worst, 0.1);
}

TEST(MinL6Search, SingletonRange) {
    DesignSpec s;
    s.beta_min = s.beta_max = 0.0;
    EXPECT_EQ(min_l6_search(s, 0.05).l6_min, min_l6_at(s, 0.0).l6);
    EXPECT_EQ(min_l6_search(s, 0.05).beta_critical, 0.0);
}

TEST(MinL6Search, RelaxingAngleShortensCoupler) {
    DesignSpec relaxed;
    relaxed.theta_min = 0.0;
    EXPECT_LT(min_l6_search(relaxed, 0.05).l6_min, min_l6_search(DesignSpec{}, 0.05).l6_min);
}

TEST(MinL6Search, InfeasibleBelowCap) {
    DesignSpec s;
    s.l6_cap_factor = 0.5;
    EXPECT_THROW(min_l6_search(s, 0.05), Infeasible);
}

TEST(MinL6Search, RejectsBadSpecs) {
    DesignSpec s;
    s.theta_min = std::numbers::pi / 2.0;
    EXPECT_THROW(min_l6_search(s, 0.05), DomainError);
    s = DesignSpec{};
    s.beta_max = 1.6;
    EXPECT_THROW(min_l6_search(s, 0.05), DomainError);
    EXPECT_THROW(min_l6_search(DesignSpec{}, 0.0), DomainError);
}

TEST(MinL6Search, IndependentOfThreadCount) {
    const MinL6Result one = min_l6_search(DesignSpec{}, 0.05, 1);
    for (unsigned t : {2u, 3u, 8u}) {
        const MinL6Result r = min_l6_search(DesignSpec{}, 0.05, t);
        EXPECT_EQ(r.l6_min, one.l6_min);
        EXPECT_EQ(r.beta_critical, one.beta_critical);
    }
}

TEST(MinL6SearchProperty, MonotoneInAngleAndRange) {
    Rng rng(63);
    for (int i = 0; i < 15; ++i) {
        DesignSpec lo;
        lo.beta_samples = 401;
        lo.theta_min = rng.uniform(0.0, 0.4);
        DesignSpec hi = lo;
        hi.theta_min = lo.theta_min + rng.uniform(0.0, 0.3);
        EXPECT_LE(min_l6_search(lo, 0.01).l6_min, min_l6_search(hi, 0.01).l6_min + 1e-6);

        DesignSpec narrow = lo;
        narrow.beta_min = rng.uniform(-0.7, 0.0);
        narrow.beta_max = rng.uniform(0.0, 0.7);
        DesignSpec wide = narrow;
        wide.beta_min -= rng.uniform(0.0, 0.08);
        wide.beta_max += rng.uniform(0.0, 0.08);
        EXPECT_LE(min_l6_search(narrow, 0.01).l6_min, min_l6_search(wide, 0.01).l6_min + 1e-6);
    }
}

TEST(Report, JsonFields) {
    const DesignSpec s;
    const DesignReport r = design_report(s, 0.05);
    const auto doc = nlohmann::json::parse(design_report_json(r, s));
    for (const char* key : {"l2", "l4", "l6_min", "beta_critical", "l7", "table3_comparison"}) {
        EXPECT_TRUE(doc.contains(key)) << key;
    }
    EXPECT_NEAR(doc["l7"].get<double>(), 600.0 * std::numbers::sqrt2, 1e-6);
    EXPECT_NEAR(doc["table3_comparison"]["l6"]["table3"].get<double>(), 256.0, 0.0);
    EXPECT_EQ(doc["table3_comparison"]["reference_strokes"]["y2"].get<double>(), 593.5);
}

}  // namespace
}  // namespace sortpm::testing
