#include <gtest/gtest.h>

#include <numbers>

#include "sortpm/geometry.hpp"
#include "support/generators.hpp"

namespace sortpm::testing {
namespace {

TEST(Validation, VerificationAndSizedSetsAreValid) {
    EXPECT_TRUE(validate_params(GeometryParams::verification_set()).ok());
    GeometryParams sized;
    sized.a = 300.0;
    sized.l1 = 266.0;
    sized.l2 = 335.0;
    sized.l3 = 160.0;
    sized.l4 = 670.0;
    sized.l5 = 670.0;
    sized.l6 = 256.0;
    sized.l7 = 600.0 * std::numbers::sqrt2;
    EXPECT_TRUE(validate_params(sized).ok());
    EXPECT_TRUE(validate_params(GeometryParams::sized_set()).ok());
}

TEST(Validation, NegativeLength) {
    GeometryParams p = GeometryParams::verification_set();
    p.l4 = -1.0;
    const ValidationReport r = validate_params(p);
    EXPECT_TRUE(r.has(Violation::NonPositiveLength));
    // Every rule is evaluated: l4 < l1 is reported too.
    EXPECT_TRUE(r.has(Violation::Leg2CannotReachRiser));
}

TEST(Validation, CouplerCannotSpanRails) {
    GeometryParams p = GeometryParams::verification_set();
    p.l6 = 10.0;
    p.l7 = 10.0;
    const ValidationReport r = validate_params(p);
    EXPECT_TRUE(r.has(Violation::CouplerCannotSpanRails));
    EXPECT_FALSE(r.has(Violation::NonPositiveLength));
}

TEST(Validation, LegTooShortForRiser) {
    GeometryParams p = GeometryParams::verification_set();
    p.l4 = 90.0;
    EXPECT_TRUE(validate_params(p).has(Violation::Leg2CannotReachRiser));
}

TEST(Validation, OffsetsMayBeZeroButNotNegative) {
    GeometryParams p = GeometryParams::verification_set();
    EXPECT_EQ(p.l0, 0.0);
    EXPECT_TRUE(validate_params(p).ok());
    p.l8 = -1.0;
    EXPECT_TRUE(validate_params(p).has(Violation::NonPositiveLength));
}

TEST(ValidationProperty, Pure) {
    Rng rng(71);
    for (int i = 0; i < 1000; ++i) {
        GeometryParams p;
        for (double* v : {&p.a, &p.l1, &p.l2, &p.l3, &p.l4, &p.l5, &p.l6, &p.l7, &p.l0, &p.l8}) {
            *v = rng.uniform(-50.0, 800.0);
        }
        const ValidationReport a = validate_params(p);
        const ValidationReport b = validate_params(p);
        ASSERT_EQ(a.violations.size(), b.violations.size());
        for (std::size_t k = 0; k < a.violations.size(); ++k) {
            EXPECT_EQ(a.violations[k].kind, b.violations[k].kind);
            EXPECT_EQ(a.violations[k].message, b.violations[k].message);
        }
        EXPECT_EQ(a.has(Violation::CouplerCannotSpanRails), p.l6 < std::abs(2.0 * p.a - p.l7));
    }
}

TEST(Angles, NormalizedToHalfOpenInterval) {
    EXPECT_EQ(normalize_angle(std::numbers::pi), std::numbers::pi);
    EXPECT_EQ(normalize_angle(-std::numbers::pi), std::numbers::pi);
    EXPECT_NEAR(normalize_angle(3.0 * std::numbers::pi / 2.0), -std::numbers::pi / 2.0, 1e-15);
    EXPECT_EQ(normalize_angle(0.25), 0.25);
    Rng rng(72);
    for (int i = 0; i < 1000; ++i) {
        const double v = normalize_angle(rng.uniform(-50.0, 50.0));
        EXPECT_GT(v, -std::numbers::pi);
        EXPECT_LE(v, std::numbers::pi);
    }
}

}  // namespace
}  // namespace sortpm::testing
