#include <gtest/gtest.h>

#include <vector>

#include "sortpm/errors.hpp"
#include "sortpm/topology.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace sortpm::testing {
namespace {

const Eigen::Vector3d kX = Eigen::Vector3d::UnitX();
const Eigen::Vector3d kY = Eigen::Vector3d::UnitY();
const Eigen::Vector3d kZ = Eigen::Vector3d::UnitZ();

PocSet poc(std::vector<Eigen::Vector3d> t, std::vector<Eigen::Vector3d> r) {
    return {Subspace::span(t), Subspace::span(r)};
}

// Random subspace of random dimension; directions sometimes repeat so that
// degenerate spans are exercised.
Subspace random_subspace(Rng& rng) {
    const int k = rng.integer(0, 3);
    std::vector<Eigen::Vector3d> dirs;
    for (int i = 0; i < k; ++i) {
        if (!dirs.empty() && rng.integer(0, 3) == 0) {
            dirs.push_back(-2.0 * dirs.back());
        } else {
            const int axis = rng.integer(0, 3);
            dirs.push_back(axis == 3 ? rng.direction() : Eigen::Vector3d::Unit(axis));
        }
    }
    return Subspace::span(dirs);
}

PocSet random_poc(Rng& rng) { return {random_subspace(rng), random_subspace(rng)}; }

std::vector<Eigen::Vector3d> columns(const Subspace& s) {
    std::vector<Eigen::Vector3d> out;
    for (int i = 0; i < s.dim(); ++i) out.push_back(s.basis().col(i));
    return out;
}

TEST(Subspace, SpanRankAndContainment) {
    EXPECT_EQ(Subspace::span({}).dim(), 0);
    EXPECT_EQ(Subspace::span({kX, 3.0 * kX}).dim(), 1);
    EXPECT_EQ(Subspace::span({kX, kY, kX + kY}).dim(), 2);
    EXPECT_EQ(Subspace::full().dim(), 3);
    const Subspace yz = Subspace::span({kY, kZ});
    EXPECT_TRUE(yz.contains(kY + 2.0 * kZ));
    EXPECT_FALSE(yz.contains(kX));
    EXPECT_EQ(yz.orthogonal_complement(), Subspace::span({kX}));
}

TEST(PocAlgebra, ParallelogramLimbUnion) {
    // Slider along y plus the parallelogram's circular translation, then two
    // revolute joints about y.
    const PocSet pi_part = poc({kY, kZ}, {});
    const PocSet rr_part = poc({kX, kZ}, {kY});
    const PocSet limb = poc_union(pi_part, rr_part);
    EXPECT_EQ(limb.t_dim(), 3);
    EXPECT_EQ(limb.r, Subspace::span({kY}));
}

TEST(PocAlgebra, IdentityAndIdempotence) {
    const PocSet x = poc({kX}, {});
    EXPECT_EQ(poc_union(x, PocSet{}), x);
    EXPECT_EQ(poc_union(x, x), x);
    const PocSet y = poc({kY, kZ}, {kY});
    EXPECT_EQ(poc_intersect(y, y), y);
}

TEST(PocAlgebra, SubMechanismIntersection) {
    const PocSet limb_a = poc({kX, kY, kZ}, {kY});
    const PocSet limb_b = poc({kY, kZ}, {kX});
    const PocSet sub = poc_intersect(limb_a, limb_b);
    EXPECT_EQ(sub, poc({kY, kZ}, {}));
    EXPECT_EQ(sub.describe(), "[t^2(||yoz); r^0]");
}

TEST(PocAlgebra, PlatformIntersectionKeepsParallelRotation) {
    const PocSet chain1 = poc({kY, kZ}, {kY});
    const PocSet chain2 = poc({kX, kY, kZ}, {kY});
    EXPECT_EQ(poc_intersect(chain1, chain2), chain1);
}

TEST(PocAlgebra, LoopEquationCounts) {
    EXPECT_EQ(loop_equation_count(poc({kX, kY, kZ}, {kY}), poc({kY, kZ}, {kX})), 5);
    EXPECT_EQ(loop_equation_count(poc({kY, kZ}, {kY}), poc({kX, kY, kZ}, {kY})), 4);
    const PocSet full{Subspace::full(), Subspace::full()};
    EXPECT_EQ(loop_equation_count(full, full), 6);
}

TEST(PocAlgebra, MotionPattern) {
    EXPECT_EQ(motion_pattern(poc({kY, kZ}, {kY})), "2T1R");
    EXPECT_EQ(motion_pattern(poc({kX, kY, kZ}, {kY})), "3T1R");
    EXPECT_EQ(motion_pattern(PocSet{}), "0T0R");
}

TEST(PocProperty, UnionAndIntersectionLaws) {
    Rng rng(51);
    for (int i = 0; i < 2000; ++i) {
        const PocSet a = random_poc(rng), b = random_poc(rng), c = random_poc(rng);
        EXPECT_EQ(poc_union(a, b), poc_union(b, a));
        EXPECT_EQ(poc_intersect(a, b), poc_intersect(b, a));
        EXPECT_EQ(poc_union(poc_union(a, b), c), poc_union(a, poc_union(b, c)));
        EXPECT_EQ(poc_intersect(poc_intersect(a, b), c), poc_intersect(a, poc_intersect(b, c)));
        EXPECT_EQ(poc_union(a, a), a);
        EXPECT_EQ(poc_intersect(a, a), a);
        const PocSet u = poc_union(a, b);
        const PocSet n = poc_intersect(a, b);
        EXPECT_GE(u.t_dim(), std::max(a.t_dim(), b.t_dim()));
        EXPECT_GE(u.r_dim(), std::max(a.r_dim(), b.r_dim()));
        EXPECT_LE(n.t_dim(), std::min(a.t_dim(), b.t_dim()));
        EXPECT_LE(n.r_dim(), std::min(a.r_dim(), b.r_dim()));
    }
}

TEST(PocProperty, DimensionsAgreeWithGramSchmidt) {
    Rng rng(52);
    for (int i = 0; i < 2000; ++i) {
        const Subspace a = random_subspace(rng), b = random_subspace(rng);
        std::vector<Eigen::Vector3d> both = columns(a);
        for (const auto& v : columns(b)) both.push_back(v);
        const int sum_dim = gram_schmidt_rank(both);
        EXPECT_EQ(a.sum(b).dim(), sum_dim);
        EXPECT_EQ(a.intersect(b).dim(), a.dim() + b.dim() - sum_dim);
        for (const auto& v : columns(a.intersect(b))) {
            EXPECT_TRUE(a.contains(v));
            EXPECT_TRUE(b.contains(v));
        }
    }
}

TEST(PocProperty, RotationInvariance) {
    Rng rng(53);
    for (int i = 0; i < 1000; ++i) {
        const PocSet a = random_poc(rng), b = random_poc(rng);
        const Eigen::Matrix3d R = rng.rotation();
        const PocSet ra{a.t.rotated(R), a.r.rotated(R)};
        const PocSet rb{b.t.rotated(R), b.r.rotated(R)};
        EXPECT_EQ(ra.t_dim(), a.t_dim());
        EXPECT_EQ(ra.r_dim(), a.r_dim());
        EXPECT_EQ(poc_union(ra, rb).dim(), poc_union(a, b).dim());
        EXPECT_EQ(poc_intersect(ra, rb).dim(), poc_intersect(a, b).dim());
        const PocSet n = poc_intersect(a, b);
        EXPECT_EQ(poc_intersect(ra, rb), (PocSet{n.t.rotated(R), n.r.rotated(R)}));
    }
}

TEST(LoopNotation, ParsesAxesAndRelations) {
    const LoopSpec loop = parse_loop("P11*(y) || R12 || R13 || R14 ^ R23 || R22 ^ P21*");
    ASSERT_EQ(loop.joints.size(), 7u);
    EXPECT_EQ(loop.freedoms(), 7);
    EXPECT_EQ(loop.actuated, 2);
    EXPECT_EQ(loop.joints[0].kind, JointKind::Prismatic);
    EXPECT_TRUE(loop.joints[0].actuated);
    EXPECT_EQ(*loop.joints[3].axis, kY);
    EXPECT_EQ(*loop.joints[4].axis, kX);
    EXPECT_EQ(*loop.joints[6].axis, kY);
    EXPECT_EQ(loop.relations[3], AxisRelation::Perpendicular);
    EXPECT_EQ(loop.str(), "P11*(y) || R12(y) || R13(y) || R14(y) ^ R23(x) || R22(x) ^ P21*(y)");
}

TEST(LoopNotation, AcceptsBracesUnicodeAndParallelogram) {
    const LoopSpec loop = parse_loop("{-P31*(y) - \xCF\x80(z) - R33(y) \xE2\x88\xA5 R34 - R24(y)-}");
    ASSERT_EQ(loop.joints.size(), 5u);
    EXPECT_EQ(loop.joints[1].kind, JointKind::Parallelogram);
    EXPECT_EQ(loop.relations[0], AxisRelation::Unspecified);
    EXPECT_EQ(loop.relations[2], AxisRelation::Parallel);
    EXPECT_EQ(loop.actuated, 1);
    const LoopSpec tilted = parse_loop("R1(1,1,0) ^ R2(0,0,2)");
    EXPECT_NEAR(tilted.joints[0].axis->norm(), 1.0, 1e-15);
}

TEST(LoopNotation, RejectsMalformedInput) {
    EXPECT_THROW(parse_loop(""), InputError);
    EXPECT_THROW(parse_loop("Q1"), InputError);
    EXPECT_THROW(parse_loop("R1 ||"), InputError);
    EXPECT_THROW(parse_loop("R1(y) || R2(x)"), InputError);
    EXPECT_THROW(parse_loop("R1(y) ^ R2(y)"), InputError);
    EXPECT_THROW(parse_loop("R1(0,0,0)"), InputError);
    EXPECT_THROW(parse_loop("R1(w)"), InputError);
}

TEST(JointPoc, Contributions) {
    const JointDescriptor r{JointKind::Revolute, "R", kY, false};
    EXPECT_EQ(joint_poc(r), poc({kX, kZ}, {kY}));
    EXPECT_EQ(joint_poc(r, true), poc({}, {kY}));
    const JointDescriptor p{JointKind::Prismatic, "P", kY, true};
    EXPECT_EQ(joint_poc(p), poc({kY}, {}));
    const JointDescriptor pa{JointKind::Parallelogram, "Pa", kZ, false};
    EXPECT_EQ(joint_poc(pa), poc({kZ}, {}));
}

TEST(Mobility, SortingMechanism) {
    const SortingMechanismTopology t = sorting_mechanism_topology();
    const MobilityResult& m = t.mobility;
    EXPECT_EQ(m.xi, (std::vector<int>{5, 4}));
    EXPECT_EQ(m.dof, 3);
    EXPECT_EQ(m.delta, (std::vector<int>{0, 0}));
    EXPECT_EQ(m.kappa, 0.0);
    EXPECT_EQ(m.freedoms, (std::vector<int>{7, 5}));
    EXPECT_EQ(t.sub_pm, poc({kY, kZ}, {}));
    EXPECT_EQ(t.platform, poc({kY, kZ}, {kY}));
    EXPECT_EQ(motion_pattern(t.platform), "2T1R");
    EXPECT_EQ(t.formula, "2T1R-PM^0[3, 2(7, 5)] = 2T1R-SKC1^0(0; 5) + 3T1R-SKC2^0(0; 4)");
}

TEST(Mobility, SubMechanismAlone) {
    const SortingMechanismTopology t = sorting_mechanism_topology();
    const MobilityResult m = mobility_analysis({t.loops[0]}, std::vector<LoopPocPair>{t.loop_pocs[0]});
    EXPECT_EQ(m.dof, 2);
}

TEST(Mobility, RigidLoop) {
    const LoopSpec loop = parse_loop("R1(x) - R2(y) - R3(z) - R4(x) - R5(y) - R6(z)");
    const MobilityResult m = mobility_analysis({loop}, std::vector<int>{6});
    EXPECT_EQ(m.dof, 0);
    EXPECT_EQ(m.delta, (std::vector<int>{0}));
}

TEST(Mobility, CouplingDegreeFromDeltas) {
    const LoopSpec a = parse_loop("R1 || R2 || R3 || R4");
    const LoopSpec b = parse_loop("P1* - R2 - R3");
    const MobilityResult m = mobility_analysis({a, b}, std::vector<int>{3, 4});
    EXPECT_EQ(m.delta, (std::vector<int>{1, -2}));
    EXPECT_EQ(m.kappa, 1.5);
    EXPECT_EQ(m.dof, 0);
}

TEST(Mobility, RejectsInconsistentInput) {
    EXPECT_THROW(mobility_analysis({}, std::vector<int>{}), InputError);
    EXPECT_THROW(mobility_analysis({parse_loop("R1")}, std::vector<int>{1, 2}), InputError);
}

}  // namespace
}  // namespace sortpm::testing
