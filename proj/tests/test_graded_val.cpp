#include <gtest/gtest.h>

#include <random>

#include "abelcp/graded_val.hpp"
#include "common.hpp"

using namespace abelcp;
using namespace abelcp::testing;

namespace {

class GradedB : public ::testing::Test {
protected:
    io::Fixture f = fixture("instance_b.json");
    GradedContext ctx{algebra(f)};
    const GaloisExtension& K = ctx.ext();
};

HomogeneousElement from_data(const GradedContext& ctx, const io::HomogeneousData& d) {
    return ctx.make(d.alpha, d.m, d.w);
}

}  // namespace

TEST_F(GradedB, ValueExamples) {
    EXPECT_EQ(to_string(ctx.value_of(ctx.z(0))), "(1/2, 0)");
    EXPECT_FALSE(ctx.value_of(ctx.z(0)).in_gamma_F());
    EXPECT_EQ(to_string(ctx.value_of(ctx.x(0))), "(1, 0)");
    EXPECT_TRUE(ctx.value_of(ctx.x(0)).in_gamma_F());
    const auto h = ctx.make(B::r2(K), {1, 1});
    EXPECT_EQ(to_string(ctx.value_of(h)), "(1/2, 1/2)");
    EXPECT_FALSE(ctx.value_of(h).in_gamma_F());
}

TEST_F(GradedB, ThetaExamples) {
    const auto& G = ctx.group();
    EXPECT_EQ(ctx.theta(make_value(G, {3, -1}, {0, 0})), G.identity());
    EXPECT_EQ(ctx.theta(make_value(G, {0, 0}, {1, 0})), (GroupExponent{1, 0}));
    const auto v = make_value(G, {1, 0}, {1, 1});
    EXPECT_EQ(to_string(v), "(3/2, 1/2)");
    EXPECT_EQ(ctx.theta(v), (GroupExponent{1, 1}));
    for (std::size_t i = 0; i < G.rank(); ++i) EXPECT_EQ(ctx.theta(ctx.value_of(ctx.z(i))), G.generator(i));
}

TEST_F(GradedB, ValueNormalizesNumerators) {
    const auto& G = ctx.group();
    EXPECT_EQ(make_value(G, {0, 0}, {3, -1}), make_value(G, {1, -1}, {1, 1}));
    EXPECT_EQ(to_string(make_value(G, {0, 0}, {-1, 0})), "(-1/2, 0)");
}

TEST_F(GradedB, CommuteExamples) {
    const auto central = ctx.make(q(K, 7), {0, 0}, {2, -1});
    EXPECT_TRUE(ctx.is_central(central));
    EXPECT_TRUE(ctx.commute(central, ctx.z(0)));
    EXPECT_TRUE(ctx.commute(central, ctx.make(B::r6(K), {1, 1})));

    const auto z1z2 = ctx.mul(ctx.z(0), ctx.z(1)), z2z1 = ctx.mul(ctx.z(1), ctx.z(0));
    EXPECT_EQ(z2z1.alpha, K.neg(z1z2.alpha));
    EXPECT_FALSE(ctx.commute(ctx.z(0), ctx.z(1)));

    EXPECT_FALSE(ctx.commute(ctx.make(B::r3(K), {1, 0}), ctx.make(B::r2(K), {0, 1})));
}

TEST_F(GradedB, CarriesIntoCentralVariable) {
    const auto sq = ctx.pow(ctx.z(0), 2);
    EXPECT_EQ(sq, ctx.make(q(K, 3), {0, 0}, {1, 0}));
    EXPECT_EQ(ctx.pow(ctx.make(B::r2(K), {1, 1}), 2), ctx.make(q(K, 30), {0, 0}, {1, 1}));
}

TEST_F(GradedB, QPowerCentralExamples) {
    const auto r = ctx.qpower_central_check(ctx.make(B::r2(K), {1, 1}), 2);
    EXPECT_TRUE(r.central);
    EXPECT_FALSE(r.in_gamma_F);
    const auto c = ctx.qpower_central_check(ctx.make(q(K, 2), {0, 0}, {1, 0}), 3);
    EXPECT_TRUE(c.central);
    EXPECT_TRUE(c.in_gamma_F);
    const auto z1 = ctx.qpower_central_check(ctx.z(0), 2);
    EXPECT_TRUE(z1.central);
    EXPECT_FALSE(z1.in_gamma_F);
    EXPECT_TRUE(check_strong_witness(ctx.algebra(), ctx.to_witness(ctx.z(0))));
    EXPECT_FALSE(ctx.qpower_central_check(ctx.make(K.add(K.one(), B::r6(K)), {1, 1}), 2).central);
}

TEST_F(GradedB, PairExamples) {
    const auto h1 = ctx.z(0), h2 = ctx.make(B::r2(K), {0, 1});
    const auto rep = ctx.pair_degeneracy_check(h1, h2);
    EXPECT_TRUE(rep.noncyclic);
    EXPECT_TRUE(rep.commute);
    ASSERT_TRUE(rep.degenerate);
    ASSERT_TRUE(rep.witness);
    EXPECT_EQ(rep.witness->m, (GroupExponent{1, 0}));
    EXPECT_EQ(rep.witness->n, (GroupExponent{0, 1}));
    EXPECT_TRUE(check_pair_witness(ctx.algebra(), *rep.witness));

    const auto cyc = ctx.pair_degeneracy_check(ctx.z(0), ctx.make(q(K, 5), {1, 0}, {1, 0}));
    EXPECT_FALSE(cyc.noncyclic);
    EXPECT_FALSE(cyc.degenerate);
    EXPECT_FALSE(ctx.pair_degeneracy_check(h2, h2).degenerate);
    EXPECT_FALSE(ctx.pair_degeneracy_check(ctx.z(0), ctx.z(1)).degenerate);
}

TEST_F(GradedB, ResidueCocycleExamples) {
    const auto rc = ctx.residue_cocycle(ctx.standard_scalings());
    EXPECT_EQ(rc.data, f.cocycle);
    EXPECT_TRUE(rc.relations.passed());

    std::vector<HomogeneousElement> scaled;
    for (std::size_t i = 0; i < 2; ++i) {
        std::vector<long> w(2, 0);
        w[i] = 1;
        scaled.push_back(ctx.make(f.cocycle.b[i], {0, 0}, w));
    }
    const auto ones = ctx.residue_cocycle(scaled);
    EXPECT_EQ(ones.data.b, (std::vector<FieldElement>{K.one(), K.one()}));

    try {
        ctx.residue_cocycle({ctx.x(1), ctx.x(1)});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Precondition);
    }
}

TEST_F(GradedB, SemiramificationAndGuards) {
    const auto rep = semiramification_report(ctx);
    EXPECT_EQ(rep.value_index, 4u);
    EXPECT_EQ(rep.residue_degree, 4u);
    EXPECT_EQ(rep.algebra_dimension, 16u);
    EXPECT_TRUE(rep.theta_bijective);
    EXPECT_TRUE(rep.theta_additive);
    EXPECT_TRUE(rep.passed);

    const GradedContext r1(algebra(fixture("rank1.json")));
    try {
        semiramification_report(r1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Precondition);
        EXPECT_NE(std::string(e.what()).find("noncyclic"), std::string::npos);
    }
}

TEST_F(GradedB, ZeroCoefficientIsDomainError) {
    try {
        ctx.make(K.zero(), {1, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Domain);
    }
}

TEST_F(GradedB, AuditFindsSingleGenerator) {
    const auto audit = qpower_central_audit(ctx, default_candidates(K), 100);
    ASSERT_TRUE(audit.found);
    EXPECT_EQ(audit.tested, 1u);
    const auto none = qpower_central_audit(ctx, default_candidates(K), 0);
    EXPECT_FALSE(none.found);
}

TEST(GradedB3, Semiramification) {
    const GradedContext ctx(algebra(fixture("instance_b3.json")));
    const auto rep = semiramification_report(ctx);
    EXPECT_EQ(rep.value_index, 9u);
    EXPECT_EQ(rep.residue_degree, 9u);
    EXPECT_EQ(rep.algebra_dimension, 81u);
    EXPECT_TRUE(rep.passed);
}

class GradedFixtures : public ::testing::TestWithParam<const char*> {
protected:
    io::Fixture f = fixture(GetParam());
    GradedContext ctx{algebra(f)};

    HomogeneousElement random_homogeneous(std::mt19937_64& rng) {
        const auto& G = ctx.group();
        std::uniform_int_distribution<std::size_t> pick(0, G.size() - 1);
        std::uniform_int_distribution<long> wd(-2, 2);
        std::vector<long> w(G.rank());
        for (auto& x : w) x = wd(rng);
        FieldElement a = ctx.ext().random_element(rng, 3, 0.6);
        if (a.is_zero()) a = ctx.ext().one();
        return ctx.make(a, G.element(pick(rng)), w);
    }
};

TEST_P(GradedFixtures, ValueIsAdditive) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_homogeneous(rng), b = random_homogeneous(rng);
        ASSERT_EQ(ctx.value_of(ctx.mul(a, b)), ctx.value_of(a) + ctx.value_of(b));
    }
}

TEST_P(GradedFixtures, MultiplicationIsAssociative) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_homogeneous(rng), b = random_homogeneous(rng), c = random_homogeneous(rng);
        ASSERT_EQ(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
    }
}

TEST_P(GradedFixtures, ThetaIsIsomorphism) {
    const auto rep = semiramification_report(ctx);
    EXPECT_TRUE(rep.theta_bijective);
    EXPECT_TRUE(rep.theta_additive);
    EXPECT_TRUE(rep.passed);
}

TEST_P(GradedFixtures, ResidueCocycleRoundTrips) {
    const auto rc = ctx.residue_cocycle(ctx.standard_scalings());
    EXPECT_EQ(rc.data, f.cocycle);
    EXPECT_TRUE(rc.relations.passed());
}

TEST_P(GradedFixtures, WitnessCorrespondence) {
    for (const auto& W : f.witnesses) {
        const auto h = ctx.from_witness(W);
        const long q = ctx.group().order_of(W.m);
        const auto rep = ctx.qpower_central_check(h, q);
        EXPECT_TRUE(rep.central);
        EXPECT_FALSE(rep.in_gamma_F);
        EXPECT_FALSE(ctx.is_central(h));
        EXPECT_TRUE(check_strong_witness(ctx.algebra(), ctx.to_witness(h)));
    }
}

// Degenerate exactly when the emitted pair witness checks, on random and stored pairs.
TEST_P(GradedFixtures, PairCorrespondence) {
    std::mt19937_64 rng(33);
    auto agree = [&](const HomogeneousElement& h1, const HomogeneousElement& h2) {
        const auto rep = ctx.pair_degeneracy_check(h1, h2);
        if (!rep.noncyclic) return !rep.degenerate;
        const DegeneracyPairWitness W{ctx.theta(ctx.value_of(h1)), ctx.theta(ctx.value_of(h2)),
                                      ctx.ext().inv(h2.alpha), h1.alpha};
        return rep.degenerate == check_pair_witness(ctx.algebra(), W);
    };
    for (int trial = 0; trial < 200; ++trial) ASSERT_TRUE(agree(random_homogeneous(rng), random_homogeneous(rng)));
    std::size_t degenerate = 0;
    for (const auto& p : f.pairs) {
        const auto h1 = from_data(ctx, p.h1), h2 = from_data(ctx, p.h2);
        ASSERT_TRUE(agree(h1, h2));
        degenerate += ctx.pair_degeneracy_check(h1, h2).degenerate;
    }
    if (!f.pairs.empty()) {
        EXPECT_GT(degenerate, 0u);
    }
}

INSTANTIATE_TEST_SUITE_P(Fixtures, GradedFixtures,
                         ::testing::Values("instance_b.json", "instance_b3.json", "instance_b_trivial.json"));
