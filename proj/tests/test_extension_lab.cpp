#include <gtest/gtest.h>

#include <random>

#include "abelcp/extension_lab.hpp"
#include "common.hpp"

using namespace abelcp;
using namespace abelcp::testing;

namespace {

struct Lab {
    io::Fixture f;
    std::shared_ptr<const CrossedProductAlgebra> A;
    std::shared_ptr<const CompositeExtension> comp;
};

Lab setup(const std::string& fixture_name, const std::string& composite_name) {
    Lab s{fixture(fixture_name), nullptr, nullptr};
    s.A = algebra(s.f);
    s.comp = std::make_shared<const CompositeExtension>(s.f.field, io::load_composite(fixture_path(composite_name)));
    return s;
}

StrongDegeneracyWitness witness_over(const std::string& file, const GaloisExtension& L) {
    return io::witness_from(L, io::load_witness_file(fixture_path(file)).witness);
}

std::string rejection(const std::shared_ptr<const GaloisExtension>& K, const io::CompositeData& d) {
    try {
        CompositeExtension c(K, d);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ValidationFailure);
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Composite, CubeRootOfTwoAccepted) {
    const auto s = setup("instance_b.json", "composite_b_cbrt2.json");
    EXPECT_EQ(s.comp->t(), 3u);
    EXPECT_EQ(s.comp->KE().dim(), 12u);
    EXPECT_TRUE(s.comp->report().passed());
    EXPECT_TRUE(s.comp->report().find("prime to p")->passed);
}

TEST(Composite, TrivialAccepted) {
    const auto s = setup("instance_b.json", "composite_b_trivial.json");
    EXPECT_EQ(s.comp->t(), 1u);
    EXPECT_EQ(s.comp->KE().dim(), s.A->ext().dim());
    EXPECT_EQ(s.comp->rel_gal_group().size(), 1u);
    const auto y = B::r2(s.A->ext());
    EXPECT_EQ(s.comp->embed(y), y);
    EXPECT_EQ(s.comp->norm(y), y);
}

TEST(Composite, Sqrt5OverB3Accepted) {
    const auto s = setup("instance_b3.json", "composite_b3_sqrt5.json");
    EXPECT_EQ(s.comp->t(), 2u);
    EXPECT_EQ(s.comp->rel_gal_group().size(), 2u);
}

TEST(Composite, NotPrimeToPRejected) {
    const auto f = fixture("instance_b.json");
    const auto msg = rejection(f.field, io::load_composite(fixture_path("composite_b_sqrt5_not_prime_to_p.json")));
    EXPECT_NE(msg.find("prime to p"), std::string::npos) << msg;
}

TEST(Composite, RelGalMovingKRejected) {
    const auto f = fixture("instance_b.json");
    auto d = io::load_composite(fixture_path("composite_b_cbrt2.json"));
    d.rel_gal = {d.KE->generators()[0]};
    const auto msg = rejection(f.field, d);
    EXPECT_NE(msg.find("rel_gal automorphisms over K"), std::string::npos) << msg;
}

TEST(Composite, BrokenEmbeddingRejected) {
    const auto f = fixture("instance_b.json");
    auto d = io::load_composite(fixture_path("composite_b_cbrt2.json"));
    // Send sqrt2 to c.
    for (std::size_t r = 0; r < d.embed_K.rows(); ++r) d.embed_K(r, 1) = 0;
    d.embed_K(4, 1) = 1;
    EXPECT_NE(rejection(f.field, d), "");
}

TEST(Composite, WrongBaseRejected) {
    const auto f = fixture("instance_b3.json");
    try {
        CompositeExtension c(f.field, io::load_composite(fixture_path("composite_b_cbrt2.json")));
        FAIL();
    } catch (const Error& e) {
        EXPECT_TRUE(e.kind() == ErrorKind::ValidationFailure || e.kind() == ErrorKind::MalformedInput);
    }
}

class Composites : public ::testing::TestWithParam<std::pair<const char*, const char*>> {
protected:
    Lab s = setup(GetParam().first, GetParam().second);
};

TEST_P(Composites, NormOnEmbeddedBaseIsPower) {
    const auto& K = s.A->ext();
    const long t = static_cast<long>(s.comp->t());
    for (std::size_t k = 0; k < K.dim(); ++k) ASSERT_EQ(s.comp->norm(s.comp->embed(K.basis(k))), K.pow(K.basis(k), t));
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const auto y = K.random_element(rng);
        ASSERT_EQ(s.comp->norm(s.comp->embed(y)), K.pow(y, t));
    }
}

TEST_P(Composites, NormCommutesWithGroup) {
    const auto& K = s.A->ext();
    const auto& KE = s.comp->KE();
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const auto y = KE.random_element(rng, 3, 0.4);
        for (std::size_t i = 0; i < K.group().rank(); ++i)
            ASSERT_EQ(s.comp->norm(KE.apply_generator(i, y)), K.apply_generator(i, s.comp->norm(y)));
    }
}

TEST_P(Composites, NormIsMultiplicative) {
    const auto& K = s.A->ext();
    const auto& KE = s.comp->KE();
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = KE.random_element(rng, 3, 0.4);
        const auto b = KE.random_element(rng, 3, 0.4);
        ASSERT_EQ(s.comp->norm(KE.mul(a, b)), K.mul(s.comp->norm(a), s.comp->norm(b)));
    }
}

TEST_P(Composites, GroupNormAgreesWhenAvailable) {
    const auto& KE = s.comp->KE();
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 10; ++trial) {
        const auto y = KE.random_element(rng, 3, 0.4);
        if (const auto g = s.comp->norm_by_group(y)) {
            ASSERT_EQ(*g, s.comp->norm(y));
        }
    }
}

TEST_P(Composites, ExtendedCocyclePasses) {
    const auto d = extend_cocycle(*s.comp, s.f.cocycle);
    EXPECT_TRUE(validate_relations(s.comp->KE(), d).passed());
    for (std::size_t i = 0; i < d.b.size(); ++i) EXPECT_EQ(d.b[i], s.comp->embed(s.f.cocycle.b[i]));
}

// Stored base witnesses lift through embed_K and descend to witnesses for u^t.
TEST_P(Composites, EmbeddedWitnessDescends) {
    for (const auto& W : s.f.witnesses) {
        StrongDegeneracyWitness lifted{W.m, s.comp->embed(W.l), {}};
        for (const auto& x : W.x) lifted.x.push_back(s.comp->embed(x));
        const auto D = norm_descend_witness(*s.comp, *s.A, lifted);
        const long t = static_cast<long>(s.comp->t());
        EXPECT_EQ(D.l, s.A->ext().pow(W.l, t));
        const CrossedProductAlgebra powered(s.f.field, power_cocycle(s.A->ext(), s.f.cocycle, t));
        EXPECT_TRUE(check_strong_witness(powered, D));
    }
}

INSTANTIATE_TEST_SUITE_P(Fixtures, Composites,
                         ::testing::Values(std::make_pair("instance_b.json", "composite_b_cbrt2.json"),
                                           std::make_pair("instance_b.json", "composite_b_trivial.json"),
                                           std::make_pair("instance_b3.json", "composite_b3_sqrt5.json")));

TEST(Extend, CubeRootKeepsSignMatrix) {
    const auto s = setup("instance_b.json", "composite_b_cbrt2.json");
    const auto d = extend_cocycle(*s.comp, s.f.cocycle);
    const auto& KE = s.comp->KE();
    EXPECT_EQ(d.u[0][1], KE.neg(KE.one()));
    EXPECT_EQ(d.u[1][0], KE.neg(KE.one()));
    EXPECT_EQ(d.b[0], KE.from_scalar(3));
    EXPECT_EQ(d.b[1], KE.from_scalar(5));
}

TEST(Extend, TrivialIsIdentity) {
    const auto s = setup("instance_b.json", "composite_b_trivial.json");
    EXPECT_EQ(extend_cocycle(*s.comp, s.f.cocycle), s.f.cocycle);
}

TEST(Extend, InconsistentCocycleRejected) {
    const auto s = setup("instance_b.json", "composite_b_cbrt2.json");
    auto d = s.f.cocycle;
    d.b[0] = B::r2(s.A->ext());
    try {
        extend_cocycle(*s.comp, d);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InconsistentPresentation);
    }
}

TEST(Descend, TrivialCompositeLeavesWitness) {
    const auto s = setup("instance_b.json", "composite_b_trivial.json");
    const auto W = witness_over("witness_b_trivial.json", s.comp->KE());
    EXPECT_EQ(norm_descend_witness(*s.comp, *s.A, W), W);
}

// N(sqrt2) = (sqrt2)^3 = 2 sqrt2 and N(1) = 1 for the embedded INSTANCE-B witness.
TEST(Descend, EmbeddedSqrtTwoWitness) {
    const auto s = setup("instance_b.json", "composite_b_cbrt2.json");
    const auto& K = s.A->ext();
    const auto W = s.f.witnesses.at(0);
    StrongDegeneracyWitness lifted{W.m, s.comp->embed(W.l), {s.comp->embed(W.x[0]), s.comp->embed(W.x[1])}};
    const auto D = norm_descend_witness(*s.comp, *s.A, lifted);
    EXPECT_EQ(D.l, K.scale(2, B::r2(K)));
    EXPECT_EQ(D.x[0], K.one());
    EXPECT_EQ(D.x[1], K.scale(2, B::r2(K)));
}

// l = sqrt2 c with N(c) = c^3 = 2: l' = 4 sqrt2, x' = (2, 8 sqrt2).
TEST(Descend, GenuineCompositeWitness) {
    const auto s = setup("instance_b.json", "composite_b_cbrt2.json");
    const auto& K = s.A->ext();
    const auto W = witness_over("witness_b_cbrt2.json", s.comp->KE());
    const auto D = norm_descend_witness(*s.comp, *s.A, W);
    EXPECT_EQ(D.m, (GroupExponent{1, 1}));
    EXPECT_EQ(D.l, K.scale(4, B::r2(K)));
    EXPECT_EQ(D.x[0], q(K, 2));
    EXPECT_EQ(D.x[1], K.scale(8, B::r2(K)));
}

TEST(Descend, InvalidWitnessRejected) {
    const auto s = setup("instance_b.json", "composite_b_cbrt2.json");
    const auto W = witness_over("witness_b_cbrt2_invalid.json", s.comp->KE());
    try {
        norm_descend_witness(*s.comp, *s.A, W);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidWitness);
    }
}

TEST(Descend, TrivialCocycleGivesTrivialWitness) {
    const auto f = fixture("instance_b_trivial.json");
    const auto A = algebra(f);
    const CompositeExtension comp(f.field, io::load_composite(fixture_path("composite_b_cbrt2.json")));
    const auto& KE = comp.KE();
    const StrongDegeneracyWitness W{{1, 0}, KE.one(), {KE.one(), KE.one()}};
    const auto D = norm_descend_witness(comp, *A, W);
    EXPECT_EQ(D.l, A->ext().one());
    EXPECT_EQ(D.x, (std::vector<FieldElement>{A->ext().one(), A->ext().one()}));
}

TEST(Power, Examples) {
    const auto s = setup("instance_b.json", "composite_b_cbrt2.json");
    const auto& K = s.A->ext();
    const auto D = norm_descend_witness(*s.comp, *s.A, witness_over("witness_b_cbrt2.json", s.comp->KE()));
    EXPECT_EQ(power_witness(K, D, 1), D);
    const auto P = power_witness(K, D, 3);
    const CrossedProductAlgebra u9(s.f.field, power_cocycle(K, s.f.cocycle, 9));
    EXPECT_TRUE(check_strong_witness(u9, P));
    // u^9 = u on the twisting part.
    EXPECT_EQ(power_cocycle(K, s.f.cocycle, 9).u, s.f.cocycle.u);

    const StrongDegeneracyWitness trivial{{1, 0}, K.one(), {K.one(), K.one()}};
    EXPECT_EQ(power_witness(K, trivial, 5), trivial);
    try {
        power_witness(K, D, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Domain);
    }
}

TEST(Bezout, Examples) {
    const auto a = bezout_certificate(3, 2);
    EXPECT_EQ(a.k, 1);
    EXPECT_EQ(a.l, -1);
    const auto b = bezout_certificate(1, 7);
    EXPECT_EQ(b.k, 1);
    EXPECT_EQ(b.l, 0);
    const auto c = bezout_certificate(5, 4);
    EXPECT_EQ(c.k, 1);
    EXPECT_EQ(c.l, -1);
    try {
        bezout_certificate(4, 6);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Domain);
    }
}

TEST(Bezout, IdentityHoldsForCoprimePairs) {
    for (long t = 1; t <= 40; ++t)
        for (long e = 1; e <= 40; ++e) {
            if (std::gcd(t, e) != 1) continue;
            const auto b = bezout_certificate(t, e);
            ASSERT_EQ(t * b.k + e * b.l, 1) << t << " " << e;
        }
}

TEST(Chain, CubeRootAllStagesPass) {
    const auto s = setup("instance_b.json", "composite_b_cbrt2.json");
    const auto rep = descend_chain(*s.comp, *s.A, witness_over("witness_b_cbrt2.json", s.comp->KE()), 2);
    ASSERT_TRUE(rep.passed());
    ASSERT_EQ(rep.stages.size(), 5u);
    EXPECT_EQ(rep.stages[0].name, "extend");
    EXPECT_EQ(rep.stages[4].name, "power");
    EXPECT_EQ(rep.tk, 3);
    ASSERT_TRUE(rep.powered);
    const CrossedProductAlgebra target(s.f.field, power_cocycle(s.A->ext(), s.f.cocycle, rep.tk));
    EXPECT_TRUE(check_strong_witness(target, *rep.powered));
}

TEST(Chain, TrivialCompositePasses) {
    const auto s = setup("instance_b.json", "composite_b_trivial.json");
    const auto rep = descend_chain(*s.comp, *s.A, witness_over("witness_b_trivial.json", s.comp->KE()), 2);
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.tk, 1);
}

TEST(Chain, InvalidWitnessAbortsAtCheck) {
    const auto s = setup("instance_b.json", "composite_b_cbrt2.json");
    const auto rep = descend_chain(*s.comp, *s.A, witness_over("witness_b_cbrt2_invalid.json", s.comp->KE()), 2);
    EXPECT_FALSE(rep.passed());
    ASSERT_EQ(rep.stages.size(), 2u);
    EXPECT_EQ(rep.stages[1].name, "check");
    EXPECT_FALSE(rep.stages[1].passed);
}

TEST(Chain, NonCoprimeExponentFailsAtBezout) {
    const auto s = setup("instance_b.json", "composite_b_cbrt2.json");
    const auto rep = descend_chain(*s.comp, *s.A, witness_over("witness_b_cbrt2.json", s.comp->KE()), 3);
    EXPECT_FALSE(rep.passed());
    EXPECT_EQ(rep.stages.back().name, "bezout");
}

TEST(Chain, Sqrt5OverB3) {
    const auto s = setup("instance_b3.json", "composite_b3_sqrt5.json");
    const auto W = witness_over("witness_b3_sqrt5.json", s.comp->KE());
    const auto two = descend_chain(*s.comp, *s.A, W, 3);
    ASSERT_TRUE(two.passed());
    EXPECT_EQ(two.bezout.k, -1);
    EXPECT_EQ(two.tk, 4);
    ASSERT_TRUE(two.descended);
    EXPECT_EQ(two.descended->l, q(s.A->ext(), -5));
}
