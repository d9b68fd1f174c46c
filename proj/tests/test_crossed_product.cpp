#include <gtest/gtest.h>

#include <random>

#include "abelcp/crossed_product.hpp"
#include "common.hpp"

using namespace abelcp;
using namespace abelcp::testing;

namespace {

// Reduces the word z^g z^h one relation at a time: adjacent swaps z_k z_j = u_kj z_j z_k
// and z_i^{n_i} = b_i, with each scalar pushed to the front through the generators to its left.
FieldElement word_oracle(const GaloisExtension& K, const CocycleData& d, const GroupExponent& g, const GroupExponent& h) {
    const auto& G = K.group();
    std::vector<std::size_t> word;
    for (const auto* e : {&g, &h})
        for (std::size_t i = 0; i < G.rank(); ++i)
            for (int c = 0; c < (*e)[i]; ++c) word.push_back(i);
    auto push_front = [&](FieldElement s, std::size_t upto) {
        for (std::size_t p = upto; p-- > 0;) s = K.apply_generator(word[p], s);
        return s;
    };
    FieldElement coeff = K.one();
    for (bool swapped = true; swapped;) {
        swapped = false;
        for (std::size_t p = 0; p + 1 < word.size(); ++p) {
            if (word[p] <= word[p + 1]) continue;
            coeff = K.mul(coeff, push_front(d.u[word[p]][word[p + 1]], p));
            std::swap(word[p], word[p + 1]);
            swapped = true;
            break;
        }
    }
    for (bool collapsed = true; collapsed;) {
        collapsed = false;
        for (std::size_t i = 0; i < G.rank() && !collapsed; ++i) {
            std::size_t start = 0, count = 0;
            while (start < word.size() && word[start] < i) ++start;
            while (start + count < word.size() && word[start + count] == i) ++count;
            if (count < static_cast<std::size_t>(G.order(i))) continue;
            const std::size_t at = start + count - G.order(i);
            coeff = K.mul(coeff, push_front(d.b[i], at));
            word.erase(word.begin() + static_cast<long>(at), word.begin() + static_cast<long>(start + count));
            collapsed = true;
        }
    }
    return coeff;
}

class AlgebraB : public ::testing::Test {
protected:
    io::Fixture f = fixture("instance_b.json");
    std::shared_ptr<const CrossedProductAlgebra> A = algebra(f);
    const GaloisExtension& K = A->ext();
    StrongDegeneracyWitness W = f.witnesses.at(0);
};

std::shared_ptr<const CrossedProductAlgebra> trivial_b() { return algebra(fixture("instance_b_trivial.json")); }

}  // namespace

TEST_F(AlgebraB, RelationsPass) {
    const auto rep = validate_relations(K, f.cocycle);
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.checks.size(), 4u);
    EXPECT_TRUE(rep.find("u pair norm")->advisory);
}

TEST(Relations, TrivialCocyclePasses) {
    const auto f = fixture("instance_b_trivial.json");
    EXPECT_TRUE(validate_relations(*f.field, f.cocycle).passed());
}

// u_12 = sqrt2: N_1(u_21) = 1/(sqrt2 * -sqrt2) = -1/2 while b_1 is fixed.
TEST_F(AlgebraB, NonNormOneTwistFails) {
    auto d = f.cocycle;
    d.u[0][1] = B::r2(K);
    d.u[1][0] = K.inv(B::r2(K));
    const auto rep = validate_relations(K, d);
    EXPECT_FALSE(rep.passed());
    EXPECT_FALSE(rep.find("b conjugation")->passed);
    EXPECT_FALSE(rep.find("u pair norm")->passed);
    try {
        CrossedProductAlgebra bad(f.field, d);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ValidationFailure);
    }
}

TEST_F(AlgebraB, ZeroEntryIsDomainError) {
    auto d = f.cocycle;
    d.b[1] = K.zero();
    try {
        validate_relations(K, d);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Domain);
    }
}

TEST_F(AlgebraB, CocycleTableValues) {
    EXPECT_EQ(A->cocycle_value({1, 0}, {1, 0}), q(K, 3));
    EXPECT_EQ(A->cocycle_value({0, 1}, {1, 0}), q(K, -1));
    EXPECT_EQ(A->cocycle_value({1, 0}, {0, 1}), K.one());
    for (const auto& g : A->group().elements()) EXPECT_EQ(A->cocycle_value(A->group().identity(), g), K.one());
}

class CocycleFixtures : public ::testing::TestWithParam<const char*> {};

TEST_P(CocycleFixtures, TableMatchesWordRewritingOracle) {
    const auto f = fixture(GetParam());
    const auto A = algebra(f);
    for (const auto& g : A->group().elements())
        for (const auto& h : A->group().elements())
            ASSERT_EQ(A->cocycle_value(g, h), word_oracle(A->ext(), f.cocycle, g, h)) << to_string(g) << to_string(h);
}

TEST_P(CocycleFixtures, CocycleIdentityOnAllTriples) {
    const auto A = algebra(fixture(GetParam()));
    std::string failure;
    const auto n = A->verify_cocycle_identity(&failure);
    EXPECT_EQ(failure, "");
    EXPECT_EQ(n, A->group().size() * A->group().size() * A->group().size());
}

TEST_P(CocycleFixtures, MultiplicationIsAssociativeAndDistributive) {
    const auto A = algebra(fixture(GetParam()));
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const auto x = random_algebra_element(*A, rng), y = random_algebra_element(*A, rng),
                   z = random_algebra_element(*A, rng);
        ASSERT_EQ(A->mul(A->mul(x, y), z), A->mul(x, A->mul(y, z)));
        if (trial % 4 == 0) {
            ASSERT_EQ(A->mul(x, A->add(y, z)), A->add(A->mul(x, y), A->mul(x, z)));
        }
    }
}

TEST_P(CocycleFixtures, CommutatorAntisymmetry) {
    const auto A = algebra(fixture(GetParam()));
    for (const auto& m : A->group().elements())
        for (const auto& n : A->group().elements())
            ASSERT_EQ(A->ext().mul(A->commutator_u(m, n), A->commutator_u(n, m)), A->ext().one());
}

TEST_P(CocycleFixtures, GeneratorEntriesRecoverTwistingData) {
    const auto f = fixture(GetParam());
    const auto A = algebra(f);
    const auto& G = A->group();
    for (std::size_t i = 0; i < G.rank(); ++i)
        for (std::size_t j = 0; j < G.rank(); ++j)
            EXPECT_EQ(A->commutator_u(G.generator(i), G.generator(j)), f.cocycle.u[i][j]);
    for (std::size_t i = 0; i < G.rank(); ++i)
        EXPECT_EQ(A->pow(A->z(i), G.order(i)), A->scalar(f.cocycle.b[i]));
}

TEST_P(CocycleFixtures, PowerCocycleTableIsEntrywisePower) {
    const auto f = fixture(GetParam());
    const auto A = algebra(f);
    for (long t : {2L, 3L}) {
        const CrossedProductAlgebra P(f.field, power_cocycle(A->ext(), f.cocycle, t));
        for (std::size_t g = 0; g < A->group().size(); ++g)
            for (std::size_t h = 0; h < A->group().size(); ++h)
                ASSERT_EQ(P.cocycle_value(g, h), A->ext().pow(A->cocycle_value(g, h), t));
    }
}

TEST_P(CocycleFixtures, StoredWitnessesRoundTrip) {
    const auto f = fixture(GetParam());
    const auto A = algebra(f);
    for (const auto& W : f.witnesses) {
        ASSERT_TRUE(check_strong_witness(*A, W));
        const auto y = witness_to_central_element(*A, W);
        const long q = A->group().order_of(W.m);
        EXPECT_TRUE(A->is_central(A->pow(y, q)));
        EXPECT_FALSE(A->is_central(y));
        EXPECT_TRUE(check_strong_witness(*A, central_element_to_witness(*A, W.l, W.m)));
        EXPECT_TRUE(check_pair_witness(*A, strong_to_pair_witness(*A, W)));
    }
}

// Every prime-order monomial l z^m with central q-th power yields a passing witness.
TEST_P(CocycleFixtures, CentralMonomialsYieldWitnesses) {
    const auto A = algebra(fixture(GetParam()));
    const auto cands = default_candidates(A->ext());
    std::size_t hits = 0;
    for (const auto& m : A->group().elements()) {
        const long q = A->group().order_of(m);
        if (!is_prime(q)) continue;
        for (const auto& l : cands) {
            const auto y = A->monomial(l, m);
            if (!A->is_central(A->pow(y, q))) continue;
            ++hits;
            EXPECT_FALSE(A->is_central(y));
            EXPECT_TRUE(check_strong_witness(*A, central_element_to_witness(*A, l, m)));
        }
    }
    EXPECT_GT(hits, 0u);
}


TEST_F(AlgebraB, MultiplicationExamples) {
    EXPECT_EQ(A->mul(A->z(0), A->scalar(B::r2(K))), A->monomial(K.neg(B::r2(K)), {1, 0}));
    std::mt19937_64 rng(3);
    const auto y = random_algebra_element(*A, rng);
    EXPECT_EQ(A->mul(A->one(), y), y);
    EXPECT_EQ(A->mul(y, A->one()), y);
    const auto w = A->monomial(B::r2(K), {1, 1});
    EXPECT_EQ(A->pow(w, 2), A->scalar(q(K, 30)));
    // (sqrt2 z_1 z_2)^2 = 2 b_1 b_2 after u_21 = -1 and sigma_1 sigma_2(sqrt2) = -sqrt2.
    EXPECT_EQ(A->pow(w, 2), A->scalar(K.scale(2, K.mul(f.cocycle.b[0], f.cocycle.b[1]))));
}

TEST_F(AlgebraB, MixedAlgebrasAreRejected) {
    const auto other = algebra(f);
    try {
        A->mul(A->z(0), other->z(0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Domain);
    }
}

TEST_F(AlgebraB, CommutatorExamples) {
    EXPECT_EQ(A->commutator_u({1, 0}, {1, 0}), K.one());
    EXPECT_EQ(A->commutator_u({1, 0}, {1, 1}), q(K, -1));
    EXPECT_EQ(A->commutator_u({1, 1}, {0, 0}), K.one());
}

TEST_F(AlgebraB, Centrality) {
    EXPECT_TRUE(A->is_central(A->scalar(q(K, 7, 3))));
    EXPECT_FALSE(A->is_central(A->z(0)));
    EXPECT_TRUE(A->is_central(A->scalar(q(K, 30))));
    EXPECT_FALSE(A->is_central(A->scalar(B::r2(K))));
}

TEST_F(AlgebraB, StrongWitnessChecks) {
    EXPECT_TRUE(check_strong_witness(*A, W));
    EXPECT_FALSE(check_strong_witness(*A, {{1, 1}, K.one(), {K.one(), K.one()}}));
    const auto T = trivial_b();
    for (const auto& m : T->group().elements()) {
        if (m.is_zero()) continue;
        EXPECT_TRUE(check_strong_witness(*T, {m, K.one(), {K.one(), K.one()}}));
    }
}

TEST(Witness, CompositeOrderIsPrecondition) {
    try {
        prime_order_of(GroupShape({4, 2}), {1, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Precondition);
    }
    EXPECT_EQ(prime_order_of(GroupShape({4, 2}), {2, 1}), 2);
}

TEST_F(AlgebraB, PairWitnessChecks) {
    EXPECT_TRUE(check_pair_witness(*A, {{1, 0}, {0, 1}, B::r2(K), K.one()}));
    EXPECT_FALSE(check_pair_witness(*A, {{1, 0}, {1, 0}, B::r2(K), K.one()}));
    EXPECT_FALSE(check_pair_witness(*A, {{1, 0}, {0, 1}, K.one(), K.one()}));
    const auto T = trivial_b();
    EXPECT_TRUE(check_pair_witness(*T, {{1, 0}, {0, 1}, K.one(), K.one()}));
}

TEST_F(AlgebraB, StrongToPair) {
    const auto P = strong_to_pair_witness(*A, W);
    const DegeneracyPairWitness expected{{1, 0}, {1, 1}, K.inv(B::r2(K)), K.one()};
    EXPECT_EQ(P, expected);
    EXPECT_TRUE(check_pair_witness(*A, P));
    const auto T = trivial_b();
    const StrongDegeneracyWitness tw{{1, 0}, K.one(), {K.one(), K.one()}};
    const auto TP = strong_to_pair_witness(*T, tw);
    EXPECT_EQ(TP.a, K.one());
    EXPECT_EQ(TP.b, K.one());
    EXPECT_TRUE(check_pair_witness(*T, TP));
}

TEST(Witness, StrongToPairNeedsNoncyclicSpan) {
    const auto f = fixture("rank1.json");
    const auto A = algebra(f);
    const auto& K = A->ext();
    // u = (1), b = 3: z_1^2 = 3 is central, so (m = e_1, l = 1) is a strong witness.
    const StrongDegeneracyWitness W{{1}, K.one(), {K.one()}};
    ASSERT_TRUE(check_strong_witness(*A, W));
    try {
        strong_to_pair_witness(*A, W);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Precondition);
    }
}

TEST_F(AlgebraB, WitnessToCentralElement) {
    const auto y = witness_to_central_element(*A, W);
    EXPECT_EQ(y, A->monomial(B::r2(K), {1, 1}));
    EXPECT_EQ(A->pow(y, 2), A->scalar(q(K, 30)));
    const auto T = trivial_b();
    const auto ty = witness_to_central_element(*T, {{0, 1}, K.one(), {K.one(), K.one()}});
    EXPECT_TRUE(T->is_central(T->pow(ty, 2)));
    try {
        witness_to_central_element(*A, {{1, 1}, K.one(), {K.one(), K.one()}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidWitness);
    }
}

TEST_F(AlgebraB, CentralElementToWitness) {
    const auto X = central_element_to_witness(*A, B::r2(K), {1, 1});
    EXPECT_TRUE(check_strong_witness(*A, X));
    EXPECT_EQ(K.apply({1, 1}, X.x[0]), X.x[0]);
    EXPECT_EQ(K.div(K.apply({1, 1}, X.x[1]), X.x[1]), q(K, -1));
    const auto T = trivial_b();
    const auto TX = central_element_to_witness(*T, K.one(), {1, 1});
    EXPECT_EQ(TX.x, (std::vector<FieldElement>{K.one(), K.one()}));
}

TEST(Witness, NonCentralPowerIsPrecondition) {
    const auto f = fixture("instance_b3.json");
    const auto A = algebra(f);
    // (z_2)^3 = b_2 = 2 alpha^3 is not in F.
    try {
        central_element_to_witness(*A, A->ext().one(), {0, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Precondition);
    }
}

// Scan order is (lexicographic m, candidate index).  For INSTANCE-B, m = (0,1) comes first and
// z_2^2 = b_2 = 5 is central, so l = 1 is already a hit there.
TEST_F(AlgebraB, SearchFollowsScanOrder) {
    const std::vector<FieldElement> cands{K.one(), B::r2(K), B::r3(K), B::r6(K)};
    const auto rep = search_strong_degeneracy(*A, cands);
    ASSERT_TRUE(rep.witness);
    EXPECT_EQ(rep.witness->m, (GroupExponent{0, 1}));
    EXPECT_EQ(rep.witness->l, K.one());
    EXPECT_TRUE(check_strong_witness(*A, *rep.witness));
    EXPECT_EQ(rep.pairs_tested, 1u);

    const auto only_one = search_strong_degeneracy(*A, {K.one()});
    ASSERT_TRUE(only_one.witness);
    EXPECT_TRUE(check_strong_witness(*A, *only_one.witness));

    const auto empty = search_strong_degeneracy(*A, {});
    EXPECT_FALSE(empty.witness);
}

TEST(Search, TrivialCocycleGivesTrivialWitness) {
    const auto T = trivial_b();
    const auto& K = T->ext();
    const auto rep = search_strong_degeneracy(*T, {K.one()});
    ASSERT_TRUE(rep.witness);
    EXPECT_EQ(rep.witness->l, K.one());
    EXPECT_EQ(rep.witness->x, (std::vector<FieldElement>{K.one(), K.one()}));
}

// Candidates that hit no prime-order m are collected by a direct norm test, then fed to the search.
TEST_P(CocycleFixtures, SearchExhaustsOnMissingCandidates) {
    const auto A = algebra(fixture(GetParam()));
    const auto& K = A->ext();
    const auto& G = A->group();
    auto hits = [&](const FieldElement& c) {
        for (const auto& m : G.elements()) {
            if (m.is_zero() || !is_prime(G.order_of(m))) continue;
            bool ok = true;
            for (std::size_t i = 0; i < G.rank() && ok; ++i) {
                const auto ci = K.mul(K.div(K.apply_generator(i, c), c), A->commutator_u(G.generator(i), m));
                ok = K.norm_along(m, ci) == K.one();
            }
            if (ok) return true;
        }
        return false;
    };
    std::mt19937_64 rng(5);
    std::vector<FieldElement> misses;
    for (int tries = 0; tries < 200 && misses.size() < 3; ++tries) {
        auto c = K.random_element(rng);
        if (!c.is_zero() && !hits(c)) misses.push_back(std::move(c));
    }
    if (misses.empty()) GTEST_SKIP() << "every sampled candidate yields a witness";
    const auto rep = search_strong_degeneracy(*A, misses);
    EXPECT_FALSE(rep.witness);
    EXPECT_EQ(rep.pairs_tested, misses.size() * rep.exponents_scanned);
    std::vector<FieldElement> with_hit = misses;
    with_hit.push_back(K.one());
    if (hits(K.one())) {
        EXPECT_TRUE(search_strong_degeneracy(*A, with_hit).witness);
    }
}

TEST_F(AlgebraB, PowerCocycleExamples) {
    EXPECT_EQ(power_cocycle(K, f.cocycle, 1), f.cocycle);
    const auto sq = power_cocycle(K, f.cocycle, 2);
    for (const auto& row : sq.u)
        for (const auto& e : row) EXPECT_EQ(e, K.one());
    EXPECT_EQ(sq.b, (std::vector<FieldElement>{q(K, 9), q(K, 25)}));
    const auto cu = power_cocycle(K, f.cocycle, 3);
    EXPECT_EQ(cu.u, f.cocycle.u);
    EXPECT_EQ(cu.b, (std::vector<FieldElement>{q(K, 27), q(K, 125)}));
    try {
        power_cocycle(K, f.cocycle, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Domain);
    }
}

TEST_F(AlgebraB, TransportThroughIdentity) {
    EXPECT_EQ(transport_witness(*A, *A, W, {K.one(), K.one()}), W);
}

// w_1 = z_1/sqrt3: w_1 w_2 = -w_2 w_1 picks up sigma_2(sqrt3) = -sqrt3, so u' = 1, and w_1^2 = 3/3 = 1.
TEST_F(AlgebraB, TransportThroughRescaling) {
    const std::vector<FieldElement> a{B::r3(K), K.one()};
    const auto target_data = rescaled_cocycle(*A, a);
    EXPECT_EQ(target_data.u[0][1], K.one());
    EXPECT_EQ(target_data.b, (std::vector<FieldElement>{K.one(), q(K, 5)}));
    const CrossedProductAlgebra target(f.field, target_data);
    const auto T = transport_witness(*A, target, W, a);
    EXPECT_TRUE(check_strong_witness(target, T));
    EXPECT_EQ(T.l, K.mul(W.l, B::r3(K)));
}

TEST(Transport, TrivialCocycleWithRescaling) {
    const auto T = trivial_b();
    const auto& K = T->ext();
    const std::vector<FieldElement> a{K.basis(1), K.basis(3)};
    const CrossedProductAlgebra target(T->ext_ptr(), rescaled_cocycle(*T, a));
    const StrongDegeneracyWitness W{{1, 1}, K.one(), {K.one(), K.one()}};
    EXPECT_TRUE(check_strong_witness(target, transport_witness(*T, target, W, a)));
}

TEST_F(AlgebraB, TransportRejectsNonIsomorphism) {
    try {
        transport_witness(*A, *A, W, {B::r3(K), K.one()});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidIsomorphism);
    }
}

TEST_F(AlgebraB, Rank2Criterion) {
    EXPECT_TRUE(rank2_igk_witness_check(*A, B::r2(K), K.one()));
    EXPECT_FALSE(rank2_igk_witness_check(*A, K.one(), K.one()));
    EXPECT_TRUE(rank2_igk_witness_check(*trivial_b(), K.one(), K.one()));
    const auto R1 = algebra(fixture("rank1.json"));
    try {
        rank2_igk_witness_check(*R1, R1->ext().one(), R1->ext().one());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Precondition);
    }
}

TEST_F(AlgebraB, PairSearchUsesRank2Criterion) {
    const auto rep = search_pair_degeneracy(*A, default_candidates(K), 1000);
    EXPECT_TRUE(rep.used_rank2_criterion);
    ASSERT_TRUE(rep.witness);
    EXPECT_TRUE(check_pair_witness(*A, *rep.witness));
    EXPECT_FALSE(search_pair_degeneracy(*A, default_candidates(K), 0).witness);
}

TEST_F(AlgebraB, DefaultCandidatesAreDistinctAndNonzero) {
    const auto c = default_candidates(K);
    EXPECT_EQ(c.front(), K.one());
    for (std::size_t i = 0; i < c.size(); ++i) {
        EXPECT_FALSE(c[i].is_zero());
        for (std::size_t j = i + 1; j < c.size(); ++j) EXPECT_FALSE(c[i] == c[j]);
    }
}

INSTANTIATE_TEST_SUITE_P(Fixtures, CocycleFixtures,
                         ::testing::Values("instance_b.json", "instance_b3.json", "instance_b_trivial.json"));
