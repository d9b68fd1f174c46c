#pragma once

// The abelian crossed product (K/F, z_sigma, u, b): relations, the 2-cocycle
// table, algebra arithmetic, and degeneracy / strong degeneracy witnesses.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abelcp/error.hpp"
#include "abelcp/field.hpp"
#include "abelcp/report.hpp"
#include "abelcp/twist.hpp"

namespace abelcp {

// ---------------------------------------------------------------------------
// Relations

/// Checks the compatibility relations between u and b.  The norm condition
/// N_ik(u_ik) = 1 is reported as an advisory check; the others decide `passed()`.
inline ValidationReport validate_relations(const GaloisExtension& K, const CocycleData& data) {
    const auto& G = K.group();
    const std::size_t r = G.rank();
    require(data.u.size() == r && data.b.size() == r, ErrorKind::MalformedInput, "cocycle data rank mismatch");
    for (std::size_t i = 0; i < r; ++i) {
        require(data.u[i].size() == r, ErrorKind::MalformedInput, "u must be r x r");
        require(data.b[i].size() == K.dim(), ErrorKind::MalformedInput, "b_i has wrong dimension");
        if (data.b[i].is_zero()) fail(ErrorKind::Domain, "b_" + std::to_string(i + 1) + " is zero");
        for (std::size_t j = 0; j < r; ++j) {
            require(data.u[i][j].size() == K.dim(), ErrorKind::MalformedInput, "u_ij has wrong dimension");
            if (data.u[i][j].is_zero())
                fail(ErrorKind::Domain, "u_" + std::to_string(i + 1) + std::to_string(j + 1) + " is zero");
        }
    }
    auto idx = [](std::size_t i, std::size_t j) { return std::to_string(i + 1) + std::to_string(j + 1); };

    ValidationReport report;
    {
        std::string detail;
        for (std::size_t i = 0; i < r && detail.empty(); ++i) {
            if (!(data.u[i][i] == K.one())) detail = "u_" + idx(i, i) + " != 1";
            for (std::size_t j = 0; j < r && detail.empty(); ++j)
                if (!(K.mul(data.u[i][j], data.u[j][i]) == K.one()))
                    detail = "u_" + idx(j, i) + " != u_" + idx(i, j) + "^-1";
        }
        report.add("u unit diagonal and antisymmetry", detail.empty(), detail);
    }
    {
        std::string detail;
        for (std::size_t k = 0; k < r && detail.empty(); ++k)
            for (std::size_t i = 0; i < r && detail.empty(); ++i) {
                const auto lhs = K.apply_generator(k, data.b[i]);
                const auto rhs = K.mul(K.norm_along(G.generator(i), data.u[k][i]), data.b[i]);
                if (!(lhs == rhs))
                    detail = "sigma_" + std::to_string(k + 1) + "(b_" + std::to_string(i + 1) + ") != N_" +
                             std::to_string(i + 1) + "(u_" + idx(k, i) + ") b_" + std::to_string(i + 1);
            }
        report.add("b conjugation", detail.empty(), detail);
    }
    {
        std::string detail;
        for (std::size_t i = 0; i < r && detail.empty(); ++i)
            for (std::size_t k = i + 1; k < r && detail.empty(); ++k) {
                const auto H = G.subgroup({G.generator(i), G.generator(k)});
                if (!(K.norm_over(H, data.u[i][k]) == K.one())) detail = "N_" + idx(i, k) + "(u_" + idx(i, k) + ") != 1";
            }
        report.add("u pair norm", detail.empty(), detail, /*advisory=*/true);
    }
    {
        std::string detail;
        for (std::size_t i = 0; i < r && detail.empty(); ++i)
            for (std::size_t j = 0; j < r && detail.empty(); ++j)
                for (std::size_t k = 0; k < r && detail.empty(); ++k) {
                    const auto lhs = K.mul(K.mul(K.apply_generator(i, data.u[j][k]), K.apply_generator(j, data.u[k][i])),
                                           K.apply_generator(k, data.u[i][j]));
                    const auto rhs = K.mul(K.mul(data.u[j][k], data.u[k][i]), data.u[i][j]);
                    if (!(lhs == rhs))
                        detail = "triple identity fails at (i,j,k) = (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
                }
        report.add("u triple identity", detail.empty(), detail);
    }
    return report;
}

/// Entrywise powers (u^t, b^t).
inline CocycleData power_cocycle(const GaloisExtension& K, const CocycleData& data, long t) {
    if (t <= 0) fail(ErrorKind::Domain, "degenerate power t = " + std::to_string(t));
    CocycleData out = data;
    for (auto& row : out.u)
        for (auto& e : row) e = K.pow(e, t);
    for (auto& e : out.b) e = K.pow(e, t);
    return out;
}

// ---------------------------------------------------------------------------
// Algebra

/// Finitely supported sum of c_g z^g, keyed by the group index of g.
struct AlgebraElement {
    std::uint64_t algebra = 0;
    std::map<std::size_t, FieldElement> terms;

    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
        return a.algebra == b.algebra && a.terms == b.terms;
    }
};

class CrossedProductAlgebra {
public:
    CrossedProductAlgebra(std::shared_ptr<const GaloisExtension> ext, CocycleData data)
        : ext_(std::move(ext)), data_(std::move(data)), id_(next_id()) {
        relations_ = validate_relations(*ext_, data_);
        if (const auto* bad = relations_.first_failure())
            fail(ErrorKind::ValidationFailure, bad->name + ": " + bad->detail);
        engine_ = std::make_shared<TwistEngine>(ext_, data_);
        build_table();
    }

    const GaloisExtension& ext() const { return *ext_; }
    std::shared_ptr<const GaloisExtension> ext_ptr() const { return ext_; }
    const GroupShape& group() const { return ext_->group(); }
    const CocycleData& cocycle() const { return data_; }
    const ValidationReport& relations() const { return relations_; }
    const TwistEngine& engine() const { return *engine_; }
    std::uint64_t id() const { return id_; }

    /// c(g, h) with z^g z^h = c(g, h) z^{g+h}.
    const FieldElement& cocycle_value(const GroupExponent& g, const GroupExponent& h) const {
        return table_[group().index(g) * group().size() + group().index(h)];
    }
    const FieldElement& cocycle_value(std::size_t gi, std::size_t hi) const { return table_[gi * group().size() + hi]; }

    /// Number of b-carries (per generator) in the reduction of z^g z^h.
    const Exponents& carry(std::size_t gi, std::size_t hi) const { return carries_[gi * group().size() + hi]; }

    /// Checks c(g,h) c(gh,k) = g(c(h,k)) c(g,hk) on every triple; returns the number of triples checked.
    std::size_t verify_cocycle_identity(std::string* failure = nullptr) const {
        const auto& G = group();
        const auto& K = *ext_;
        const std::size_t n = G.size();
        std::vector<GroupExponent> els = G.elements();
        std::vector<std::size_t> sum(n * n);
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t h = 0; h < n; ++h) sum[g * n + h] = G.index(G.add(els[g], els[h]));
        std::size_t count = 0;
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t h = 0; h < n; ++h)
                for (std::size_t k = 0; k < n; ++k) {
                    const auto lhs = K.mul(cocycle_value(g, h), cocycle_value(sum[g * n + h], k));
                    const auto rhs = K.mul(K.apply(els[g], cocycle_value(h, k)), cocycle_value(g, sum[h * n + k]));
                    ++count;
                    if (!(lhs == rhs)) {
                        if (failure)
                            *failure = "cocycle identity fails at " + to_string(els[g]) + "," + to_string(els[h]) + "," +
                                       to_string(els[k]);
                        return count;
                    }
                }
        if (failure) failure->clear();
        return count;
    }

    AlgebraElement zero() const { return AlgebraElement{id_, {}}; }
    AlgebraElement one() const { return scalar(ext_->one()); }
    AlgebraElement scalar(const FieldElement& a) const { return monomial(a, group().identity()); }
    AlgebraElement monomial(const FieldElement& coeff, const GroupExponent& m) const {
        group().check(m);
        AlgebraElement x{id_, {}};
        if (!coeff.is_zero()) x.terms.emplace(group().index(m), ext_->element(coeff.coords));
        return x;
    }
    AlgebraElement z(std::size_t i) const { return monomial(ext_->one(), group().generator(i)); }

    FieldElement coefficient(const AlgebraElement& x, const GroupExponent& m) const {
        check(x);
        auto it = x.terms.find(group().index(m));
        return it == x.terms.end() ? ext_->zero() : it->second;
    }

    AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) const {
        check(x), check(y);
        AlgebraElement out = x;
        for (const auto& [g, c] : y.terms) accumulate(out, g, c);
        return out;
    }

    AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y) const {
        check(x), check(y);
        AlgebraElement out = x;
        for (const auto& [g, c] : y.terms) accumulate(out, g, ext_->neg(c));
        return out;
    }

    /// (c_g z^g)(d_h z^h) = c_g g(d_h) c(g,h) z^{gh}, extended bilinearly.
    AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y) const {
        check(x), check(y);
        const auto& K = *ext_;
        const auto& G = group();
        AlgebraElement out{id_, {}};
        for (const auto& [g, cg] : x.terms) {
            const auto ge = G.element(g);
            for (const auto& [h, dh] : y.terms) {
                const auto term = K.mul(K.mul(cg, K.apply(ge, dh)), cocycle_value(g, h));
                accumulate(out, G.index(G.add(ge, G.element(h))), term);
            }
        }
        return out;
    }

    AlgebraElement pow(const AlgebraElement& x, long e) const {
        if (e < 0) fail(ErrorKind::Domain, "negative power of an algebra element");
        AlgebraElement out = one();
        for (long i = 0; i < e; ++i) out = mul(out, x);
        return out;
    }

    /// Central iff x commutes with every basis element of K and every z_i.
    bool is_central(const AlgebraElement& x) const {
        check(x);
        for (std::size_t k = 0; k < ext_->dim(); ++k) {
            const auto e = scalar(ext_->basis(k));
            if (!(mul(e, x) == mul(x, e))) return false;
        }
        for (std::size_t i = 0; i < group().rank(); ++i)
            if (!(mul(z(i), x) == mul(x, z(i)))) return false;
        return true;
    }

    /// u_{m,n} with z^m z^n = u_{m,n} z^n z^m.
    FieldElement commutator_u(const GroupExponent& m, const GroupExponent& n) const {
        const auto zm = monomial(ext_->one(), m);
        const auto zn = monomial(ext_->one(), n);
        const auto mn = mul(zm, zn);
        const auto nm = mul(zn, zm);
        const auto target = group().add(m, n);
        return ext_->div(coefficient(mn, target), coefficient(nm, target));
    }

    std::string format(const AlgebraElement& x) const {
        if (x.is_zero()) return "0";
        std::string s;
        for (const auto& [g, c] : x.terms) {
            if (!s.empty()) s += " + ";
            const auto ge = group().element(g);
            std::string coeff = ext_->format(c);
            std::string mono;
            for (std::size_t i = 0; i < ge.rank(); ++i) {
                if (ge[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += "z" + std::to_string(i + 1);
                if (ge[i] > 1) mono += "^" + std::to_string(ge[i]);
            }
            if (mono.empty()) {
                s += "(" + coeff + ")";
            } else {
                s += "(" + coeff + ")*" + mono;
            }
        }
        return s;
    }

private:
    static std::uint64_t next_id() {
        static std::atomic<std::uint64_t> counter{1};
        return counter++;
    }

    void check(const AlgebraElement& x) const {
        if (x.algebra != id_) fail(ErrorKind::Domain, "element belongs to a different algebra");
    }

    void accumulate(AlgebraElement& x, std::size_t g, const FieldElement& c) const {
        auto it = x.terms.find(g);
        if (it == x.terms.end()) {
            if (!c.is_zero()) x.terms.emplace(g, c);
            return;
        }
        it->second = ext_->add(it->second, c);
        if (it->second.is_zero()) x.terms.erase(it);
    }

    void build_table() {
        const auto& G = group();
        const std::size_t n = G.size();
        table_.resize(n * n);
        carries_.resize(n * n);
        for (std::size_t g = 0; g < n; ++g) {
            const auto ge = G.element(g);
            Exponents a(ge.m.begin(), ge.m.end());
            for (std::size_t h = 0; h < n; ++h) {
                const auto he = G.element(h);
                Exponents c(he.m.begin(), he.m.end());
                FieldElement lambda = engine_->twist(a, c);
                Exponents sum(a.size());
                for (std::size_t i = 0; i < a.size(); ++i) sum[i] = a[i] + c[i];
                auto [coeff, quotient] = engine_->carry(sum);
                table_[g * n + h] = ext_->mul(lambda, coeff);
                carries_[g * n + h] = std::move(quotient);
            }
        }
    }

    std::shared_ptr<const GaloisExtension> ext_;
    CocycleData data_;
    std::uint64_t id_;
    ValidationReport relations_;
    std::shared_ptr<const TwistEngine> engine_;
    std::vector<FieldElement> table_;
    std::vector<Exponents> carries_;
};

// ---------------------------------------------------------------------------
// Witnesses

/// u_{i,m} = s^m(x_i)/x_i * l/s_i(l) for every i, with s^m of prime order.
struct StrongDegeneracyWitness {
    GroupExponent m;
    FieldElement l;
    std::vector<FieldElement> x;

    friend bool operator==(const StrongDegeneracyWitness&, const StrongDegeneracyWitness&) = default;
};

/// <s^m, s^n> noncyclic and u_{m,n} = s^m(a)/a * s^n(b)/b.
struct DegeneracyPairWitness {
    GroupExponent m;
    GroupExponent n;
    FieldElement a;
    FieldElement b;

    friend bool operator==(const DegeneracyPairWitness&, const DegeneracyPairWitness&) = default;
};

inline long prime_order_of(const GroupShape& G, const GroupExponent& m) {
    G.check(m);
    const long q = G.order_of(m);
    if (!is_prime(q))
        fail(ErrorKind::Precondition, "sigma^" + to_string(m) + " has order " + std::to_string(q) + ", not a prime");
    return q;
}

inline bool check_strong_witness(const CrossedProductAlgebra& A, const StrongDegeneracyWitness& W) {
    const auto& K = A.ext();
    const auto& G = A.group();
    prime_order_of(G, W.m);
    if (W.x.size() != G.rank()) fail(ErrorKind::MalformedInput, "witness must carry one x_i per generator");
    if (W.l.is_zero()) return false;
    for (const auto& xi : W.x)
        if (xi.is_zero()) return false;
    for (std::size_t i = 0; i < G.rank(); ++i) {
        const auto lhs = A.commutator_u(G.generator(i), W.m);
        const auto rhs = K.mul(K.div(K.apply(W.m, W.x[i]), W.x[i]), K.div(W.l, K.apply_generator(i, W.l)));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

inline bool check_pair_witness(const CrossedProductAlgebra& A, const DegeneracyPairWitness& W) {
    const auto& K = A.ext();
    const auto& G = A.group();
    G.check(W.m), G.check(W.n);
    if (G.generates_cyclic(W.m, W.n)) return false;
    if (W.a.is_zero() || W.b.is_zero()) return false;
    const auto rhs = K.mul(K.div(K.apply(W.m, W.a), W.a), K.div(K.apply(W.n, W.b), W.b));
    return A.commutator_u(W.m, W.n) == rhs;
}

/// (e_i, m, l^-1, x_i) for the least i with <s_i, s^m> noncyclic.
inline DegeneracyPairWitness strong_to_pair_witness(const CrossedProductAlgebra& A, const StrongDegeneracyWitness& W) {
    const auto& G = A.group();
    if (!check_strong_witness(A, W)) fail(ErrorKind::InvalidWitness, "strong degeneracy witness does not check");
    for (std::size_t i = 0; i < G.rank(); ++i) {
        if (G.generates_cyclic(G.generator(i), W.m)) continue;
        DegeneracyPairWitness P{G.generator(i), W.m, A.ext().inv(W.l), W.x[i]};
        if (!check_pair_witness(A, P))
            fail(ErrorKind::InternalInconsistency, "derived pair witness fails its check");
        return P;
    }
    fail(ErrorKind::Precondition, "no generator spans a noncyclic subgroup with sigma^" + to_string(W.m) + " (G cyclic?)");
}

/// l z^m, after verifying that its q-th power is central and it is not.
inline AlgebraElement witness_to_central_element(const CrossedProductAlgebra& A, const StrongDegeneracyWitness& W) {
    if (!check_strong_witness(A, W)) fail(ErrorKind::InvalidWitness, "strong degeneracy witness does not check");
    const long q = prime_order_of(A.group(), W.m);
    auto y = A.monomial(W.l, W.m);
    if (!A.is_central(A.pow(y, q)) || A.is_central(y))
        fail(ErrorKind::InternalInconsistency, "witness image is not a noncentral q-power central element");
    return y;
}

/// Recovers (x_i) for a q-power central monomial l z^m through Hilbert 90:
/// s^m(x_i)/x_i = s_i(l) l^-1 u_{i,m}.
inline StrongDegeneracyWitness central_element_to_witness(const CrossedProductAlgebra& A, const FieldElement& l,
                                                          const GroupExponent& m) {
    const auto& K = A.ext();
    const auto& G = A.group();
    const long q = prime_order_of(G, m);
    if (l.is_zero()) fail(ErrorKind::Domain, "l = 0");
    if (!A.is_central(A.pow(A.monomial(l, m), q)))
        fail(ErrorKind::Precondition, "(l z^m)^q is not central");
    StrongDegeneracyWitness W{m, l, {}};
    for (std::size_t i = 0; i < G.rank(); ++i) {
        const auto c = K.mul(K.div(K.apply_generator(i, l), l), A.commutator_u(G.generator(i), m));
        auto h90 = K.hilbert90_solve(m, c);
        if (!(h90.norm == K.one()) || !h90.solution)
            fail(ErrorKind::InternalInconsistency, "norm condition fails for i = " + std::to_string(i + 1) +
                                                       " although (l z^m)^q is central");
        W.x.push_back(std::move(*h90.solution));
    }
    if (!check_strong_witness(A, W)) fail(ErrorKind::InternalInconsistency, "extracted witness fails its check");
    return W;
}

/// The basis, its negatives, and all products of two basis elements, deduplicated.
inline std::vector<FieldElement> default_candidates(const GaloisExtension& K) {
    std::vector<FieldElement> out;
    auto push = [&](FieldElement x) {
        if (x.is_zero()) return;
        for (const auto& y : out)
            if (y == x) return;
        out.push_back(std::move(x));
    };
    for (std::size_t i = 0; i < K.dim(); ++i) push(K.basis(i));
    for (std::size_t i = 0; i < K.dim(); ++i) push(K.neg(K.basis(i)));
    for (std::size_t i = 0; i < K.dim(); ++i)
        for (std::size_t j = i; j < K.dim(); ++j) push(K.mul(K.basis(i), K.basis(j)));
    return out;
}

inline constexpr const char* kExhaustionDisclaimer =
    "search budget exhausted without a witness; this is not a proof that no witness exists";

struct StrongSearchReport {
    std::optional<StrongDegeneracyWitness> witness;
    std::size_t exponents_scanned = 0;
    std::size_t candidates_considered = 0;
    std::size_t pairs_tested = 0;
};

/// Scans prime-order s^m in lexicographic order and candidate l in list order;
/// accepts the first pair with N_m(s_i(l) l^-1 u_{i,m}) = 1 for all i.
inline StrongSearchReport search_strong_degeneracy(const CrossedProductAlgebra& A,
                                                   const std::vector<FieldElement>& candidates) {
    const auto& K = A.ext();
    const auto& G = A.group();
    if (G.is_cyclic()) fail(ErrorKind::Precondition, "G must be noncyclic for degeneracy searches");
    StrongSearchReport report;
    report.candidates_considered = candidates.size();
    if (candidates.empty()) return report;
    for (std::size_t idx = 1; idx < G.size(); ++idx) {
        const auto m = G.element(idx);
        if (!is_prime(G.order_of(m))) continue;
        ++report.exponents_scanned;
        std::vector<FieldElement> u_im;
        for (std::size_t i = 0; i < G.rank(); ++i) u_im.push_back(A.commutator_u(G.generator(i), m));
        for (const auto& l : candidates) {
            if (l.is_zero()) continue;
            ++report.pairs_tested;
            const auto l_inv = K.inv(l);
            bool ok = true;
            for (std::size_t i = 0; i < G.rank() && ok; ++i) {
                const auto c = K.mul(K.mul(K.apply_generator(i, l), l_inv), u_im[i]);
                ok = K.norm_along(m, c) == K.one();
            }
            if (!ok) continue;
            StrongDegeneracyWitness W{m, l, {}};
            for (std::size_t i = 0; i < G.rank(); ++i) {
                const auto c = K.mul(K.mul(K.apply_generator(i, l), l_inv), u_im[i]);
                auto h90 = K.hilbert90_solve(m, c);
                if (!h90.solution) fail(ErrorKind::InternalInconsistency, "norm one but Hilbert 90 found no solution");
                W.x.push_back(std::move(*h90.solution));
            }
            if (!check_strong_witness(A, W)) fail(ErrorKind::InternalInconsistency, "search produced a failing witness");
            report.witness = std::move(W);
            return report;
        }
    }
    return report;
}

/// u_12 = s_1(a)/a * s_2(b)/b, the rank-2 membership form u_12 in I[G]K*.
inline bool rank2_igk_witness_check(const CrossedProductAlgebra& A, const FieldElement& a, const FieldElement& b) {
    const auto& G = A.group();
    const auto& K = A.ext();
    if (G.rank() != 2) fail(ErrorKind::Precondition, "rank-2 criterion needs r = 2");
    if (G.order(0) != G.order(1) || !is_prime(G.order(0)))
        fail(ErrorKind::Precondition, "rank-2 criterion needs G = C_p x C_p");
    if (a.is_zero() || b.is_zero()) return false;
    const auto rhs = K.mul(K.div(K.apply_generator(0, a), a), K.div(K.apply_generator(1, b), b));
    return A.cocycle().u[0][1] == rhs;
}

struct PairSearchReport {
    std::optional<DegeneracyPairWitness> witness;
    std::size_t pairs_tested = 0;
    bool used_rank2_criterion = false;
};

/// Budgeted search for a degeneracy pair witness.  On C_p x C_p it tests the
/// I[G]K* form over candidate pairs (a, b); otherwise it scans noncyclic
/// (m, n) with candidate a, b.
inline PairSearchReport search_pair_degeneracy(const CrossedProductAlgebra& A, const std::vector<FieldElement>& candidates,
                                               std::size_t max_tests) {
    const auto& G = A.group();
    if (G.is_cyclic()) fail(ErrorKind::Precondition, "G must be noncyclic for degeneracy searches");
    PairSearchReport report;
    const bool rank2 = G.rank() == 2 && G.order(0) == G.order(1) && is_prime(G.order(0));
    report.used_rank2_criterion = rank2;
    if (rank2) {
        for (const auto& a : candidates)
            for (const auto& b : candidates) {
                if (report.pairs_tested >= max_tests) return report;
                ++report.pairs_tested;
                if (rank2_igk_witness_check(A, a, b)) {
                    DegeneracyPairWitness W{G.generator(0), G.generator(1), a, b};
                    if (!check_pair_witness(A, W)) fail(ErrorKind::InternalInconsistency, "rank-2 witness fails pair check");
                    report.witness = W;
                    return report;
                }
            }
        return report;
    }
    for (std::size_t mi = 1; mi < G.size(); ++mi)
        for (std::size_t ni = mi + 1; ni < G.size(); ++ni) {
            const auto m = G.element(mi), n = G.element(ni);
            if (G.generates_cyclic(m, n)) continue;
            for (const auto& a : candidates)
                for (const auto& b : candidates) {
                    if (report.pairs_tested >= max_tests) return report;
                    ++report.pairs_tested;
                    DegeneracyPairWitness W{m, n, a, b};
                    if (check_pair_witness(A, W)) {
                        report.witness = W;
                        return report;
                    }
                }
        }
    return report;
}

// ---------------------------------------------------------------------------
// Isomorphisms fixing K

/// Cocycle of the presentation with generators w_i = a_i^-1 z_i, so that
/// z_i -> a_i w_i is an isomorphism onto it.
inline CocycleData rescaled_cocycle(const CrossedProductAlgebra& A, const std::vector<FieldElement>& a) {
    const auto& K = A.ext();
    const auto& G = A.group();
    require(a.size() == G.rank(), ErrorKind::MalformedInput, "need one rescaling factor per generator");
    std::vector<AlgebraElement> w;
    for (std::size_t i = 0; i < G.rank(); ++i) {
        if (a[i].is_zero()) fail(ErrorKind::Domain, "rescaling factor is zero");
        w.push_back(A.monomial(K.inv(a[i]), G.generator(i)));
    }
    CocycleData out;
    out.u.assign(G.rank(), std::vector<FieldElement>(G.rank()));
    for (std::size_t i = 0; i < G.rank(); ++i) {
        for (std::size_t j = 0; j < G.rank(); ++j) {
            const auto ij = A.mul(w[i], w[j]);
            const auto ji = A.mul(w[j], w[i]);
            const auto at = G.add(G.generator(i), G.generator(j));
            out.u[i][j] = K.div(A.coefficient(ij, at), A.coefficient(ji, at));
        }
        out.b.push_back(A.coefficient(A.pow(w[i], G.order(i)), G.identity()));
    }
    return out;
}

/// Carries a witness for A across phi: A -> B, phi|K = id, phi(z_i) = a_i w_i.
/// The target's central element is l a_m w^m with phi(z^m) = a_m w^m.
inline StrongDegeneracyWitness transport_witness(const CrossedProductAlgebra& source, const CrossedProductAlgebra& target,
                                                 const StrongDegeneracyWitness& W, const std::vector<FieldElement>& a) {
    const auto& K = target.ext();
    const auto& G = target.group();
    if (!(source.group() == G) || source.ext().structure_constants() != K.structure_constants())
        fail(ErrorKind::InvalidIsomorphism, "source and target must share the field presentation");
    if (a.size() != G.rank()) fail(ErrorKind::InvalidIsomorphism, "need one image factor per generator");
    std::vector<AlgebraElement> img;
    for (std::size_t i = 0; i < G.rank(); ++i) {
        if (a[i].is_zero()) fail(ErrorKind::InvalidIsomorphism, "image factor a_" + std::to_string(i + 1) + " is zero");
        img.push_back(target.monomial(a[i], G.generator(i)));
    }
    const auto& u = source.cocycle().u;
    const auto& b = source.cocycle().b;
    for (std::size_t i = 0; i < G.rank(); ++i) {
        for (std::size_t j = 0; j < G.rank(); ++j) {
            const auto lhs = target.mul(img[i], img[j]);
            const auto rhs = target.mul(target.scalar(u[i][j]), target.mul(img[j], img[i]));
            if (!(lhs == rhs))
                fail(ErrorKind::InvalidIsomorphism, "images violate z_" + std::to_string(i + 1) + " z_" +
                                                        std::to_string(j + 1) + " = u_ij z_j z_i");
        }
        if (!(target.pow(img[i], G.order(i)) == target.scalar(b[i])))
            fail(ErrorKind::InvalidIsomorphism, "images violate z_" + std::to_string(i + 1) + "^n = b_" + std::to_string(i + 1));
    }
    if (!check_strong_witness(source, W)) fail(ErrorKind::InvalidWitness, "source witness does not check");

    AlgebraElement phi_zm = target.one();
    for (std::size_t i = 0; i < G.rank(); ++i) phi_zm = target.mul(phi_zm, target.pow(img[i], W.m[i]));
    const auto a_m = target.coefficient(phi_zm, W.m);
    const auto l = K.mul(W.l, a_m);

    StrongDegeneracyWitness same{W.m, l, W.x};
    if (check_strong_witness(target, same)) return same;
    return central_element_to_witness(target, l, W.m);
}

}  // namespace abelcp
