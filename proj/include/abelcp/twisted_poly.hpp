#pragma once

// K[s; sigma; u], its reduction into the generic crossed product A_Delta with
// central indeterminates X_i = b_i^-1 s_i^{n_i}, and monomial p-power centrality.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "abelcp/crossed_product.hpp"
#include "abelcp/error.hpp"
#include "abelcp/field.hpp"
#include "abelcp/twist.hpp"

namespace abelcp {

struct TwistedPolynomial {
    std::uint64_t ring = 0;
    std::map<Exponents, FieldElement> terms;

    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const TwistedPolynomial&, const TwistedPolynomial&) = default;
};

/// Key of a reduced term alpha z^g X^w: the group exponent g and the Laurent exponent w.
using ReducedKey = std::pair<GroupExponent, Exponents>;

struct ReducedElement {
    std::uint64_t ring = 0;
    std::map<ReducedKey, FieldElement> terms;

    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const ReducedElement&, const ReducedElement&) = default;
};

struct Monomial {
    FieldElement coeff;
    Exponents exponent;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Right-to-left lexicographic order: the last coordinate is compared first.
inline bool rtl_less(const Exponents& a, const Exponents& b) {
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

class TwistedRing {
public:
    explicit TwistedRing(std::shared_ptr<const CrossedProductAlgebra> alg) : alg_(std::move(alg)), id_(next_id()) {}

    const CrossedProductAlgebra& algebra() const { return *alg_; }
    std::shared_ptr<const CrossedProductAlgebra> algebra_ptr() const { return alg_; }
    const GaloisExtension& ext() const { return alg_->ext(); }
    std::size_t rank() const { return alg_->group().rank(); }
    std::uint64_t id() const { return id_; }

    TwistedPolynomial zero() const { return TwistedPolynomial{id_, {}}; }
    TwistedPolynomial one() const { return monomial(ext().one(), Exponents(rank(), 0)); }

    TwistedPolynomial monomial(const FieldElement& coeff, const Exponents& e) const {
        require(e.size() == rank(), ErrorKind::MalformedInput, "exponent rank mismatch");
        for (long x : e) require(x >= 0, ErrorKind::Domain, "negative exponent in K[s; sigma; u]");
        TwistedPolynomial t{id_, {}};
        if (!coeff.is_zero()) t.terms.emplace(e, ext().element(coeff.coords));
        return t;
    }

    TwistedPolynomial s(std::size_t i) const {
        Exponents e(rank(), 0);
        e[i] = 1;
        return monomial(ext().one(), e);
    }

    TwistedPolynomial add(const TwistedPolynomial& x, const TwistedPolynomial& y) const {
        check(x), check(y);
        TwistedPolynomial out = x;
        for (const auto& [e, c] : y.terms) accumulate(out.terms, e, c);
        return out;
    }

    TwistedPolynomial sub(const TwistedPolynomial& x, const TwistedPolynomial& y) const {
        check(x), check(y);
        TwistedPolynomial out = x;
        for (const auto& [e, c] : y.terms) accumulate(out.terms, e, ext().neg(c));
        return out;
    }

    /// (a s^A)(b s^B) = a sigma^A(b) lambda(A, B) s^{A+B}; no n_i-carries.
    TwistedPolynomial mul(const TwistedPolynomial& x, const TwistedPolynomial& y) const {
        check(x), check(y);
        const auto& K = ext();
        const auto& G = K.group();
        TwistedPolynomial out{id_, {}};
        for (const auto& [a, ca] : x.terms) {
            const auto ga = G.reduce(a);
            for (const auto& [b, cb] : y.terms) {
                const auto coeff = K.mul(K.mul(ca, K.apply(ga, cb)), alg_->engine().twist(a, b));
                Exponents e(a.size());
                for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] + b[i];
                accumulate(out.terms, e, coeff);
            }
        }
        return out;
    }

    TwistedPolynomial pow(const TwistedPolynomial& x, long e) const {
        if (e < 0) fail(ErrorKind::Domain, "negative power of a twisted polynomial");
        TwistedPolynomial out = one();
        for (long i = 0; i < e; ++i) out = mul(out, x);
        return out;
    }

    /// The support-minimal monomial t^v under right-to-left lexicographic order.
    Monomial leading_monomial(const TwistedPolynomial& t) const {
        check(t);
        if (t.is_zero()) fail(ErrorKind::Domain, "leading monomial of the zero polynomial");
        auto best = t.terms.begin();
        for (auto it = t.terms.begin(); it != t.terms.end(); ++it)
            if (rtl_less(it->first, best->first)) best = it;
        return {best->second, best->first};
    }

    TwistedPolynomial as_polynomial(const Monomial& m) const { return monomial(m.coeff, m.exponent); }

    /// (t^v)^q = (t^q)^v, both sides evaluated exactly.
    bool leading_monomial_power_property(const TwistedPolynomial& t, long q) const {
        const auto lhs = pow(as_polynomial(leading_monomial(t)), q);
        const auto rhs = as_polynomial(leading_monomial(pow(t, q)));
        return lhs == rhs;
    }

    // -- the generic crossed product A_Delta ------------------------------

    ReducedElement reduced_zero() const { return ReducedElement{id_, {}}; }

    ReducedElement reduced_monomial(const FieldElement& coeff, const GroupExponent& g, const Exponents& w) const {
        alg_->group().check(g);
        require(w.size() == rank(), ErrorKind::MalformedInput, "central exponent rank mismatch");
        ReducedElement x{id_, {}};
        if (!coeff.is_zero()) x.terms.emplace(ReducedKey{g, w}, ext().element(coeff.coords));
        return x;
    }

    /// Substitutes b_i X_i for every s_i^{n_i}.
    ReducedElement reduce(const TwistedPolynomial& t) const {
        check(t);
        const auto& K = ext();
        ReducedElement out{id_, {}};
        for (const auto& [e, c] : t.terms) {
            Exponents rem = e;
            auto [coeff, quotient] = alg_->engine().carry(rem);
            GroupExponent g(std::vector<int>(rem.begin(), rem.end()));
            accumulate(out.terms, ReducedKey{std::move(g), std::move(quotient)}, K.mul(c, coeff));
        }
        return out;
    }

    ReducedElement reduced_add(const ReducedElement& x, const ReducedElement& y) const {
        check(x), check(y);
        ReducedElement out = x;
        for (const auto& [k, c] : y.terms) accumulate(out.terms, k, c);
        return out;
    }

    /// (alpha z^g X^w)(beta z^h X^w') = alpha sigma^g(beta) c(g,h) z^{g+h} X^{w+w'+carry(g,h)}.
    ReducedElement reduced_mul(const ReducedElement& x, const ReducedElement& y) const {
        check(x), check(y);
        const auto& K = ext();
        const auto& G = alg_->group();
        ReducedElement out{id_, {}};
        for (const auto& [kx, cx] : x.terms) {
            const std::size_t gi = G.index(kx.first);
            for (const auto& [ky, cy] : y.terms) {
                const std::size_t hi = G.index(ky.first);
                const auto coeff = K.mul(K.mul(cx, K.apply(kx.first, cy)), alg_->cocycle_value(gi, hi));
                const auto& carry = alg_->carry(gi, hi);
                Exponents w(rank());
                for (std::size_t i = 0; i < rank(); ++i) w[i] = kx.second[i] + ky.second[i] + carry[i];
                accumulate(out.terms, ReducedKey{G.add(kx.first, ky.first), std::move(w)}, coeff);
            }
        }
        return out;
    }

    ReducedElement reduced_pow(const ReducedElement& x, long e) const {
        if (e < 0) fail(ErrorKind::Domain, "negative power of a reduced element");
        ReducedElement out = reduced_monomial(ext().one(), alg_->group().identity(), Exponents(rank(), 0));
        for (long i = 0; i < e; ++i) out = reduced_mul(out, x);
        return out;
    }

    /// Membership in F[X^{+-1}]: only trivial group exponents, coefficients in F.
    bool in_center_representation(const ReducedElement& x) const {
        check(x);
        for (const auto& [k, c] : x.terms)
            if (!k.first.is_zero() || !ext().in_base(c)) return false;
        return true;
    }

    /// Commutes with every basis element of K and every z_i, computed by multiplication.
    bool is_central(const ReducedElement& x) const {
        check(x);
        const auto& G = alg_->group();
        const Exponents w0(rank(), 0);
        for (std::size_t k = 0; k < ext().dim(); ++k) {
            const auto e = reduced_monomial(ext().basis(k), G.identity(), w0);
            if (!(reduced_mul(e, x) == reduced_mul(x, e))) return false;
        }
        for (std::size_t i = 0; i < rank(); ++i) {
            const auto z = reduced_monomial(ext().one(), G.generator(i), w0);
            if (!(reduced_mul(z, x) == reduced_mul(x, z))) return false;
        }
        return true;
    }

    /// reduce(t^p) lies in F[X].
    bool is_p_power_central(const TwistedPolynomial& t, long p) const {
        if (!is_prime(p)) fail(ErrorKind::Precondition, "p must be prime");
        return in_center_representation(reduce(pow(t, p)));
    }

    /// t - t_c, where t_c collects the monomials of t whose reduction is central.
    TwistedPolynomial strip_central(const TwistedPolynomial& t) const {
        check(t);
        TwistedPolynomial out{id_, {}};
        for (const auto& [e, c] : t.terms) {
            const auto m = monomial(c, e);
            if (!in_center_representation(reduce(m))) out.terms.emplace(e, c);
        }
        return out;
    }

    TwistedPolynomial random_polynomial(std::mt19937_64& rng, std::size_t terms, long max_exp) const {
        std::uniform_int_distribution<long> ed(0, max_exp);
        TwistedPolynomial t = zero();
        for (std::size_t k = 0; k < terms; ++k) {
            Exponents e(rank());
            for (auto& x : e) x = ed(rng);
            t = add(t, monomial(ext().random_element(rng), e));
        }
        return t.is_zero() ? one() : t;
    }

    std::string format(const TwistedPolynomial& t) const {
        if (t.is_zero()) return "0";
        std::string s;
        for (const auto& [e, c] : t.terms) {
            if (!s.empty()) s += " + ";
            s += "(" + ext().format(c) + ")";
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                s += "*s" + std::to_string(i + 1);
                if (e[i] > 1) s += "^" + std::to_string(e[i]);
            }
        }
        return s;
    }

    std::string format(const ReducedElement& x) const {
        if (x.is_zero()) return "0";
        std::string s;
        for (const auto& [k, c] : x.terms) {
            if (!s.empty()) s += " + ";
            s += "(" + ext().format(c) + ")";
            for (std::size_t i = 0; i < rank(); ++i)
                if (k.first[i]) s += "*z" + std::to_string(i + 1) + (k.first[i] > 1 ? "^" + std::to_string(k.first[i]) : "");
            for (std::size_t i = 0; i < rank(); ++i)
                if (k.second[i]) s += "*X" + std::to_string(i + 1) + (k.second[i] != 1 ? "^" + std::to_string(k.second[i]) : "");
        }
        return s;
    }

private:
    static std::uint64_t next_id() {
        static std::atomic<std::uint64_t> counter{1};
        return counter++;
    }

    template <class P>
    void check(const P& x) const {
        if (x.ring != id_) fail(ErrorKind::Domain, "element belongs to a different ring context");
    }

    template <class Map, class Key>
    void accumulate(Map& terms, const Key& key, const FieldElement& c) const {
        auto it = terms.find(key);
        if (it == terms.end()) {
            if (!c.is_zero()) terms.emplace(key, c);
            return;
        }
        it->second = ext().add(it->second, c);
        if (it->second.is_zero()) terms.erase(it);
    }

    std::shared_ptr<const CrossedProductAlgebra> alg_;
    std::uint64_t id_;
};

inline Exponents to_exponents(const GroupExponent& g) { return Exponents(g.m.begin(), g.m.end()); }

struct MonomialSearchReport {
    std::optional<TwistedPolynomial> monomial;
    std::optional<StrongDegeneracyWitness> witness;
    std::size_t monomials_tested = 0;
};

/// Looks for a p-power central monomial l s^m of A_Delta with s^m of order p.
/// Candidates are scanned by (lexicographic m, candidate index); `exponents`
/// restricts the m scanned when nonempty.  With `use_witness_search` the
/// strong-degeneracy search runs first and its image is returned.
inline MonomialSearchReport monomial_p_central_search(const TwistedRing& R, long p,
                                                      const std::vector<FieldElement>& candidates,
                                                      bool use_witness_search = false,
                                                      const std::vector<GroupExponent>& exponents = {}) {
    const auto& A = R.algebra();
    const auto& G = A.group();
    if (G.is_cyclic() || !G.is_p_group(p)) fail(ErrorKind::Precondition, "G must be a noncyclic p-group");
    MonomialSearchReport report;
    if (use_witness_search && !candidates.empty()) {
        auto found = search_strong_degeneracy(A, candidates);
        if (found.witness && G.order_of(found.witness->m) == p) {
            auto t = R.monomial(found.witness->l, to_exponents(found.witness->m));
            ++report.monomials_tested;
            if (!R.is_p_power_central(t, p))
                fail(ErrorKind::InternalInconsistency, "image of a strong-degeneracy witness is not p-power central");
            report.monomial = std::move(t);
            report.witness = std::move(found.witness);
            return report;
        }
    }
    std::vector<GroupExponent> ms = exponents;
    if (ms.empty())
        for (const auto& g : G.elements())
            if (G.order_of(g) == p) ms.push_back(g);
    for (const auto& m : ms) {
        if (G.order_of(m) != p) fail(ErrorKind::Precondition, "sigma^" + to_string(m) + " does not have order p");
        for (const auto& l : candidates) {
            if (l.is_zero()) continue;
            auto t = R.monomial(l, to_exponents(m));
            ++report.monomials_tested;
            if (R.is_p_power_central(t, p)) {
                report.monomial = std::move(t);
                return report;
            }
        }
    }
    return report;
}

struct MonomialEquivalence {
    bool in_generic = false;  // (l s^m)^p central in A_Delta
    bool in_algebra = false;  // (l w^m)^p central in Delta
};

/// Evaluates p-power centrality of l s^m in A_Delta and of l w^m in Delta.
inline MonomialEquivalence monomial_equivalence(const TwistedRing& R, const FieldElement& l, const GroupExponent& m,
                                                long p) {
    const auto& A = R.algebra();
    MonomialEquivalence out;
    out.in_generic = R.is_p_power_central(R.monomial(l, to_exponents(m)), p);
    out.in_algebra = A.is_central(A.pow(A.monomial(l, m), p));
    return out;
}

}  // namespace abelcp
