#pragma once

// The graded skeleton of the power-series generic crossed product: homogeneous
// elements alpha_0 g(z^m) g(x^w), their values in (1/n_1)Z + ... + (1/n_r)Z,
// the theta map, and the residue data.

#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "abelcp/crossed_product.hpp"
#include "abelcp/error.hpp"
#include "abelcp/field.hpp"
#include "abelcp/report.hpp"

namespace abelcp {

/// gamma = w + sum_i (m_i / n_i) e_i with 0 <= m_i < n_i.
struct ValueVector {
    std::vector<long> w;
    GroupExponent frac;
    std::vector<int> orders;

    bool in_gamma_F() const { return frac.is_zero(); }

    Scalar coordinate(std::size_t i) const {
        Scalar f(frac[i], orders[i]);
        f.canonicalize();
        return Scalar(w[i]) + f;
    }

    friend bool operator==(const ValueVector& a, const ValueVector& b) { return a.w == b.w && a.frac == b.frac; }
};

inline ValueVector make_value(const GroupShape& G, std::vector<long> whole, std::vector<long> numerators) {
    require(whole.size() == G.rank() && numerators.size() == G.rank(), ErrorKind::MalformedInput, "value rank mismatch");
    std::vector<int> m(G.rank());
    for (std::size_t i = 0; i < G.rank(); ++i) {
        const long n = G.order(i);
        long q = numerators[i] / n, r = numerators[i] % n;
        if (r < 0) r += n, q -= 1;
        whole[i] += q;
        m[i] = static_cast<int>(r);
    }
    return ValueVector{std::move(whole), GroupExponent(std::move(m)), G.orders()};
}

inline ValueVector operator+(const ValueVector& a, const ValueVector& b) {
    const GroupShape G(a.orders);
    std::vector<long> w(a.w.size()), num(a.w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = a.w[i] + b.w[i];
        num[i] = long{a.frac[i]} + b.frac[i];
    }
    return make_value(G, std::move(w), std::move(num));
}

/// Coordinates as reduced fractions, e.g. "(1/2, 0)".
inline std::string to_string(const ValueVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.w.size(); ++i) {
        if (i) s += ", ";
        s += to_string(v.coordinate(i));
    }
    return s + ")";
}

/// alpha_0 g(z^m) g(x^w).
struct HomogeneousElement {
    FieldElement alpha;
    GroupExponent m;
    std::vector<long> w;

    friend bool operator==(const HomogeneousElement&, const HomogeneousElement&) = default;
};

struct QPowerCentralReport {
    bool central = false;
    bool in_gamma_F = false;
    ValueVector value;
};

struct GradedPairReport {
    bool degenerate = false;
    bool noncyclic = false;
    bool commute = false;
    std::optional<DegeneracyPairWitness> witness;
};

/// Residue cocycle for pi_i = z_i and scalings f_i, with its relation report.
struct ResidueCocycle {
    CocycleData data;
    std::vector<HomogeneousElement> scalings;
    ValidationReport relations;
};

class GradedContext {
public:
    explicit GradedContext(std::shared_ptr<const CrossedProductAlgebra> alg) : alg_(std::move(alg)) {}

    const CrossedProductAlgebra& algebra() const { return *alg_; }
    const GaloisExtension& ext() const { return alg_->ext(); }
    const GroupShape& group() const { return alg_->group(); }
    std::size_t rank() const { return group().rank(); }

    HomogeneousElement make(const FieldElement& alpha, const GroupExponent& m, std::vector<long> w = {}) const {
        group().check(m);
        if (w.empty()) w.assign(rank(), 0);
        require(w.size() == rank(), ErrorKind::MalformedInput, "central exponent rank mismatch");
        if (alpha.is_zero()) fail(ErrorKind::Domain, "homogeneous element with zero coefficient");
        return {ext().element(alpha.coords), m, std::move(w)};
    }

    HomogeneousElement z(std::size_t i) const { return make(ext().one(), group().generator(i)); }

    HomogeneousElement x(std::size_t i) const {
        std::vector<long> w(rank(), 0);
        w[i] = 1;
        return make(ext().one(), group().identity(), std::move(w));
    }

    HomogeneousElement scalar(const FieldElement& a) const { return make(a, group().identity()); }

    ValueVector value_of(const HomogeneousElement& h) const {
        return make_value(group(), h.w, std::vector<long>(h.m.m.begin(), h.m.m.end()));
    }

    GroupExponent theta(const ValueVector& v) const { return v.frac; }

    /// (alpha z^g x^w)(beta z^h x^w') = alpha sigma^g(beta) c(g,h) z^{g+h} x^{w+w'+carry(g,h)}.
    HomogeneousElement mul(const HomogeneousElement& a, const HomogeneousElement& b) const {
        const auto& K = ext();
        const auto& G = group();
        const std::size_t gi = G.index(a.m), hi = G.index(b.m);
        const auto& carry = alg_->carry(gi, hi);
        std::vector<long> w(rank());
        for (std::size_t i = 0; i < rank(); ++i) w[i] = a.w[i] + b.w[i] + carry[i];
        return {K.mul(K.mul(a.alpha, K.apply(a.m, b.alpha)), alg_->cocycle_value(gi, hi)), G.add(a.m, b.m), std::move(w)};
    }

    HomogeneousElement pow(const HomogeneousElement& h, long e) const {
        if (e < 0) fail(ErrorKind::Domain, "negative power of a homogeneous element");
        HomogeneousElement out = scalar(ext().one());
        for (long i = 0; i < e; ++i) out = mul(out, h);
        return out;
    }

    bool commute(const HomogeneousElement& a, const HomogeneousElement& b) const { return mul(a, b) == mul(b, a); }

    /// Commutes with every residue of a K-basis element and every g(z_i).
    bool is_central(const HomogeneousElement& h) const {
        for (std::size_t k = 0; k < ext().dim(); ++k)
            if (!commute(scalar(ext().basis(k)), h)) return false;
        for (std::size_t i = 0; i < rank(); ++i)
            if (!commute(z(i), h)) return false;
        return true;
    }

    QPowerCentralReport qpower_central_check(const HomogeneousElement& h, long q) const {
        if (!is_prime(q)) fail(ErrorKind::Precondition, "q must be prime");
        const auto v = value_of(h);
        return {is_central(pow(h, q)), v.in_gamma_F(), v};
    }

    /// Noncyclic theta-span and commuting; emits (m, n, beta^-1, alpha) when true.
    GradedPairReport pair_degeneracy_check(const HomogeneousElement& h1, const HomogeneousElement& h2) const {
        GradedPairReport out;
        const auto m = theta(value_of(h1)), n = theta(value_of(h2));
        out.noncyclic = !group().generates_cyclic(m, n);
        out.commute = commute(h1, h2);
        out.degenerate = out.noncyclic && out.commute;
        if (out.degenerate) {
            DegeneracyPairWitness W{m, n, ext().inv(h2.alpha), h1.alpha};
            if (!check_pair_witness(*alg_, W))
                fail(ErrorKind::InternalInconsistency, "commuting homogeneous pair emits a failing pair witness");
            out.witness = W;
        }
        return out;
    }

    /// The strong-degeneracy witness carried by a q-power central h with value outside Gamma_F.
    StrongDegeneracyWitness to_witness(const HomogeneousElement& h) const {
        if (value_of(h).in_gamma_F()) fail(ErrorKind::Precondition, "value lies in Gamma_F");
        return central_element_to_witness(*alg_, h.alpha, h.m);
    }

    HomogeneousElement from_witness(const StrongDegeneracyWitness& W) const {
        if (!check_strong_witness(*alg_, W)) fail(ErrorKind::InvalidWitness, "strong degeneracy witness does not check");
        return make(W.l, W.m);
    }

    /// u-bar from pi_i = z_i, b-bar_i the residue of pi_i^{n_i} f_i^-1; needs v(f_i) = v(pi_i^{n_i}).
    ResidueCocycle residue_cocycle(const std::vector<HomogeneousElement>& f) const {
        const auto& K = ext();
        const auto& G = group();
        require(f.size() == rank(), ErrorKind::MalformedInput, "need one scaling per generator");
        ResidueCocycle out;
        out.scalings = f;
        out.data.u.assign(rank(), std::vector<FieldElement>(rank()));
        for (std::size_t i = 0; i < rank(); ++i) {
            const auto pin = pow(z(i), G.order(i));
            if (!(value_of(f[i]) == value_of(pin)))
                fail(ErrorKind::Precondition, "v(f_" + std::to_string(i + 1) + ") = " + to_string(value_of(f[i])) +
                                                  " differs from v(pi_" + std::to_string(i + 1) + "^n) = " +
                                                  to_string(value_of(pin)));
            if (!f[i].m.is_zero()) fail(ErrorKind::Precondition, "scaling f_" + std::to_string(i + 1) + " is not central");
            out.data.b.push_back(K.div(pin.alpha, f[i].alpha));
            for (std::size_t j = 0; j < rank(); ++j) {
                const auto ij = mul(z(i), z(j));
                const auto ji = mul(z(j), z(i));
                out.data.u[i][j] = K.div(ij.alpha, ji.alpha);
            }
        }
        out.relations = validate_relations(K, out.data);
        return out;
    }

    /// f_i = x_i.
    std::vector<HomogeneousElement> standard_scalings() const {
        std::vector<HomogeneousElement> f;
        for (std::size_t i = 0; i < rank(); ++i) f.push_back(x(i));
        return f;
    }

private:
    std::shared_ptr<const CrossedProductAlgebra> alg_;
};

/// [D-bar : F-bar] = |Gamma_D : Gamma_F| = sqrt([D : F]) in the model.
struct SemiramificationReport {
    std::size_t value_index = 0;
    std::size_t residue_degree = 0;
    std::size_t algebra_dimension = 0;
    bool theta_bijective = false;
    bool theta_additive = false;
    bool defectless_assumed = true;
    bool passed = false;
};

inline SemiramificationReport semiramification_report(const GradedContext& ctx) {
    const auto& G = ctx.group();
    if (G.is_cyclic()) fail(ErrorKind::Precondition, "G must be noncyclic for degeneracy APIs");
    SemiramificationReport rep;

    // Gamma_D / Gamma_F generated by the values of g(z_i), enumerated by closure.
    std::set<GroupExponent> cosets{G.identity()};
    std::vector<ValueVector> frontier{ctx.value_of(ctx.scalar(ctx.ext().one()))};
    while (!frontier.empty()) {
        std::vector<ValueVector> next;
        for (const auto& v : frontier)
            for (std::size_t i = 0; i < G.rank(); ++i) {
                const auto s = v + ctx.value_of(ctx.z(i));
                if (cosets.insert(s.frac).second) next.push_back(s);
            }
        frontier = std::move(next);
    }
    rep.value_index = cosets.size();
    rep.residue_degree = ctx.ext().dim() / ctx.ext().base_degree();
    rep.algebra_dimension = rep.residue_degree * rep.residue_degree;

    std::set<GroupExponent> images;
    for (const auto& c : cosets) images.insert(ctx.theta(make_value(G, std::vector<long>(G.rank(), 0),
                                                                    std::vector<long>(c.m.begin(), c.m.end()))));
    rep.theta_bijective = images.size() == cosets.size() && images.size() == G.size();

    rep.theta_additive = true;
    for (const auto& a : G.elements())
        for (const auto& b : G.elements()) {
            const auto va = ctx.value_of(ctx.make(ctx.ext().one(), a));
            const auto vb = ctx.value_of(ctx.make(ctx.ext().one(), b));
            if (!(ctx.theta(va + vb) == G.add(ctx.theta(va), ctx.theta(vb)))) rep.theta_additive = false;
        }

    rep.passed = rep.value_index == rep.residue_degree && rep.value_index * rep.value_index == rep.algebra_dimension &&
                 rep.theta_bijective && rep.theta_additive;
    return rep;
}

inline constexpr const char* kAuditDisclaimer =
    "no q-power central homogeneous element with value outside Gamma_F found within budget; "
    "this is not a proof of absence";

struct QPowerAudit {
    std::optional<HomogeneousElement> found;
    std::size_t tested = 0;
};

/// Scans alpha z^m, m of prime order, alpha from `candidates`, for q-power centrality.
inline QPowerAudit qpower_central_audit(const GradedContext& ctx, const std::vector<FieldElement>& candidates,
                                        std::size_t budget) {
    const auto& G = ctx.group();
    QPowerAudit audit;
    for (const auto& m : G.elements()) {
        const long q = G.order_of(m);
        if (!is_prime(q)) continue;
        for (const auto& a : candidates) {
            if (a.is_zero()) continue;
            if (audit.tested >= budget) return audit;
            ++audit.tested;
            const auto h = ctx.make(a, m);
            const auto rep = ctx.qpower_central_check(h, q);
            if (rep.central && !rep.in_gamma_F) {
                audit.found = h;
                return audit;
            }
        }
    }
    return audit;
}

}  // namespace abelcp
