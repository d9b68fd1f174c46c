#pragma once

// Prime-to-p composites KE = K (x)_F E supplied as explicit data, cocycle
// extension to KE, the norm N_{KE/K}, and descent of strong-degeneracy witnesses.

#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abelcp/crossed_product.hpp"
#include "abelcp/error.hpp"
#include "abelcp/field.hpp"
#include "abelcp/io.hpp"
#include "abelcp/linalg.hpp"
#include "abelcp/report.hpp"

namespace abelcp {

class CompositeExtension {
public:
    /// Verifies every invariant and throws ValidationFailure naming the first failing one.
    CompositeExtension(std::shared_ptr<const GaloisExtension> K, const io::CompositeData& data)
        : K_(std::move(K)),
          KE_(data.KE),
          e_structure_(data.e_structure),
          e_unit_(data.e_unit),
          embed_K_(data.embed_K),
          embed_E_(data.embed_E),
          rel_gal_(data.rel_gal) {
        t_ = e_unit_.size();
        require(t_ >= 1, ErrorKind::MalformedInput, "E has an empty basis");
        require(e_structure_.size() == t_ * t_ * t_, ErrorKind::MalformedInput, "E structure constant count mismatch");
        require(embed_K_.rows() == KE_->dim() && embed_K_.cols() == K_->dim(), ErrorKind::MalformedInput,
                "embed_K must be dim(KE) x dim(K)");
        require(embed_E_.rows() == KE_->dim() && embed_E_.cols() == t_, ErrorKind::MalformedInput,
                "embed_E must be dim(KE) x [E:F]");
        for (const auto& m : rel_gal_)
            require(m.rows() == KE_->dim() && m.cols() == KE_->dim(), ErrorKind::MalformedInput,
                    "rel_gal matrix has wrong shape");
        report_ = verify();
        if (const auto* bad = report_.first_failure())
            fail(ErrorKind::ValidationFailure, "composite rejected: " + bad->name + (bad->detail.empty() ? "" : ": " + bad->detail));
        build_norm_data();
    }

    const GaloisExtension& K() const { return *K_; }
    const GaloisExtension& KE() const { return *KE_; }
    std::shared_ptr<const GaloisExtension> KE_ptr() const { return KE_; }
    std::size_t t() const { return t_; }
    const ValidationReport& report() const { return report_; }
    const std::vector<Matrix>& rel_gal_group() const { return rel_group_; }

    FieldElement embed(const FieldElement& x) const { return FieldElement(embed_K_.apply(x.coords)); }

    /// N_{KE/K}(y) = det over K of multiplication by y on the K-basis embed_E(f_j).
    FieldElement norm(const FieldElement& y) const {
        const auto& K = *K_;
        const std::size_t n = K.dim();
        std::vector<std::vector<FieldElement>> M(t_, std::vector<FieldElement>(t_, K.zero()));
        for (std::size_t j = 0; j < t_; ++j) {
            const auto prod = KE_->mul(y, FieldElement(embed_E_.column(j)));
            const auto c = basis_inverse_.apply(prod.coords);
            for (std::size_t k = 0; k < t_; ++k) {
                Vector v(n);
                for (std::size_t i = 0; i < n; ++i) v[i] = c[i + n * k];
                M[k][j] = FieldElement(std::move(v));
            }
        }
        return determinant_over(K, std::move(M));
    }

    /// Product over the group generated by rel_gal; meaningful when that group has order t.
    std::optional<FieldElement> norm_by_group(const FieldElement& y) const {
        if (rel_group_.size() != t_) return std::nullopt;
        FieldElement out = KE_->one();
        for (const auto& tau : rel_group_) out = KE_->mul(out, FieldElement(tau.apply(y.coords)));
        const auto back = solve_unique(embed_K_, out.coords);
        if (!back) fail(ErrorKind::InternalInconsistency, "group norm does not lie in K");
        return FieldElement(*back);
    }

private:
    Vector e_mul(const Vector& a, const Vector& b) const {
        Vector out(t_);
        for (std::size_t i = 0; i < t_; ++i)
            for (std::size_t j = 0; j < t_; ++j) {
                if (sgn(a[i]) == 0 || sgn(b[j]) == 0) continue;
                for (std::size_t k = 0; k < t_; ++k) out[k] += a[i] * b[j] * e_structure_[(i * t_ + j) * t_ + k];
            }
        return out;
    }

    static Vector unit_vector(std::size_t n, std::size_t i) {
        Vector v(n);
        v[i] = 1;
        return v;
    }

    ValidationReport verify() {
        const auto& K = *K_;
        const auto& KE = *KE_;
        ValidationReport rep;
        const auto ke_rep = KE.validate();
        rep.append(ke_rep, "KE ");

        rep.add("same group", KE.group() == K.group(), "KE/E must carry the group of K/F");
        rep.add("degree bookkeeping", KE.base_degree() == t_ && KE.dim() == K.dim() * t_,
                "[KE:E] = [K:F] and dim KE = dim K * [E:F]");
        {
            std::string detail;
            for (std::size_t i = 0; i < t_ && detail.empty(); ++i)
                if (!(e_mul(e_unit_, unit_vector(t_, i)) == unit_vector(t_, i))) detail = "unit of E";
            for (std::size_t i = 0; i < t_ && detail.empty(); ++i)
                for (std::size_t j = 0; j < t_ && detail.empty(); ++j) {
                    const auto ei = unit_vector(t_, i), ej = unit_vector(t_, j);
                    if (!(e_mul(ei, ej) == e_mul(ej, ei))) detail = "E not commutative";
                    for (std::size_t k = 0; k < t_ && detail.empty(); ++k) {
                        const auto ek = unit_vector(t_, k);
                        if (!(e_mul(e_mul(ei, ej), ek) == e_mul(ei, e_mul(ej, ek)))) detail = "E not associative";
                    }
                }
            rep.add("E algebra", detail.empty(), detail);
        }
        auto homomorphism = [&](const Matrix& phi, std::size_t n, auto&& src_mul, const Vector& src_unit) {
            if (!(phi.apply(src_unit) == KE.one().coords)) return std::string("unit not preserved");
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const auto lhs = phi.apply(src_mul(unit_vector(n, i), unit_vector(n, j)));
                    const auto rhs = KE.mul(FieldElement(phi.column(i)), FieldElement(phi.column(j)));
                    if (!(lhs == rhs.coords))
                        return "image of e_" + std::to_string(i) + "*e_" + std::to_string(j) + " is not the product";
                }
            return std::string();
        };
        {
            const auto d = homomorphism(
                embed_K_, K.dim(), [&](const Vector& a, const Vector& b) { return K.mul(FieldElement(a), FieldElement(b)).coords; },
                K.one().coords);
            rep.add("embed_K ring homomorphism", d.empty(), d);
        }
        {
            const auto d = homomorphism(embed_E_, t_, [&](const Vector& a, const Vector& b) { return e_mul(a, b); }, e_unit_);
            rep.add("embed_E ring homomorphism", d.empty(), d);
        }
        {
            bool ok = true;
            for (std::size_t g = 0; g < K.group().rank() && ok; ++g)
                ok = KE.generators()[g] * embed_K_ == embed_K_ * K.generators()[g];
            rep.add("embed_K commutes with G", ok);
        }
        {
            bool ok = true;
            for (std::size_t g = 0; g < K.group().rank() && ok; ++g) ok = KE.generators()[g] * embed_E_ == embed_E_;
            rep.add("G fixes E", ok);
        }
        {
            Matrix B(KE.dim(), K.dim() * t_);
            for (std::size_t k = 0; k < t_; ++k)
                for (std::size_t i = 0; i < K.dim(); ++i) {
                    const auto p = KE.mul(FieldElement(embed_K_.column(i)), FieldElement(embed_E_.column(k)));
                    for (std::size_t r = 0; r < KE.dim(); ++r) B(r, i + K.dim() * k) = p.coords[r];
                }
            const bool ok = B.rows() == B.cols() && rank(B) == KE.dim();
            rep.add("K (x) E spans KE", ok, ok ? "" : "products embed_K(e_i) embed_E(f_k) are not a basis");
            if (ok) basis_inverse_ = *inverse(B);
        }
        {
            std::string detail;
            for (std::size_t a = 0; a < rel_gal_.size() && detail.empty(); ++a) {
                const auto& tau = rel_gal_[a];
                const auto name = "rel_gal[" + std::to_string(a) + "]";
                if (!inverse(tau)) detail = name + " is singular";
                for (std::size_t i = 0; i < KE.dim() && detail.empty(); ++i)
                    for (std::size_t j = 0; j < KE.dim() && detail.empty(); ++j) {
                        const auto ei = KE.basis(i), ej = KE.basis(j);
                        const auto lhs = tau.apply(KE.mul(ei, ej).coords);
                        const auto rhs = KE.mul(FieldElement(tau.column(i)), FieldElement(tau.column(j)));
                        if (!(lhs == rhs.coords)) detail = name + " is not multiplicative";
                    }
                if (detail.empty() && !(tau * embed_K_ == embed_K_)) detail = name + " does not fix K";
                for (std::size_t g = 0; g < K.group().rank() && detail.empty(); ++g)
                    if (!(tau * KE.generators()[g] == KE.generators()[g] * tau)) detail = name + " does not commute with G";
            }
            rep.add("rel_gal automorphisms over K", detail.empty(), detail);
        }
        {
            const long order = static_cast<long>(K.group().size());
            const long g = std::gcd(static_cast<long>(t_), order);
            rep.add("prime to p", g == 1, g == 1 ? "" : "gcd([E:F], |G|) = " + std::to_string(g));
        }
        return rep;
    }

    void build_norm_data() {
        rel_group_ = {Matrix::identity(KE_->dim())};
        for (std::size_t frontier = 0; frontier < rel_group_.size(); ++frontier) {
            for (const auto& g : rel_gal_) {
                const Matrix h = g * rel_group_[frontier];
                bool seen = false;
                for (const auto& x : rel_group_) seen = seen || x == h;
                if (!seen) rel_group_.push_back(h);
                if (rel_group_.size() > KE_->dim())
                    fail(ErrorKind::ValidationFailure, "composite rejected: rel_gal generates too large a group");
            }
        }
    }

    static FieldElement determinant_over(const GaloisExtension& K, std::vector<std::vector<FieldElement>> M) {
        const std::size_t n = M.size();
        FieldElement det = K.one();
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (p < n && M[p][c].is_zero()) ++p;
            if (p == n) return K.zero();
            if (p != c) {
                std::swap(M[p], M[c]);
                det = K.neg(det);
            }
            det = K.mul(det, M[c][c]);
            const auto inv = K.inv(M[c][c]);
            for (std::size_t r = c + 1; r < n; ++r) {
                if (M[r][c].is_zero()) continue;
                const auto f = K.mul(M[r][c], inv);
                for (std::size_t k = c; k < n; ++k) M[r][k] = K.sub(M[r][k], K.mul(f, M[c][k]));
            }
        }
        return det;
    }

    std::shared_ptr<const GaloisExtension> K_;
    std::shared_ptr<const GaloisExtension> KE_;
    std::vector<Scalar> e_structure_;
    Vector e_unit_;
    Matrix embed_K_, embed_E_;
    std::vector<Matrix> rel_gal_;
    std::vector<Matrix> rel_group_;
    Matrix basis_inverse_;
    std::size_t t_ = 0;
    ValidationReport report_;
};

/// Images of u and b under embed_K, validated over KE.
inline CocycleData extend_cocycle(const CompositeExtension& comp, const CocycleData& data) {
    CocycleData out;
    for (const auto& row : data.u) {
        std::vector<FieldElement> r;
        for (const auto& e : row) r.push_back(comp.embed(e));
        out.u.push_back(std::move(r));
    }
    for (const auto& e : data.b) out.b.push_back(comp.embed(e));
    const auto rep = validate_relations(comp.KE(), out);
    if (const auto* bad = rep.first_failure())
        fail(ErrorKind::InconsistentPresentation, "extended cocycle fails over KE: " + bad->name);
    return out;
}

/// Checks W over KE, then applies N_{KE/K} to l and every x_i; the result is
/// checked against (u^t, b^t) over K.
inline StrongDegeneracyWitness norm_descend_witness(const CompositeExtension& comp, const CrossedProductAlgebra& base,
                                                    const StrongDegeneracyWitness& W) {
    const CrossedProductAlgebra over_KE(comp.KE_ptr(), extend_cocycle(comp, base.cocycle()));
    if (!check_strong_witness(over_KE, W)) fail(ErrorKind::InvalidWitness, "witness does not check over KE");
    StrongDegeneracyWitness out{W.m, comp.norm(W.l), {}};
    for (const auto& x : W.x) out.x.push_back(comp.norm(x));
    const CrossedProductAlgebra powered(base.ext_ptr(),
                                        power_cocycle(base.ext(), base.cocycle(), static_cast<long>(comp.t())));
    if (!check_strong_witness(powered, out))
        fail(ErrorKind::InternalInconsistency, "descended witness fails the checker for u^t");
    return out;
}

/// (l^k, x_i^k): a witness for u^{tk} from one for u^t.
inline StrongDegeneracyWitness power_witness(const GaloisExtension& K, const StrongDegeneracyWitness& W, long k) {
    if (k <= 0) fail(ErrorKind::Domain, "power k must be positive");
    StrongDegeneracyWitness out{W.m, K.pow(W.l, k), {}};
    for (const auto& x : W.x) out.x.push_back(K.pow(x, k));
    return out;
}

struct Bezout {
    long k = 0;
    long l = 0;
};

/// Extended Euclid: t k + e l = 1.
inline Bezout bezout_certificate(long t, long e) {
    if (t <= 0 || e <= 0) fail(ErrorKind::Domain, "Bezout inputs must be positive");
    if (std::gcd(t, e) != 1) fail(ErrorKind::Domain, "gcd(" + std::to_string(t) + ", " + std::to_string(e) + ") != 1");
    if (t == 1) return {1, 0};
    long r0 = t, r1 = e, s0 = 1, s1 = 0, u0 = 0, u1 = 1;
    while (r1 != 0) {
        const long q = r0 / r1;
        r0 = std::exchange(r1, r0 - q * r1);
        s0 = std::exchange(s1, s0 - q * s1);
        u0 = std::exchange(u1, u0 - q * u1);
    }
    const Bezout out{s0, u0};
    if (t * out.k + e * out.l != 1) fail(ErrorKind::InternalInconsistency, "Bezout certificate fails");
    return out;
}

inline constexpr const char* kDescentGap =
    "passing from u^{tk} back to u needs an explicit isomorphism of crossed products, which is not constructed";

struct DescentStage {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct DescentReport {
    std::vector<DescentStage> stages;
    std::optional<StrongDegeneracyWitness> descended;
    std::optional<StrongDegeneracyWitness> powered;
    Bezout bezout;
    long tk = 0;

    bool passed() const {
        for (const auto& s : stages)
            if (!s.passed) return false;
        return !stages.empty();
    }
};

/// extend -> check -> norm descent -> Bezout -> power; stops at the first failing stage.
inline DescentReport descend_chain(const CompositeExtension& comp, const CrossedProductAlgebra& base,
                                   const StrongDegeneracyWitness& W, long e) {
    DescentReport rep;
    const long t = static_cast<long>(comp.t());
    auto stage = [&](const std::string& name, auto&& body) {
        try {
            std::string detail = body();
            rep.stages.push_back({name, true, detail});
            return true;
        } catch (const Error& err) {
            rep.stages.push_back({name, false, err.what()});
            return false;
        }
    };
    std::optional<CrossedProductAlgebra> over_KE;
    if (!stage("extend", [&] {
            over_KE.emplace(comp.KE_ptr(), extend_cocycle(comp, base.cocycle()));
            return std::string("cocycle extended to KE");
        }))
        return rep;
    if (!stage("check", [&] {
            if (!check_strong_witness(*over_KE, W)) fail(ErrorKind::InvalidWitness, "witness does not check over KE");
            return std::string("witness passes over KE");
        }))
        return rep;
    if (!stage("norm descent", [&] {
            rep.descended = norm_descend_witness(comp, base, W);
            return "witness for u^" + std::to_string(t) + " passes over K";
        }))
        return rep;
    if (!stage("bezout", [&] {
            rep.bezout = bezout_certificate(t, e);
            return std::to_string(t) + "*" + std::to_string(rep.bezout.k) + " + " + std::to_string(e) + "*" +
                   std::to_string(rep.bezout.l) + " = 1";
        }))
        return rep;
    stage("power", [&] {
        long k = rep.bezout.k;
        while (k <= 0) k += e;
        rep.tk = t * k;
        rep.powered = power_witness(base.ext(), *rep.descended, k);
        const CrossedProductAlgebra target(base.ext_ptr(), power_cocycle(base.ext(), base.cocycle(), rep.tk));
        if (!check_strong_witness(target, *rep.powered))
            fail(ErrorKind::InternalInconsistency, "powered witness fails for u^" + std::to_string(rep.tk));
        return "witness for u^" + std::to_string(rep.tk) + " passes over K (k = " + std::to_string(k) + ")";
    });
    return rep;
}

}  // namespace abelcp
