#pragma once

// Abelian Galois extensions K/F presented over Q by structure constants and
// commuting automorphism matrices.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "abelcp/error.hpp"
#include "abelcp/group.hpp"
#include "abelcp/linalg.hpp"
#include "abelcp/report.hpp"
#include "abelcp/scalar.hpp"

namespace abelcp {

/// Coordinates of an element of K with respect to the presentation's basis.
struct FieldElement {
    Vector coords;

    FieldElement() = default;
    explicit FieldElement(Vector c) : coords(std::move(c)) {}

    std::size_t size() const { return coords.size(); }
    bool is_zero() const { return abelcp::is_zero(coords); }

    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

struct FieldValidationOptions {
    std::size_t random_samples = 16;
    std::uint64_t seed = 0x5eed;
};

/// Outcome of a Hilbert 90 solve.  `norm` is N_m(c), reported either way.
struct Hilbert90Result {
    std::optional<FieldElement> solution;
    FieldElement norm;
};

class GaloisExtension {
public:
    /// `structure[(i * n + j) * n + k]` is the coefficient of e_k in e_i e_j.
    /// Column j of `sigma[i]` is the image of e_j under the i-th generator.
    GaloisExtension(std::vector<int> orders, std::size_t base_degree, std::vector<std::string> labels,
                    std::vector<Scalar> structure, Vector unit, std::vector<Matrix> sigma)
        : group_(std::move(orders)),
          base_degree_(base_degree),
          labels_(std::move(labels)),
          structure_(std::move(structure)),
          unit_(std::move(unit)),
          sigma_(std::move(sigma)) {
        dim_ = unit_.coords.size();
        require(dim_ > 0, ErrorKind::MalformedInput, "empty basis");
        require(base_degree_ >= 1, ErrorKind::MalformedInput, "base degree must be positive");
        require(dim_ == base_degree_ * group_.size(), ErrorKind::MalformedInput,
                "dimension " + std::to_string(dim_) + " does not equal base degree times |G| = " +
                    std::to_string(base_degree_ * group_.size()));
        require(labels_.empty() || labels_.size() == dim_, ErrorKind::MalformedInput, "basis label count mismatch");
        if (labels_.empty())
            for (std::size_t i = 0; i < dim_; ++i) labels_.push_back("e" + std::to_string(i));
        require(structure_.size() == dim_ * dim_ * dim_, ErrorKind::MalformedInput, "structure constant count mismatch");
        require(sigma_.size() == group_.rank(), ErrorKind::MalformedInput, "need one automorphism matrix per generator");
        for (const auto& s : sigma_)
            require(s.rows() == dim_ && s.cols() == dim_, ErrorKind::MalformedInput, "automorphism matrix has wrong shape");

        products_.resize(dim_ * dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                for (std::size_t k = 0; k < dim_; ++k) {
                    const Scalar& c = structure_[(i * dim_ + j) * dim_ + k];
                    if (sgn(c) != 0) products_[i * dim_ + j].push_back({k, c});
                }

        powers_.reserve(group_.size());
        for (std::size_t idx = 0; idx < group_.size(); ++idx) {
            const auto g = group_.element(idx);
            Matrix m = Matrix::identity(dim_);
            for (std::size_t i = 0; i < group_.rank(); ++i)
                for (int e = 0; e < g[i]; ++e) m = m * sigma_[i];
            powers_.push_back(std::move(m));
        }
    }

    std::size_t dim() const { return dim_; }
    std::size_t base_degree() const { return base_degree_; }
    const GroupShape& group() const { return group_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Scalar>& structure_constants() const { return structure_; }
    const std::vector<Matrix>& generators() const { return sigma_; }
    const Scalar& structure(std::size_t i, std::size_t j, std::size_t k) const {
        return structure_[(i * dim_ + j) * dim_ + k];
    }

    FieldElement zero() const { return FieldElement(Vector(dim_)); }
    const FieldElement& one() const { return unit_; }
    FieldElement basis(std::size_t i) const {
        Vector v(dim_);
        v.at(i) = 1;
        return FieldElement(std::move(v));
    }
    FieldElement from_scalar(const Scalar& q) const { return scale(q, unit_); }
    FieldElement element(Vector coords) const {
        require(coords.size() == dim_, ErrorKind::MalformedInput,
                "element has " + std::to_string(coords.size()) + " coordinates, expected " + std::to_string(dim_));
        return FieldElement(std::move(coords));
    }

    FieldElement add(const FieldElement& x, const FieldElement& y) const {
        check(x), check(y);
        Vector v(dim_);
        for (std::size_t i = 0; i < dim_; ++i) v[i] = x.coords[i] + y.coords[i];
        return FieldElement(std::move(v));
    }

    FieldElement sub(const FieldElement& x, const FieldElement& y) const {
        check(x), check(y);
        Vector v(dim_);
        for (std::size_t i = 0; i < dim_; ++i) v[i] = x.coords[i] - y.coords[i];
        return FieldElement(std::move(v));
    }

    FieldElement neg(const FieldElement& x) const { return scale(Scalar(-1), x); }

    FieldElement scale(const Scalar& q, const FieldElement& x) const {
        check(x);
        Vector v(dim_);
        for (std::size_t i = 0; i < dim_; ++i) v[i] = q * x.coords[i];
        return FieldElement(std::move(v));
    }

    FieldElement mul(const FieldElement& x, const FieldElement& y) const {
        check(x), check(y);
        Vector out(dim_);
        Scalar p;
        for (std::size_t i = 0; i < dim_; ++i) {
            if (sgn(x.coords[i]) == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (sgn(y.coords[j]) == 0) continue;
                p = x.coords[i] * y.coords[j];
                for (const auto& [k, c] : products_[i * dim_ + j]) out[k] += p * c;
            }
        }
        return FieldElement(std::move(out));
    }

    /// Signed power; negative exponents invert first.
    FieldElement pow(const FieldElement& x, long e) const {
        if (e < 0) return pow(inv(x), -e);
        FieldElement result = unit_;
        FieldElement base = x;
        while (e) {
            if (e & 1) result = mul(result, base);
            e >>= 1;
            if (e) base = mul(base, base);
        }
        return result;
    }

    /// Matrix of y -> x*y; column j is x * e_j.
    Matrix multiplication_matrix(const FieldElement& x) const {
        check(x);
        Matrix m(dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (sgn(x.coords[i]) == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j)
                for (const auto& [k, c] : products_[i * dim_ + j]) m(k, j) += x.coords[i] * c;
        }
        return m;
    }

    /// Solves x*y = 1 through the multiplication matrix.
    FieldElement inv(const FieldElement& x) const {
        check(x);
        if (x.is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero field element");
        auto y = solve_unique(multiplication_matrix(x), unit_.coords);
        if (!y) fail(ErrorKind::InconsistentPresentation, "multiplication by a nonzero element is singular: " + format(x));
        return FieldElement(std::move(*y));
    }

    FieldElement div(const FieldElement& x, const FieldElement& y) const { return mul(x, inv(y)); }

    Scalar trace(const FieldElement& x) const {
        const Matrix m = multiplication_matrix(x);
        Scalar t;
        for (std::size_t i = 0; i < dim_; ++i) t += m(i, i);
        return t;
    }

    const Matrix& automorphism(const GroupExponent& g) const { return powers_[group_.index(g)]; }

    FieldElement apply(const GroupExponent& g, const FieldElement& x) const {
        check(x);
        if (g.is_zero()) return x;
        return FieldElement(automorphism(g).apply(x.coords));
    }

    FieldElement apply_generator(std::size_t i, const FieldElement& x) const {
        return apply(group_.generator(i), x);
    }

    /// Product of the conjugates of x over a subgroup given by its elements.
    FieldElement norm_over(const std::vector<GroupExponent>& subgroup, const FieldElement& x) const {
        FieldElement out = unit_;
        for (const auto& h : subgroup) out = mul(out, apply(h, x));
        return out;
    }

    /// N_m(x) = prod_{k < q} (s^m)^k (x), q the order of s^m.
    FieldElement norm_along(const GroupExponent& m, const FieldElement& x) const {
        group_.check(m);
        if (m.is_zero()) fail(ErrorKind::Domain, "degenerate norm along the identity exponent");
        const long q = group_.order_of(m);
        FieldElement out = x;
        FieldElement conj = x;
        for (long k = 1; k < q; ++k) {
            conj = apply(m, conj);
            out = mul(out, conj);
        }
        return out;
    }

    /// F-basis (over Q) of the subfield fixed by s^m, read off the kernel of s^m - 1.
    std::vector<FieldElement> fixed_subspace(const GroupExponent& m) const {
        std::vector<FieldElement> out;
        for (auto& v : kernel(automorphism(m) - Matrix::identity(dim_))) out.emplace_back(std::move(v));
        return out;
    }

    /// Q-basis of the subfield fixed by every generator.
    std::vector<FieldElement> joint_fixed_subspace() const {
        Matrix stacked(dim_ * group_.rank(), dim_);
        for (std::size_t g = 0; g < group_.rank(); ++g) {
            const Matrix d = sigma_[g] - Matrix::identity(dim_);
            for (std::size_t i = 0; i < dim_; ++i)
                for (std::size_t j = 0; j < dim_; ++j) stacked(g * dim_ + i, j) = d(i, j);
        }
        std::vector<FieldElement> out;
        for (auto& v : kernel(stacked)) out.emplace_back(std::move(v));
        return out;
    }

    /// Membership in the base field (fixed by all of G).
    bool in_base(const FieldElement& x) const {
        for (std::size_t i = 0; i < group_.rank(); ++i)
            if (!(apply_generator(i, x) == x)) return false;
        return true;
    }

    /// Finds x != 0 with s^m(x) = c x, i.e. c = s^m(x)/x, from the kernel of s^m - c.
    Hilbert90Result hilbert90_solve(const GroupExponent& m, const FieldElement& c) const {
        group_.check(m);
        if (m.is_zero()) fail(ErrorKind::Domain, "Hilbert 90 along the identity exponent");
        if (c.is_zero()) fail(ErrorKind::Domain, "Hilbert 90 for c = 0");
        Hilbert90Result result{std::nullopt, norm_along(m, c)};
        const auto ker = kernel(automorphism(m) - multiplication_matrix(c));
        if (ker.empty()) return result;
        FieldElement x(ker.front());
        if (x.is_zero() || !(apply(m, x) == mul(c, x)))
            fail(ErrorKind::InternalInconsistency, "Hilbert 90 kernel vector fails verification");
        result.solution = std::move(x);
        return result;
    }

    std::string format(const FieldElement& x) const {
        std::string s;
        for (std::size_t i = 0; i < x.coords.size() && i < labels_.size(); ++i) {
            const Scalar& c = x.coords[i];
            if (sgn(c) == 0) continue;
            std::string term;
            const bool unit_label = labels_[i] == "1";
            if (unit_label) {
                term = to_string(c);
            } else if (c == 1) {
                term = labels_[i];
            } else if (c == -1) {
                term = "-" + labels_[i];
            } else {
                term = to_string(c) + "*" + labels_[i];
            }
            if (s.empty()) {
                s = term;
            } else if (term[0] == '-') {
                s += " - " + term.substr(1);
            } else {
                s += " + " + term;
            }
        }
        return s.empty() ? "0" : s;
    }

    FieldElement random_element(std::mt19937_64& rng, int bound = 4, double density = 0.7) const {
        std::uniform_int_distribution<int> coeff(-bound, bound);
        std::bernoulli_distribution keep(density);
        for (;;) {
            Vector v(dim_);
            for (auto& c : v)
                if (keep(rng)) c = coeff(rng);
            FieldElement x(std::move(v));
            if (!x.is_zero()) return x;
        }
    }

    ValidationReport validate(const FieldValidationOptions& opts = {}) const;

private:
    void check(const FieldElement& x) const {
        if (x.coords.size() != dim_)
            fail(ErrorKind::MalformedInput,
                 "element has " + std::to_string(x.coords.size()) + " coordinates, expected " + std::to_string(dim_));
    }

    GroupShape group_;
    std::size_t base_degree_;
    std::size_t dim_ = 0;
    std::vector<std::string> labels_;
    std::vector<Scalar> structure_;
    FieldElement unit_;
    std::vector<Matrix> sigma_;
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> products_;
    std::vector<Matrix> powers_;
};

inline ValidationReport GaloisExtension::validate(const FieldValidationOptions& opts) const {
    ValidationReport report;
    const std::size_t n = dim_;

    {
        std::string detail;
        for (std::size_t i = 0; i < n && detail.empty(); ++i)
            for (std::size_t j = i + 1; j < n && detail.empty(); ++j)
                if (!(mul(basis(i), basis(j)) == mul(basis(j), basis(i))))
                    detail = labels_[i] + "*" + labels_[j] + " != " + labels_[j] + "*" + labels_[i];
        report.add("commutativity", detail.empty(), detail);
    }
    {
        std::string detail;
        std::vector<FieldElement> prod(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) prod[i * n + j] = mul(basis(i), basis(j));
        for (std::size_t i = 0; i < n && detail.empty(); ++i)
            for (std::size_t j = 0; j < n && detail.empty(); ++j)
                for (std::size_t k = 0; k < n && detail.empty(); ++k)
                    if (!(mul(prod[i * n + j], basis(k)) == mul(basis(i), prod[j * n + k])))
                        detail = "(" + labels_[i] + "*" + labels_[j] + ")*" + labels_[k] + " != " + labels_[i] + "*(" +
                                 labels_[j] + "*" + labels_[k] + ")";
        report.add("associativity", detail.empty(), detail);
    }
    {
        std::string detail;
        for (std::size_t i = 0; i < n && detail.empty(); ++i)
            if (!(mul(unit_, basis(i)) == basis(i))) detail = "unit*" + labels_[i] + " != " + labels_[i];
        report.add("unit", detail.empty(), detail);
    }
    for (std::size_t g = 0; g < group_.rank(); ++g) {
        const std::string name = "sigma_" + std::to_string(g + 1);
        std::string detail;
        const auto gen = group_.generator(g);
        if (!(apply(gen, unit_) == unit_)) detail = name + "(1) != 1";
        for (std::size_t i = 0; i < n && detail.empty(); ++i)
            for (std::size_t j = 0; j < n && detail.empty(); ++j)
                if (!(apply(gen, mul(basis(i), basis(j))) == mul(apply(gen, basis(i)), apply(gen, basis(j)))))
                    detail = name + " not multiplicative on " + labels_[i] + "*" + labels_[j];
        report.add(name + " automorphism", detail.empty(), detail);

        const int want = group_.order(g);
        int order = 0;
        Matrix p = sigma_[g];
        for (int k = 1; k <= want; ++k) {
            if (p.is_identity()) {
                order = k;
                break;
            }
            p = p * sigma_[g];
        }
        report.add(name + " order", order == want,
                   order == want ? std::string{}
                                 : name + " order != " + std::to_string(want) +
                                       (order ? " (found " + std::to_string(order) + ")" : " (not finite within bound)"));
    }
    {
        std::string detail;
        for (std::size_t a = 0; a < group_.rank() && detail.empty(); ++a)
            for (std::size_t b = a + 1; b < group_.rank() && detail.empty(); ++b)
                if (!(sigma_[a] * sigma_[b] == sigma_[b] * sigma_[a]))
                    detail = "sigma_" + std::to_string(a + 1) + " and sigma_" + std::to_string(b + 1) + " do not commute";
        report.add("generators commute", detail.empty(), detail);
    }
    {
        std::string detail;
        for (std::size_t idx = 1; idx < group_.size() && detail.empty(); ++idx)
            if (powers_[idx].is_identity()) detail = "sigma^" + to_string(group_.element(idx)) + " acts trivially";
        report.add("faithful action", detail.empty(), detail);
    }
    {
        const auto fixed = joint_fixed_subspace();
        const bool ok = fixed.size() == base_degree_;
        report.add("fixed field", ok,
                   ok ? std::string{}
                      : "joint fixed subspace has dimension " + std::to_string(fixed.size()) + ", expected " +
                            std::to_string(base_degree_));
    }
    auto invertible = [&](const FieldElement& x) {
        auto y = solve_unique(multiplication_matrix(x), unit_.coords);
        return y.has_value() && mul(x, FieldElement(*y)) == unit_;
    };
    {
        std::string detail;
        for (std::size_t i = 0; i < n && detail.empty(); ++i)
            if (!invertible(basis(i))) detail = labels_[i] + " is not invertible";
        report.add("basis invertibility", detail.empty(), detail);
    }
    {
        std::mt19937_64 rng(opts.seed);
        std::string detail;
        for (std::size_t s = 0; s < opts.random_samples && detail.empty(); ++s) {
            const auto x = random_element(rng);
            if (!invertible(x)) detail = format(x) + " is not invertible";
        }
        report.add("sampled invertibility", detail.empty(),
                   detail.empty() ? std::to_string(opts.random_samples) + " random elements" : detail);
    }
    {
        Matrix form(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) form(i, j) = trace(mul(basis(i), basis(j)));
        const bool ok = sgn(determinant(form)) != 0;
        report.add("trace form nondegenerate", ok, ok ? std::string{} : "trace form is singular");
    }
    return report;
}

}  // namespace abelcp
