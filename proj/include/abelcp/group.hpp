#pragma once

// The finite abelian group G = <s_1> x ... x <s_r> in exponent coordinates.

#include <compare>
#include <cstddef>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "abelcp/error.hpp"

namespace abelcp {

/// Exponent vector m with 0 <= m_i < n_i, standing for s_1^{m_1} ... s_r^{m_r}.
struct GroupExponent {
    std::vector<int> m;

    GroupExponent() = default;
    explicit GroupExponent(std::vector<int> v) : m(std::move(v)) {}
    GroupExponent(std::initializer_list<int> v) : m(v) {}

    std::size_t rank() const { return m.size(); }
    int operator[](std::size_t i) const { return m[i]; }
    bool is_zero() const {
        for (int x : m)
            if (x != 0) return false;
        return true;
    }

    auto operator<=>(const GroupExponent&) const = default;
};

inline std::string to_string(const GroupExponent& g) {
    std::string s = "(";
    for (std::size_t i = 0; i < g.m.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(g.m[i]);
    }
    return s + ")";
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

class GroupShape {
public:
    GroupShape() = default;
    explicit GroupShape(std::vector<int> orders) : orders_(std::move(orders)) {
        require(!orders_.empty(), ErrorKind::MalformedInput, "group must have rank >= 1");
        size_ = 1;
        for (int n : orders_) {
            require(n >= 2, ErrorKind::MalformedInput, "generator orders must be >= 2");
            size_ *= static_cast<std::size_t>(n);
        }
    }

    std::size_t rank() const { return orders_.size(); }
    const std::vector<int>& orders() const { return orders_; }
    int order(std::size_t i) const { return orders_[i]; }
    std::size_t size() const { return size_; }

    bool contains(const GroupExponent& g) const {
        if (g.rank() != rank()) return false;
        for (std::size_t i = 0; i < rank(); ++i)
            if (g[i] < 0 || g[i] >= orders_[i]) return false;
        return true;
    }

    void check(const GroupExponent& g) const {
        require(contains(g), ErrorKind::MalformedInput, "exponent " + to_string(g) + " out of range");
    }

    /// Row-major index; increasing index is lexicographic order on exponents.
    std::size_t index(const GroupExponent& g) const {
        check(g);
        std::size_t idx = 0;
        for (std::size_t i = 0; i < rank(); ++i) idx = idx * orders_[i] + static_cast<std::size_t>(g[i]);
        return idx;
    }

    GroupExponent element(std::size_t idx) const {
        std::vector<int> m(rank());
        for (std::size_t i = rank(); i-- > 0;) {
            m[i] = static_cast<int>(idx % orders_[i]);
            idx /= orders_[i];
        }
        return GroupExponent(std::move(m));
    }

    GroupExponent identity() const { return GroupExponent(std::vector<int>(rank(), 0)); }

    GroupExponent generator(std::size_t i) const {
        auto e = identity();
        e.m[i] = 1;
        return e;
    }

    /// Reduces an arbitrary integer vector into canonical range.
    GroupExponent reduce(const std::vector<long>& v) const {
        require(v.size() == rank(), ErrorKind::MalformedInput, "exponent rank mismatch");
        std::vector<int> m(rank());
        for (std::size_t i = 0; i < rank(); ++i) {
            long r = v[i] % orders_[i];
            if (r < 0) r += orders_[i];
            m[i] = static_cast<int>(r);
        }
        return GroupExponent(std::move(m));
    }

    GroupExponent add(const GroupExponent& a, const GroupExponent& b) const {
        std::vector<long> v(rank());
        for (std::size_t i = 0; i < rank(); ++i) v[i] = long{a[i]} + b[i];
        return reduce(v);
    }

    GroupExponent scale(const GroupExponent& a, long k) const {
        std::vector<long> v(rank());
        for (std::size_t i = 0; i < rank(); ++i) v[i] = long{a[i]} * k;
        return reduce(v);
    }

    long order_of(const GroupExponent& g) const {
        check(g);
        long ord = 1;
        for (std::size_t i = 0; i < rank(); ++i) {
            const long n = orders_[i];
            ord = std::lcm(ord, n / std::gcd(n, long{g[i]}));
        }
        return ord;
    }

    long exponent() const {
        long e = 1;
        for (int n : orders_) e = std::lcm(e, long{n});
        return e;
    }

    bool is_cyclic() const { return static_cast<std::size_t>(exponent()) == size_; }

    /// Elements of the subgroup generated by `gens`, sorted by index.
    std::vector<GroupExponent> subgroup(const std::vector<GroupExponent>& gens) const {
        std::set<GroupExponent> seen{identity()};
        std::vector<GroupExponent> frontier{identity()};
        while (!frontier.empty()) {
            std::vector<GroupExponent> next;
            for (const auto& h : frontier)
                for (const auto& g : gens) {
                    auto k = add(h, g);
                    if (seen.insert(k).second) next.push_back(k);
                }
            frontier = std::move(next);
        }
        return {seen.begin(), seen.end()};
    }

    /// An abelian group is cyclic iff its exponent equals its order.
    bool generates_cyclic(const GroupExponent& a, const GroupExponent& b) const {
        const auto h = subgroup({a, b});
        return std::lcm(order_of(a), order_of(b)) == static_cast<long>(h.size());
    }

    bool is_p_group(long p) const {
        std::size_t s = size_;
        while (s % static_cast<std::size_t>(p) == 0) s /= static_cast<std::size_t>(p);
        return s == 1;
    }

    std::vector<GroupExponent> elements() const {
        std::vector<GroupExponent> out;
        out.reserve(size_);
        for (std::size_t i = 0; i < size_; ++i) out.push_back(element(i));
        return out;
    }

    friend bool operator==(const GroupShape&, const GroupShape&) = default;

private:
    std::vector<int> orders_;
    std::size_t size_ = 0;
};

}  // namespace abelcp
