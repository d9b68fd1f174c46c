#pragma once

// Normal-form moves shared by crossed products and twisted polynomial rings:
// s_k a = s_k(a) s_k, s_k s_j = u_kj s_j s_k, and optionally s_i^{n_i} = b_i X_i.

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "abelcp/field.hpp"

namespace abelcp {

/// The twisting data (u, b) of an abelian crossed product over K.
struct CocycleData {
    std::vector<std::vector<FieldElement>> u;
    std::vector<FieldElement> b;

    friend bool operator==(const CocycleData&, const CocycleData&) = default;
};

using Exponents = std::vector<long>;

/// Precomputed partial norms so that s^a s^c = lambda(a, c) s^{a+c} costs
/// O(r^2) field operations for arbitrary nonnegative exponents.
class TwistEngine {
public:
    TwistEngine(std::shared_ptr<const GaloisExtension> ext, const CocycleData& data)
        : ext_(std::move(ext)), b_(data.b) {
        const auto& G = ext_->group();
        const std::size_t r = G.rank();
        require(data.u.size() == r && data.b.size() == r, ErrorKind::MalformedInput, "cocycle data rank mismatch");
        for (const auto& row : data.u) require(row.size() == r, ErrorKind::MalformedInput, "u must be r x r");
        blocks_.resize(r * r);
        for (std::size_t k = 0; k < r; ++k)
            for (std::size_t j = 0; j < k; ++j) blocks_[k * r + j] = make_block(k, j, data.u[k][j]);
    }

    const GaloisExtension& ext() const { return *ext_; }

    /// lambda with s^a s^c = lambda s^{a+c} in K[s; sigma; u] (no reduction).
    FieldElement twist(const Exponents& a, const Exponents& c) const {
        const auto& K = *ext_;
        const std::size_t r = K.group().rank();
        FieldElement lambda = K.one();
        Exponents cur = a;
        for (std::size_t j = 0; j < r; ++j) {
            if (c[j] == 0) continue;
            for (std::size_t k = r; k-- > j + 1;) {
                if (cur[k] == 0) continue;
                Exponents prefix(r, 0);
                for (std::size_t i = 0; i < k; ++i) prefix[i] = cur[i];
                const auto q = block_factor(k, j, cur[k], c[j]);
                lambda = K.mul(lambda, K.apply(K.group().reduce(prefix), q));
            }
            cur[j] += c[j];
        }
        return lambda;
    }

    /// Rewrites s^e as coeff * s^{e mod n} * X^{e div n} using s_i^{n_i} = b_i X_i.
    /// Returns the coefficient; `e` is reduced in place and the X exponent returned.
    std::pair<FieldElement, Exponents> carry(Exponents& e) const {
        const auto& K = *ext_;
        const auto& G = K.group();
        const std::size_t r = G.rank();
        FieldElement coeff = K.one();
        Exponents quotient(r, 0);
        for (std::size_t i = 0; i < r; ++i) {
            require(e[i] >= 0, ErrorKind::Domain, "negative generator exponent");
            const long n = G.order(i);
            quotient[i] = e[i] / n;
            e[i] %= n;
            if (quotient[i] == 0) continue;
            Exponents prefix(r, 0);
            for (std::size_t t = 0; t < i; ++t) prefix[t] = e[t];
            coeff = K.mul(coeff, K.apply(G.reduce(prefix), K.pow(b_[i], quotient[i])));
        }
        return {std::move(coeff), std::move(quotient)};
    }

private:
    // For k > j: Y[c] = prod_{t<c} s_j^t(u_kj), A[a][c] = prod_{s<a} s_k^s(Y[c]),
    // B[a] = prod_{s<a} s_k^s(N_j(u_kj)).
    struct Block {
        std::vector<std::vector<FieldElement>> A;
        std::vector<FieldElement> B;
    };

    Block make_block(std::size_t k, std::size_t j, const FieldElement& ukj) const {
        const auto& K = *ext_;
        const auto& G = K.group();
        const int nk = G.order(k), nj = G.order(j);
        std::vector<FieldElement> Y(nj + 1);
        Y[0] = K.one();
        FieldElement conj = ukj;
        for (int t = 0; t < nj; ++t) {
            Y[t + 1] = K.mul(Y[t], conj);
            conj = K.apply_generator(j, conj);
        }
        auto partial = [&](const FieldElement& w) {
            std::vector<FieldElement> out(nk + 1);
            out[0] = K.one();
            FieldElement cj = w;
            for (int s = 0; s < nk; ++s) {
                out[s + 1] = K.mul(out[s], cj);
                cj = K.apply_generator(k, cj);
            }
            return out;
        };
        Block blk;
        blk.B = partial(Y[nj]);
        blk.A.assign(nk + 1, {});
        std::vector<std::vector<FieldElement>> byc(nj);
        for (int c = 0; c < nj; ++c) byc[c] = partial(Y[c]);
        for (int a = 0; a <= nk; ++a) {
            blk.A[a].resize(nj);
            for (int c = 0; c < nj; ++c) blk.A[a][c] = byc[c][a];
        }
        return blk;
    }

    // Q with s_k^a s_j^c = Q s_j^c s_k^a.
    FieldElement block_factor(std::size_t k, std::size_t j, long a, long c) const {
        const auto& K = *ext_;
        const auto& G = K.group();
        const std::size_t r = G.rank();
        const Block& blk = blocks_[k * r + j];
        const long nk = G.order(k), nj = G.order(j);
        const long qa = a / nk, ra = a % nk, qc = c / nj, rc = c % nj;
        FieldElement out = K.mul(K.pow(blk.A[nk][rc], qa), blk.A[ra][rc]);
        if (qc > 0) {
            const FieldElement norm_part = K.mul(K.pow(blk.B[nk], qa), blk.B[ra]);
            out = K.mul(out, K.pow(norm_part, qc));
        }
        return out;
    }

    std::shared_ptr<const GaloisExtension> ext_;
    std::vector<FieldElement> b_;
    std::vector<Block> blocks_;
};

}  // namespace abelcp
