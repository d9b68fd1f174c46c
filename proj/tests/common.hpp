#pragma once

#include <initializer_list>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "abelcp/crossed_product.hpp"
#include "abelcp/io.hpp"

namespace abelcp::testing {

inline std::string fixture_path(const std::string& name) { return std::string(ABELCP_FIXTURE_DIR) + "/" + name; }

inline io::Fixture fixture(const std::string& name) { return io::load_fixture(fixture_path(name)); }

inline std::shared_ptr<const CrossedProductAlgebra> algebra(const io::Fixture& f) {
    return std::make_shared<const CrossedProductAlgebra>(f.field, f.cocycle);
}

/// Element from rational coordinate literals.
inline FieldElement el(const GaloisExtension& K, std::initializer_list<const char*> coords) {
    Vector v;
    for (const char* c : coords) v.push_back(parse_scalar(c));
    return K.element(std::move(v));
}

inline FieldElement q(const GaloisExtension& K, long n, long d = 1) { return K.from_scalar(Scalar(n, d)); }

/// INSTANCE-B basis: 1, sqrt2, sqrt3, sqrt6.
struct B {
    static FieldElement r2(const GaloisExtension& K) { return K.basis(1); }
    static FieldElement r3(const GaloisExtension& K) { return K.basis(2); }
    static FieldElement r6(const GaloisExtension& K) { return K.basis(3); }
};

inline AlgebraElement random_algebra_element(const CrossedProductAlgebra& A, std::mt19937_64& rng, std::size_t terms = 3) {
    std::uniform_int_distribution<std::size_t> pick(0, A.group().size() - 1);
    AlgebraElement x = A.zero();
    for (std::size_t k = 0; k < terms; ++k)
        x = A.add(x, A.monomial(A.ext().random_element(rng, 3, 0.5), A.group().element(pick(rng))));
    return x;
}

}  // namespace abelcp::testing
