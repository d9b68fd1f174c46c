// Twisted polynomials over INSTANCE-B and their images in the generic crossed product.

#include <iostream>

#include "abelcp/io.hpp"
#include "abelcp/twisted_poly.hpp"

int main() {
    using namespace abelcp;
    const auto f = io::load_fixture(std::string(ABELCP_FIXTURE_DIR) + "/instance_b.json");
    const TwistedRing R(std::make_shared<const CrossedProductAlgebra>(f.field, f.cocycle));
    const auto& K = R.ext();

    const auto t = R.add(R.monomial(K.basis(2), {1, 0}), R.s(1));
    const auto sq = R.pow(t, 2);
    std::cout << "t   = " << R.format(t) << '\n';
    std::cout << "t^2 = " << R.format(R.reduce(sq)) << '\n';
    std::cout << "central: " << (R.is_central(R.reduce(sq)) ? "yes" : "no") << '\n';

    const auto w = R.monomial(K.basis(1), {1, 1});
    std::cout << R.format(w) << " squared: " << R.format(R.reduce(R.pow(w, 2))) << '\n';
    return 0;
}
