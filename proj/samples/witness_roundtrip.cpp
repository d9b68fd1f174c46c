// Loads INSTANCE-B, finds a strong degeneracy witness and prints the central element it gives.

#include <iostream>

#include "abelcp/crossed_product.hpp"
#include "abelcp/io.hpp"

int main(int argc, char** argv) {
    using namespace abelcp;
    const std::string path = argc > 1 ? argv[1] : std::string(ABELCP_FIXTURE_DIR) + "/instance_b.json";
    const auto f = io::load_fixture(path);
    const CrossedProductAlgebra A(f.field, f.cocycle);
    const auto& K = A.ext();

    const auto rep = search_strong_degeneracy(A, default_candidates(K));
    if (!rep.witness) {
        std::cout << kExhaustionDisclaimer << '\n';
        return 3;
    }
    const auto& W = *rep.witness;
    std::cout << "m = " << to_string(W.m) << ", l = " << K.format(W.l) << '\n';
    const auto y = witness_to_central_element(A, W);
    const long q = A.group().order_of(W.m);
    std::cout << A.format(y) << " ^ " << q << " = " << A.format(A.pow(y, q)) << '\n';
    return check_strong_witness(A, central_element_to_witness(A, W.l, W.m)) ? 0 : 1;
}
