// Norm descent of a witness over K(2^(1/3)) back to K, then up to u^{tk}.

#include <iostream>

#include "abelcp/extension_lab.hpp"
#include "abelcp/io.hpp"

int main() {
    using namespace abelcp;
    const auto wf = io::load_witness_file(std::string(ABELCP_FIXTURE_DIR) + "/witness_b_cbrt2.json");
    const CrossedProductAlgebra A(wf.fixture.field, wf.fixture.cocycle);
    const CompositeExtension comp(wf.fixture.field, *wf.composite);
    const auto W = io::witness_from(comp.KE(), wf.witness);

    const auto rep = descend_chain(comp, A, W, 2);
    for (const auto& s : rep.stages) std::cout << (s.passed ? "ok   " : "FAIL ") << s.name << ": " << s.detail << '\n';
    if (rep.descended) std::cout << "l' = " << A.ext().format(rep.descended->l) << '\n';
    std::cout << kDescentGap << '\n';
    return rep.passed() ? 0 : 1;
}
