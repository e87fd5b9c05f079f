// Build the 6-dimensional nilpotent table, verify a type-2 strong
// generalized Calabi-Yau spinor on it, and print the transverse cohomology.

#include <iostream>

#include "gcgw/complexes.hpp"
#include "gcgw/parse.hpp"
#include "gcgw/spinor.hpp"

using namespace gcgw;

int main() {
    LieAlgebra alg{BasedSpace(6)};
    alg.set_d(4, parse_form("e1^e3 + e4^e2", alg.space));
    alg.set_d(5, parse_form("e1^e4 + e2^e3", alg.space));
    auto v = alg.validate(true);
    std::cout << "table valid: " << v.ok() << ", nilpotency class "
              << (v.nilpotency_class ? *v.nilpotency_class : -1) << "\n";

    PureSpinor rho = PureSpinor::factored(
        QiForm(6), parse_form("e5^e6", alg.space),
        {parse_form("e1 - i e4", alg.space), parse_form("e2 + i e3", alg.space)});
    CalabiYauReport cy = check_calabi_yau(alg, rho, true);
    std::cout << "d(rho) = 0: " << cy.d_rho_zero << ", nondegenerate: " << cy.nondegenerate
              << ", type " << cy.type << ", strong: " << cy.strong << "\n";
    std::cout << "top form: " << cy.nondeg_value << "\n";

    auto ss = spinor_to_structure(alg.space, rho.build());
    TransverseComplex tc = TransverseComplex::from_structure(ss.structure, alg);
    std::cout << "dim H^r_D:";
    for (int d : tc.cohomology_dims_D()) std::cout << " " << d;
    std::cout << "\n";
    return 0;
}
