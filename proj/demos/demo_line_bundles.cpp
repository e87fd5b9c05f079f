// Line bundles over the two-chart cover of the line: obstruction cocycles,
// the bounded connection search, and the dimension table next to its
// brute-force twin.

#include <iostream>

#include "gcgw/bott.hpp"
#include "gcgw/bundles.hpp"

using namespace gcgw;

int main() {
    auto nerve = std::make_shared<ChartNerve>();
    Chart u0{"U0", VarTable::make({"z"}), {0}, {false}};
    Chart u1{"U1", VarTable::make({"w"}), {0}, {false}};
    nerve->charts = {u0, u1};
    nerve->glue[{0, 1}] = {parse_ratfunc("1/z", u0.table)};
    nerve->glue[{1, 0}] = {parse_ratfunc("1/w", u1.table)};
    nerve->validate();

    TransitionCocycle c;
    c.nerve = nerve;
    c.rank = 1;
    RfMatrix m(1, 1);
    m(0, 0) = parse_ratfunc("z", u0.table);
    c.phi.emplace(Overlap{0, 1}, m);
    c.complete();

    AtiyahData at = atiyah_cocycles(c);
    std::cout << "b = -xi: " << at.b_equals_minus_xi << "\n";
    auto res = gh_connection_search(c, at, 4);
    std::cout << "connection within bound 4: " << res.found;
    if (!res.found) std::cout << " (" << res.certificate << ")";
    std::cout << "\n";

    std::cout << "degree m: closed form (q=0, q=1) | oracle (q=0, q=1)\n";
    for (long deg = -4; deg <= 4; ++deg) {
        int t = static_cast<int>(std::abs(deg)) + 2;
        std::cout << "  " << deg << ": " << bott_dims(1, deg, 0, 0).str() << ", "
                  << bott_dims(1, deg, 0, 1).str() << " | " << cech_oracle_p1(deg, 0, t) << ", "
                  << cech_oracle_p1(deg, 1, t) << "\n";
    }
    return 0;
}
