#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "gcgw/charts.hpp"
#include "gcgw/ratfunc.hpp"

using namespace gcgw;

namespace {

std::shared_ptr<const VarTable> zt() { return VarTable::make({"z"}); }
std::shared_ptr<const VarTable> zwt() { return VarTable::make({"z", "w"}); }

RationalFunction rf(const std::string& s, const std::shared_ptr<const VarTable>& t) {
    return parse_ratfunc(s, t);
}

} // namespace

TEST_CASE("polynomial gcd and exact division") {
    auto t = zwt();
    int nv = t->size();
    Polynomial z = Polynomial::variable(nv, 0);
    Polynomial w = Polynomial::variable(nv, 2); // w is index 2 (zbar is 1)
    Polynomial one = Polynomial::constant(nv, GaussianRational(1));

    Polynomial a = (z + one) * (z - one);            // z^2 - 1
    Polynomial b = (z + one) * (z + one) * w;        // (z+1)^2 w
    Polynomial g = poly_gcd(a, b);
    CHECK(g == z + one);
    CHECK(a.div_exact(g) == z - one);
    CHECK_THROWS_AS(a.div_exact(w), contract_error);

    // gcd of coprime polynomials is 1
    CHECK(poly_gcd(z + one, w) == one);
    // lcm * gcd = product up to normalization
    Polynomial l = poly_lcm(a, b);
    CHECK(l.div_exact(a).divides(b));
}

TEST_CASE("rational function normalization is canonical") {
    auto t = zt();
    RationalFunction f = rf("(z^2 - 1)/(z - 1)", t);
    CHECK(f == rf("z + 1", t));
    CHECK(f.den.is_constant()); // reduced: denominator is 1
    // denominator made monic under graded-lex
    RationalFunction g = rf("1/(2*z + 2)", t);
    auto [e, c] = g.den.leading();
    CHECK(c == GaussianRational(1));
}

TEST_CASE("field operations and equality by cross-multiplication") {
    auto t = zt();
    RationalFunction a = rf("z/(1 + z*zbar)", t);
    RationalFunction b = rf("(1 - z)/(2 + z)", t);
    CHECK((a + b) - b == a);
    CHECK((a * b) / b == a);
    CHECK(a - a == RationalFunction(0));
    CHECK(rf("(z^2 - 1)/(z + 1)", t) == rf("z - 1", t));
}

TEST_CASE("gh flags and conjugation") {
    std::shared_ptr<const VarTable> t = VarTable::make({"z"}, {"p1"});
    RationalFunction hol = rf("z^2 + 1/2", t);
    CHECK(hol.is_gh());
    RationalFunction bar = rf("zbar", t);
    CHECK(!bar.is_gh());
    CHECK(bar.offending_vars() == std::vector<std::string>{"zbar"});
    RationalFunction leaf = rf("p1 * z", t);
    CHECK(!leaf.is_gh());
    CHECK(leaf.uses_leaf());

    // conj swaps z and zbar and conjugates coefficients
    RationalFunction f = rf("(i*z + 1)/(1 + z*zbar)", t);
    RationalFunction g = f.conj();
    CHECK(g == rf("(1 - i*zbar)/(1 + z*zbar)", t));
    CHECK(g.conj() == f);
}

TEST_CASE("derivatives") {
    auto t = zt();
    RationalFunction f = rf("1/(1 + z*zbar)", t);
    CHECK(f.derivative(0) == rf("0 - zbar/(1 + z*zbar)^2", t));
    CHECK(f.derivative(1) == rf("0 - z/(1 + z*zbar)^2", t));
    CHECK(rf("z^3", t).derivative(0) == rf("3*z^2", t));
}

TEST_CASE("rational function print/parse round trip") {
    auto t = zwt();
    std::mt19937 rng(2718);
    auto rand_poly = [&]() {
        Polynomial p(t->size());
        int terms = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < terms; ++k) {
            Expo e(t->size(), 0);
            for (auto& x : e) x = static_cast<int>(rng() % 3);
            p.add_term(e, GaussianRational(Rational(static_cast<long>(rng() % 9) - 4),
                                           Rational(static_cast<long>(rng() % 9) - 4)));
        }
        return p;
    };
    for (int trial = 0; trial < 60; ++trial) {
        Polynomial num = rand_poly(), den = rand_poly();
        if (den.is_zero()) continue;
        RationalFunction f(t, num, den);
        CAPTURE(f.str());
        CHECK(parse_ratfunc(f.str(), t) == f);
    }
}

TEST_CASE("substitution") {
    auto t0 = zt();
    auto t1 = VarTable::make({"w"});
    // z -> 1/w
    std::vector<RationalFunction> values(t0->size());
    values[0] = rf("1/w", t1);
    values[1] = values[0].conj();
    RationalFunction f = rf("(z^2 + 1)/(z - 2)", t0);
    RationalFunction g = f.substitute(t1, values);
    CHECK(g == rf("(1 + w^2)/(w*(1 - 2*w))", t1));
    // evaluation agrees at a sample point
    CHECK(f.eval({GaussianRational(Rational(1, 3)), GaussianRational(0)}) ==
          g.eval({GaussianRational(3), GaussianRational(0)}));
}

TEST_CASE("chart forms: derivative, bidegree, conjugation") {
    Chart c{"U", zt(), {0}, {false}};
    int g = form_gens(c);
    REQUIRE(g == 2);
    ChartForm f = ChartForm::scalar(g, rf("z*zbar", c.table));
    ChartForm df = chart_d(c, f);
    // d(z zbar) = zbar dz + z dzbar
    CHECK(df.coeff(1) == rf("zbar", c.table));
    CHECK(df.coeff(2) == rf("z", c.table));
    CHECK(chart_dL(c, f).coeff(2) == rf("z", c.table));
    CHECK(chart_dLbar(c, f).coeff(1) == rf("zbar", c.table));
    // d^2 = 0
    CHECK(chart_d(c, df).is_zero());

    ChartForm w = ChartForm::monomial(g, 1, rf("i z", c.table)); // i z dz
    ChartForm wc = form_conj(c, w);
    CHECK(wc == ChartForm::monomial(g, 2, rf("0 - i zbar", c.table)));
}

TEST_CASE("nerve glue validation and pullbacks") {
    auto nerve = std::make_shared<ChartNerve>();
    Chart u0{"U0", zt(), {0}, {false}};
    Chart u1{"U1", VarTable::make({"w"}), {0}, {false}};
    nerve->charts = {u0, u1};
    nerve->glue[{0, 1}] = {rf("1/z", u0.table)};
    nerve->glue[{1, 0}] = {rf("1/w", u1.table)};
    nerve->validate();

    // functions pull back by substitution
    RationalFunction f = rf("w^2 + 1", u1.table);
    CHECK(nerve->pull_function(0, 1, f) == rf("(1 + z^2)/z^2", u0.table));

    // forms pull back with the jacobian: dw -> -dz/z^2
    ChartForm dw = ChartForm::monomial(2, 1, RationalFunction(1));
    ChartForm pulled = nerve->pull_form(0, 1, dw);
    CHECK(pulled.coeff(1) == rf("0 - 1/z^2", u0.table));
    // and the conjugate generator follows by conjugation
    ChartForm dwb = ChartForm::monomial(2, 2, RationalFunction(1));
    CHECK(nerve->pull_form(0, 1, dwb).coeff(2) == rf("0 - 1/zbar^2", u0.table));

    // broken glue is rejected
    auto bad = std::make_shared<ChartNerve>();
    bad->charts = {u0, u1};
    bad->glue[{0, 1}] = {rf("1/z", u0.table)};
    bad->glue[{1, 0}] = {rf("w", u1.table)};
    CHECK_THROWS_AS(bad->validate(), input_error);
}
