#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "gcgw/lie.hpp"
#include "gcgw/multivector.hpp"
#include "gcgw/parse.hpp"

using namespace gcgw;

namespace {

QiForm F(const std::string& s, const BasedSpace& sp) { return parse_form(s, sp); }

// deterministic random forms for property checks
QiForm random_form(std::mt19937& rng, const BasedSpace& sp, int grade) {
    QiForm r(sp.dim);
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
        Mask m = 0;
        while (mask_grade(m) != grade) m = static_cast<Mask>(rng()) & ((Mask(1) << sp.dim) - 1);
        long num = static_cast<long>(rng() % 21) - 10;
        long den = static_cast<long>(rng() % 7) + 1;
        long inum = static_cast<long>(rng() % 21) - 10;
        r.add_term(m, GaussianRational(Rational(num, den), Rational(inum, den)));
    }
    return r;
}

std::vector<GaussianRational> random_vec(std::mt19937& rng, int n) {
    std::vector<GaussianRational> v(n);
    for (auto& c : v) c = GaussianRational(Rational(static_cast<long>(rng() % 11) - 5),
                                           Rational(static_cast<long>(rng() % 11) - 5));
    return v;
}

} // namespace

TEST_CASE("wedge basics") {
    BasedSpace sp(4);
    CHECK(wedge(F("e1", sp), F("e2", sp)) == F("e1^e2", sp));
    CHECK(wedge(F("e2", sp), F("e1", sp)) == F("-e1^e2", sp));
    CHECK(wedge(F("e1", sp), F("e1", sp)).is_zero());

    // hand-expanded bilinear product
    QiForm lhs = wedge(F("e1 + i e2", sp), F("e3 + i e4", sp));
    CHECK(lhs == F("e1^e3 + i e1^e4 + i e2^e3 - e2^e4", sp));
}

TEST_CASE("graded commutativity on random homogeneous forms") {
    BasedSpace sp(6);
    std::mt19937 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        int ga = static_cast<int>(rng() % 4);
        int gb = static_cast<int>(rng() % 4);
        QiForm a = random_form(rng, sp, ga);
        QiForm b = random_form(rng, sp, gb);
        QiForm ab = wedge(a, b), ba = wedge(b, a);
        if ((ga * gb) % 2 == 1) CHECK(ab == -ba);
        else CHECK(ab == ba);
    }
}

TEST_CASE("wedge associativity on random forms") {
    BasedSpace sp(5);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        QiForm a = random_form(rng, sp, static_cast<int>(rng() % 3));
        QiForm b = random_form(rng, sp, static_cast<int>(rng() % 3));
        QiForm c = random_form(rng, sp, static_cast<int>(rng() % 3));
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    }
}

TEST_CASE("interior product") {
    BasedSpace sp(4);
    std::vector<GaussianRational> e1(4);
    e1[0] = GaussianRational(1);

    CHECK(interior(e1, F("e1^e3", sp)) == F("e3", sp));
    CHECK(interior(e1, F("e4^e2", sp)).is_zero());
    CHECK(interior(e1, F("e1^e3 + e4^e2", sp)) == F("e3", sp));
}

TEST_CASE("interior is a graded derivation and squares to zero") {
    BasedSpace sp(6);
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        auto x = random_vec(rng, 6);
        int ga = 1 + static_cast<int>(rng() % 3);
        QiForm a = random_form(rng, sp, ga);
        QiForm b = random_form(rng, sp, static_cast<int>(rng() % 3));
        QiForm lhs = interior(x, wedge(a, b));
        QiForm rhs = wedge(interior(x, a), b);
        QiForm second = wedge(a, interior(x, b));
        rhs = (ga % 2 == 1) ? rhs - second : rhs + second;
        CHECK(lhs == rhs);
        CHECK(interior(x, interior(x, a)).is_zero());
    }
}

TEST_CASE("clifford action") {
    BasedSpace sp(4);
    auto clifford = [&](const GeneralizedVector& v, const QiForm& rho) {
        QiForm covector(sp.dim);
        for (int k = 0; k < sp.dim; ++k) covector.add_term(Mask(1) << k, v.cov[k]);
        return interior(v.vec, rho) + wedge(covector, rho);
    };

    GeneralizedVector e1 = GeneralizedVector::basis_vector(4, 0);
    CHECK(clifford(e1, F("e1^e2", sp)) == F("e2", sp));

    GeneralizedVector e1_dual = GeneralizedVector::basis_covector(4, 0);
    CHECK(clifford(e1_dual, F("e2", sp)) == F("e1^e2", sp));

    // Clifford relation v.(w.rho) + w.(v.rho) = 2 <v,w> rho on random data
    std::mt19937 rng(555);
    for (int trial = 0; trial < 40; ++trial) {
        GeneralizedVector v(4), w(4);
        v.vec = random_vec(rng, 4);
        v.cov = random_vec(rng, 4);
        w.vec = random_vec(rng, 4);
        w.cov = random_vec(rng, 4);
        QiForm rho = random_form(rng, sp, static_cast<int>(rng() % 4));
        QiForm lhs = clifford(v, clifford(w, rho)) + clifford(w, clifford(v, rho));
        QiForm rhs = (GaussianRational(2) * pairing(v, w)) * rho;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("form_exp") {
    BasedSpace sp6(6);
    CHECK(form_exp(QiForm(6)) == QiForm::scalar(6, GaussianRational(1)));
    CHECK(form_exp(F("i e5^e6", sp6)) == F("1 + i e5^e6", sp6));

    BasedSpace sp4(4);
    CHECK(form_exp(F("e1^e2 + e3^e4", sp4)) == F("1 + e1^e2 + e3^e4 + e1^e2^e3^e4", sp4));

    CHECK_THROWS_AS(form_exp(F("e1", sp4)), contract_error);
    CHECK_THROWS_AS(form_exp(F("e1^e2^e3", sp4)), contract_error);
}

TEST_CASE("form print/parse round trip") {
    BasedSpace sp(6);
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 80; ++trial) {
        QiForm a = random_form(rng, sp, static_cast<int>(rng() % 4));
        QiForm b = random_form(rng, sp, static_cast<int>(rng() % 4));
        QiForm x = a + b; // mixed degrees welcome
        CAPTURE(form_str(x, sp));
        CHECK(parse_form(form_str(x, sp), sp) == x);
    }
    CHECK(parse_form("0", sp).is_zero());
    CHECK_THROWS_AS(parse_form("e1^^e2", sp), input_error);
    CHECK_THROWS_AS(parse_form("e9", sp), input_error);
}
