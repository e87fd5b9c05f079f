#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "gcgw/parse.hpp"
#include "gcgw/rational.hpp"

using namespace gcgw;

TEST_CASE("gaussian rational field ops") {
    GaussianRational a(Rational(1, 2), Rational(-3, 4));
    GaussianRational b(Rational(2, 3), Rational(5));

    CHECK(a + b - b == a);
    CHECK((a * b) / b == a);
    CHECK(a * a.inverse() == GaussianRational(1));
    CHECK((a * a.conj()).im == 0);
    CHECK((a * a.conj()).re == a.norm2());

    GaussianRational i = GaussianRational::i();
    CHECK(i * i == GaussianRational(-1));
}

TEST_CASE("division by zero rejected") {
    GaussianRational z;
    CHECK_THROWS_AS(GaussianRational(1) / z, contract_error);
}

TEST_CASE("canonical reduced form is automatic") {
    GaussianRational x(Rational(Integer(2), Integer(4)));
    CHECK(rational_str(x.re) == "1/2");
    GaussianRational y(Rational(-3) / Rational(-6));
    CHECK(rational_str(y.re) == "1/2");
    // sign lives in the numerator after normalization
    GaussianRational w(Rational(3) / Rational(-6));
    CHECK(rational_str(w.re) == "-1/2");
}

TEST_CASE("rational square roots") {
    CHECK(rational_sqrt(Rational(9, 4)) == Rational(3, 2));
    CHECK(rational_sqrt(Rational(2)) == std::nullopt);
    CHECK(rational_sqrt(Rational(-1)) == std::nullopt);
    CHECK(rational_sqrt(Rational(0)) == Rational(0));
}

TEST_CASE("scalar print/parse round trip") {
    std::vector<GaussianRational> cases = {
        GaussianRational(0),
        GaussianRational(5),
        GaussianRational(Rational(-7, 3)),
        GaussianRational::i(),
        -GaussianRational::i(),
        GaussianRational(Rational(0), Rational(3, 4)),
        GaussianRational(Rational(1), Rational(2)),
        GaussianRational(Rational(-1, 2), Rational(-5, 7)),
    };
    for (const auto& c : cases) {
        CAPTURE(c.str());
        CHECK(parse_scalar(c.str()) == c);
    }
}

TEST_CASE("randomized scalar round trips") {
    std::mt19937 rng(12345);
    auto rnd = [&]() {
        long num = static_cast<long>(rng() % 41) - 20;
        long den = static_cast<long>(rng() % 19) + 1;
        return Rational(num, den);
    };
    for (int t = 0; t < 200; ++t) {
        GaussianRational g(rnd(), rnd());
        CHECK(parse_scalar(g.str()) == g);
    }
}

TEST_CASE("parse errors carry position") {
    CHECK_THROWS_AS(parse_scalar("1/0"), input_error);
    CHECK_THROWS_AS(parse_scalar("++"), input_error);
    try {
        parse_scalar("1 + $");
        FAIL("expected throw");
    } catch (const input_error& e) {
        CHECK(std::string(e.what()).find("offset") != std::string::npos);
    }
}
