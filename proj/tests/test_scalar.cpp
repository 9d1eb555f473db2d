#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qrform/scalar.hpp"

using namespace qrform;

TEST_CASE("basic arithmetic and reduction") {
    Scalar t = Scalar::t_pow(1);
    Scalar q = Scalar::t_pow(2);

    // (t^2, t^-2, mul) -> 1
    CHECK((Scalar::t_pow(2) * Scalar::t_pow(-2)).is_one());
    // (q, q^-1, sub) -> lambda
    Scalar lam = q - q.inv();
    CHECK(lam == Scalar::parse("t^2 - t^-2"));
    CHECK(lam.str() == "(t^4-1)/t^2");
    // ((q-1)/(q^2-1)) * 1 -> 1/(q+1): gcd reduction
    Scalar a = (q - Scalar(1)) / (q * q - Scalar(1));
    CHECK(a == (q + Scalar(1)).inv());
    CHECK(t.pow(0).is_one());
}

TEST_CASE("division by zero is a distinct error") {
    CHECK_THROWS_AS(Scalar(1) / Scalar(), DivisionByZero);
    CHECK_THROWS_AS(Scalar().inv(), DivisionByZero);
}

TEST_CASE("canonical form: equal values identical") {
    Scalar a = Scalar::parse("(t^2-1)/(t-1)");
    Scalar b = Scalar::parse("t+1");
    CHECK(a == b);
    CHECK(a.str() == b.str());
    Scalar c = Scalar::parse("-2/( -2 * t )");
    CHECK(c == Scalar::t_pow(-1));
    // denominator sign normalization
    Scalar d(Poly(1), Poly(-3));
    Scalar e(Poly(-1), Poly(3));
    CHECK(d == e);
}

TEST_CASE("field axioms on randomized small polynomials") {
    std::mt19937 rng(12345);
    auto rnd_poly = [&]() {
        Poly p;
        int deg = static_cast<int>(rng() % 4);
        for (int k = 0; k <= deg; ++k)
            p.set_coeff(k, mpz_class(static_cast<long>(rng() % 7) - 3));
        return p;
    };
    auto rnd_scalar = [&]() {
        Poly num = rnd_poly();
        Poly den;
        while (den.is_zero()) den = rnd_poly();
        return Scalar(num, den);
    };
    for (int trial = 0; trial < 200; ++trial) {
        Scalar a = rnd_scalar(), b = rnd_scalar(), c = rnd_scalar();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (!a.is_zero()) {
            CHECK((a * a.inv()).is_one());
            CHECK(b / a * a == b);
        }
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("evaluation homomorphism at t0") {
    mpq_class t0(7, 5);
    std::mt19937 rng(99);
    auto rnd = [&]() {
        Poly p;
        for (int k = 0; k <= static_cast<int>(rng() % 3); ++k)
            p.set_coeff(k, mpz_class(static_cast<long>(rng() % 9) - 4));
        Poly d;
        while (d.is_zero()) {
            d = Poly();
            for (int k = 0; k <= static_cast<int>(rng() % 2); ++k)
                d.set_coeff(k, mpz_class(static_cast<long>(rng() % 9) - 4));
        }
        return Scalar(p, d);
    };
    for (int trial = 0; trial < 100; ++trial) {
        Scalar a = rnd(), b = rnd();
        auto ea = a.eval(t0), eb = b.eval(t0);
        if (!ea || !eb) continue;
        auto es = (a + b).eval(t0);
        auto ep = (a * b).eval(t0);
        REQUIRE(es.has_value());
        REQUIRE(ep.has_value());
        CHECK(*es == *ea + *eb);
        CHECK(*ep == *ea * *eb);
    }
    // denominator vanishing at t0 reports nullopt
    Scalar bad(Poly(1), Poly::t_power(1) * Poly(5) - Poly(7));
    CHECK(!bad.eval(t0).has_value());
    CHECK(bad.eval(mpq_class(2)).has_value());
}

TEST_CASE("parser round trips and q expansion") {
    for (const char* s : {"t^4-1", "(t^4-1)/t^2", "-t", "3", "t^2/(t^4-1)", "0",
                          "(2*t^3+t-5)/(t^2+1)"}) {
        Scalar a = Scalar::parse(s);
        CHECK(Scalar::parse(a.str()) == a);
    }
    CHECK(Scalar::parse("q") == Scalar::t_pow(2));
    CHECK(Scalar::parse("q", 6) == Scalar::t_pow(6));
    CHECK(Scalar::parse("q^-1 * q") == Scalar(1));
    CHECK(Scalar::parse("7/5") == Scalar(7, 5));
    CHECK_THROWS_AS(Scalar::parse("t +"), ConfigError);
}

TEST_CASE("t -> 1/t substitution") {
    Scalar lam = Scalar::parse("t^2-t^-2");
    CHECK(lam.subst_t_inverse() == -lam);
    Scalar a = Scalar::parse("(t^3+2)/(t-1)");
    Scalar s = a.subst_t_inverse();
    // check via evaluation: s(2) == a(1/2)
    CHECK(*s.eval(mpq_class(2)) == *a.eval(mpq_class(1, 2)));
}
