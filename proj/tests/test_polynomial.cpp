#include "doctest.h"

#include <random>

#include "pforms/polynomial.hpp"

#include "test_support.hpp"

using namespace pforms;
using namespace testsup;

namespace {

Polynomial random_poly(std::mt19937_64& rng, int n, int max_deg, int max_terms) {
    Polynomial p(n);
    int terms = 1 + int(rng() % max_terms);
    for (int t = 0; t < terms; ++t) {
        Monomial m = Monomial::one(n);
        int deg = int(rng() % (max_deg + 1));
        for (int d = 0; d < deg; ++d) m.e[rng() % n] += 1;
        long num = long(rng() % 9) - 4;
        long den = 1 + long(rng() % 3);
        if (num != 0) p.add_term(m, rat(num, den));
    }
    return p;
}

} // namespace

TEST_CASE("arithmetic basics") {
    int n = 2;
    CHECK((z(n, 1) + (-z(n, 1))).is_zero()); // additive inverse
    CHECK((z(n, 1) + z(n, 2)) * (z(n, 1) - z(n, 2)) ==
          mono(n, {2, 0}) - mono(n, {0, 2})); // difference of squares
    // expansion oracle for power: (z1+z2)^2 = z1^2 + 2 z1 z2 + z2^2
    Polynomial p = z(n, 1) + z(n, 2);
    Polynomial expected = mono(n, {2, 0}) + mono(n, {1, 1}, 2) + mono(n, {0, 2});
    CHECK(p.pow(2) == expected);
    CHECK(p.pow(2) == p * p);
    CHECK(p.pow(0) == c(n, 1));
}

TEST_CASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(z(2, 1) + z(3, 1), Error);
    CHECK_THROWS_AS(z(2, 1) * z(3, 1), Error);
}

TEST_CASE("differentiate") {
    int n = 2;
    // d(z1^2 z2)/dz1 = 2 z1 z2
    CHECK(mono(n, {2, 1}).differentiate(0) == mono(n, {1, 1}, 2));
    CHECK(z(n, 2).differentiate(0).is_zero());
    // d(z1^2 + 3 z1 z2)/dz2 = 3 z1
    CHECK((mono(n, {2, 0}) + mono(n, {1, 1}, 3)).differentiate(1) == z(n, 1) * rat(3));
    CHECK_THROWS_AS(z(n, 1).differentiate(5), Error);
}

TEST_CASE("homogeneous components") {
    int n = 2;
    Polynomial p = z(n, 1) + mono(n, {1, 1});
    CHECK(p.homogeneous_component(2) == mono(n, {1, 1}));
    CHECK(p.homogeneous_component(0).is_zero());
    Polynomial q = (z(n, 1) + z(n, 2)).pow(2);
    CHECK(q.homogeneous_component(2) == q);
}

TEST_CASE("substitute_linear") {
    int n = 2;
    CHECK(substitute_linear(z(n, 1), RatMatrix::identity(n)) == z(n, 1));
    RatMatrix swap(n, n);
    swap.at(0, 1) = 1;
    swap.at(1, 0) = 1;
    CHECK(substitute_linear(z(n, 1), swap) == z(n, 2));
    // row (1,1): z1 -> z1+z2, checked against the expansion oracle
    RatMatrix m = RatMatrix::identity(n);
    m.at(0, 1) = 1;
    CHECK(substitute_linear(mono(n, {2, 0}), m) == (z(n, 1) + z(n, 2)).pow(2));
    RatMatrix singular(n, n);
    CHECK_THROWS_AS(substitute_linear(z(n, 1), singular), Error);
}

TEST_CASE("evaluate") {
    int n = 2;
    CHECK(mono(n, {1, 1}).evaluate({rat(2), rat(3)}) == rat(6));
    CHECK(Polynomial::zero(n).evaluate({rat(7), rat(9)}) == rat(0));
    CHECK((mono(n, {2, 0}) - z(n, 2)).evaluate({rat(3), rat(4)}) == rat(5));
    CHECK_THROWS_AS(z(n, 1).evaluate({rat(1)}), Error);
}

TEST_CASE("gcd") {
    int n = 3;
    CHECK(gcd(mono(n, {1, 1, 0}), mono(n, {1, 0, 1})) == z(n, 1));
    CHECK(gcd(z(n, 1) + z(n, 2), z(n, 1) - z(n, 2)) == c(n, 1));
    // factorization oracle: both inputs built from the factor z1+z2
    Polynomial s = z(n, 1) + z(n, 2);
    Polynomial d = z(n, 1) - z(n, 2);
    CHECK(gcd(s * d, s * s) == s);
    CHECK_THROWS_AS(gcd_many({Polynomial::zero(n), Polynomial::zero(n)}), Error);
    // normalization: leading coefficient 1 under graded-lex
    CHECK(gcd(s * s * rat(4), s * d * rat(6, 5)) == s);
}

TEST_CASE("gcd divides inputs exactly") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 40; ++iter) {
        int n = 2 + int(rng() % 2);
        Polynomial a = random_poly(rng, n, 2, 3);
        Polynomial b = random_poly(rng, n, 2, 3);
        Polynomial f = random_poly(rng, n, 2, 2);
        if ((a * f).is_zero() && (b * f).is_zero()) continue;
        Polynomial g = gcd(a * f, b * f);
        if (!(a * f).is_zero()) CHECK(divide_exact(a * f, g).has_value());
        if (!(b * f).is_zero()) CHECK(divide_exact(b * f, g).has_value());
        if (!f.is_zero() && !a.is_zero() && !b.is_zero()) {
            // the common factor must divide the gcd
            CHECK(divide_exact(g, f * (1 / f.leading_coefficient())).has_value());
        }
    }
}

TEST_CASE("ring laws on random instances") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 1 + int(rng() % 4);
        Polynomial a = random_poly(rng, n, 3, 4);
        Polynomial b = random_poly(rng, n, 3, 4);
        Polynomial cc = random_poly(rng, n, 3, 4);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + cc == a + (b + cc));
        CHECK((a * b) * cc == a * (b * cc));
        CHECK(a * (b + cc) == a * b + a * cc);
        CHECK(a.differentiate(0).differentiate(n - 1) ==
              a.differentiate(n - 1).differentiate(0));
        // substitution is a ring homomorphism
        RatMatrix m = RatMatrix::identity(n);
        do {
            if (n >= 2) {
                m.at(0, 1) = rat(long(rng() % 5) - 2);
                m.at(n - 1, 0) = rat(long(rng() % 5) - 2);
            }
        } while (!m.is_invertible());
        CHECK(substitute_linear(a * b, m) ==
              substitute_linear(a, m) * substitute_linear(b, m));
        CHECK(substitute_linear(substitute_linear(a, m), m.inverse()) == a);
        // grading: sum of homogeneous components reassembles the polynomial
        Polynomial sum(n);
        auto dg = a.degree();
        for (int d = 0; dg && d <= *dg; ++d) sum += a.homogeneous_component(d);
        CHECK(sum == a);
    }
}

TEST_CASE("degree sentinel") {
    Polynomial zero(3);
    CHECK(!zero.degree().has_value());
    CHECK(degree_less(zero.degree(), std::optional<int>(0)));
    CHECK(!degree_less(std::optional<int>(0), zero.degree()));
    CHECK(!degree_less(zero.degree(), zero.degree()));
}
