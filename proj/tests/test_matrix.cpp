#include "doctest.h"

#include <random>

#include "pforms/matrix.hpp"

using namespace pforms;

namespace {

RatMatrix random_invertible(std::mt19937_64& rng, int n) {
    while (true) {
        RatMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = rat(long(rng() % 7) - 3);
        if (m.is_invertible()) return m;
    }
}

RatMatrix random_skew(std::mt19937_64& rng, int n) {
    RatMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rational v = rat(long(rng() % 9) - 4, 1 + long(rng() % 2));
            a.at(i, j) = v;
            a.at(j, i) = -v;
        }
    return a;
}

} // namespace

TEST_CASE("inverse and determinant") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 25; ++iter) {
        int n = 1 + int(rng() % 5);
        RatMatrix m = random_invertible(rng, n);
        CHECK(m * m.inverse() == RatMatrix::identity(n));
        CHECK(m.inverse() * m == RatMatrix::identity(n));
    }
    RatMatrix s(2, 2);
    s.at(0, 0) = 1;
    s.at(1, 1) = 0;
    CHECK_THROWS_AS(s.inverse(), Error);
    CHECK(s.determinant() == rat(0));
}

TEST_CASE("solve_minimal") {
    RatMatrix a(2, 2);
    a.at(0, 0) = 1;
    a.at(0, 1) = 2;
    a.at(1, 0) = 2;
    a.at(1, 1) = 4;
    RatMatrix b(2, 1);
    b.at(0, 0) = 3;
    b.at(1, 0) = 6;
    auto x = solve_minimal(a, b);
    REQUIRE(x.has_value());
    // free variable pinned to zero by first-pivot elimination
    CHECK(x->at(0, 0) == rat(3));
    CHECK(x->at(1, 0) == rat(0));

    b.at(1, 0) = 7; // now inconsistent
    CHECK(!solve_minimal(a, b).has_value());
}

TEST_CASE("skew congruence normal form") {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 30; ++iter) {
        int n = 2 + int(rng() % 6);
        RatMatrix a = random_skew(rng, n);
        SkewNormalForm nf = skew_congruence_normal_form(a);
        CHECK(nf.change.is_invertible());
        RatMatrix j = nf.change.transposed() * a * nf.change;
        RatMatrix expected(n, n);
        for (int i = 0; i < nf.pairs; ++i) {
            expected.at(i, nf.pairs + i) = 1;
            expected.at(nf.pairs + i, i) = -1;
        }
        CHECK(j == expected);
    }
    // rank-deficient handcheck: dz1^dz2 + dz1^dz3 pattern
    RatMatrix a(3, 3);
    a.at(0, 1) = 1;
    a.at(1, 0) = -1;
    a.at(0, 2) = 1;
    a.at(2, 0) = -1;
    SkewNormalForm nf = skew_congruence_normal_form(a);
    CHECK(nf.pairs == 1);
    RatMatrix j = nf.change.transposed() * a * nf.change;
    CHECK(j.at(0, 1) == rat(1));
    CHECK(j.at(1, 0) == rat(-1));
    for (int i = 0; i < 3; ++i)
        for (int jj = 0; jj < 3; ++jj)
            if (!((i == 0 && jj == 1) || (i == 1 && jj == 0))) CHECK(pforms::is_zero(j.at(i, jj)));
}
