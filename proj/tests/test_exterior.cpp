#include "doctest.h"

#include <random>

#include "pforms/exterior.hpp"

#include "test_support.hpp"

using namespace pforms;
using namespace testsup;

namespace {

// homogeneous random form: every coefficient a single monomial of degree s
DifferentialForm rand_homogeneous(std::mt19937_64& rng, int n, int q, int s) {
    DifferentialForm f(n, q);
    int terms = 1 + int(rng() % 3);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> idx;
        for (int i = 0; i < n && int(idx.size()) < q; ++i)
            if (rng() % 2 || n - i == q - int(idx.size())) idx.push_back(i);
        if (int(idx.size()) < q) continue;
        Monomial m = Monomial::one(n);
        for (int d = 0; d < s; ++d) m.e[rng() % n] += 1;
        Polynomial p(n);
        long num = long(rng() % 9) - 4;
        if (num == 0) num = 1;
        p.add_term(m, rat(num));
        f.add_term(MultiIndex(std::move(idx)), p);
    }
    return f;
}

} // namespace

TEST_CASE("homogeneity identity") {
    std::mt19937_64 rng(31);
    int checked = 0;
    while (checked < 80) {
        int n = 2 + int(rng() % 4);
        int q = 1 + int(rng() % std::min(n, 3));
        int s = int(rng() % 4);
        DifferentialForm eta = rand_homogeneous(rng, n, q, s);
        if (eta.is_zero()) continue;
        CHECK(jouanolou_identity_holds(eta));
        ++checked;
    }
}

TEST_CASE("euler primitive") {
    int n = 2;
    // 2 z1 dz1 integrates to z1^2
    CHECK(euler_primitive(term(z(n, 1) * rat(2), {1})) ==
          DifferentialForm::from_polynomial(mono(n, {2, 0})));
    // constant symplectic form on C^2
    CHECK(euler_primitive(term(c(n, 1), {1, 2})) ==
          (term(z(n, 1), {2}) - term(z(n, 2), {1})) * rat(1, 2));
    CHECK(euler_primitive(term(z(n, 2), {1}) + term(z(n, 1), {2})) ==
          DifferentialForm::from_polynomial(mono(n, {1, 1})));
    // rejections
    CHECK_THROWS_AS(euler_primitive(term(z(n, 1), {2})), Error);          // not closed
    CHECK_THROWS_AS(euler_primitive(term(z(n, 1) + c(n, 1), {2})), Error); // mixed degrees
}

TEST_CASE("euler primitive inverts d on random closed forms") {
    std::mt19937_64 rng(77);
    int checked = 0;
    while (checked < 60) {
        int n = 2 + int(rng() % 4);
        int q = 1 + int(rng() % std::min(n, 3));
        int s = int(rng() % 3);
        DifferentialForm b = rand_homogeneous(rng, n, q - 1, s + 1);
        DifferentialForm a = exterior_derivative(b);
        if (a.is_zero()) continue;
        CHECK(exterior_derivative(euler_primitive(a)) == a);
        ++checked;
    }
}

TEST_CASE("class of a 2-form") {
    // z1 dz1^dz2 on C^3 has class 1
    CHECK(class_of_two_form(term(z(3, 1), {1, 2})) == 1);
    // 6 z2 dz1^dz2 + 6 z4 dz3^dz4 on C^4 has class 2; square checked by hand
    int n = 4;
    DifferentialForm w = term(z(n, 2) * rat(6), {1, 2}) + term(z(n, 4) * rat(6), {3, 4});
    CHECK(wedge_power(w, 2) == term(mono(n, {0, 1, 0, 1}, 72), {1, 2, 3, 4}));
    CHECK(class_of_two_form(w) == 2);
    CHECK_THROWS_AS(class_of_two_form(DifferentialForm::zero(3, 2)), Error);

    // invariance under an invertible change
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 10; ++iter) {
        RatMatrix m(n, n);
        do {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m.at(i, j) = rat(long(rng() % 5) - 2);
        } while (!m.is_invertible());
        CHECK(class_of_two_form(pullback_linear(w, m)) == 2);
    }
}

TEST_CASE("darboux basis at a point") {
    int n = 3;
    SUBCASE("already normal") {
        DifferentialForm w = term(c(n, 1), {1, 2});
        auto [change, k] = darboux_basis_at(w, {rat(0), rat(0), rat(0)});
        CHECK(k == 1);
        CHECK(pullback_linear(w, change.matrix()) == term(c(n, 1), {1, 2}));
    }
    SUBCASE("scaling") {
        DifferentialForm w = term(c(n, 2), {1, 2});
        auto [change, k] = darboux_basis_at(w, {rat(0), rat(0), rat(0)});
        CHECK(k == 1);
        CHECK(pullback_linear(w, change.matrix()) == term(c(n, 1), {1, 2}));
    }
    SUBCASE("rank-one pair with shared dx") {
        DifferentialForm w = term(c(n, 1), {1, 2}) + term(c(n, 1), {1, 3});
        auto [change, k] = darboux_basis_at(w, {rat(0), rat(0), rat(0)});
        CHECK(k == 1);
        CHECK(pullback_linear(w, change.matrix()) == term(c(n, 1), {1, 2}));
        // the new y1 coordinate is z2+z3
        std::vector<Rational> probe{rat(0), rat(1), rat(1)};
        CHECK(change.new_coordinates_of(probe)[1] == rat(2));
    }
    SUBCASE("zero value is rejected") {
        DifferentialForm w = term(z(n, 3), {1, 2});
        CHECK_THROWS_AS(darboux_basis_at(w, {rat(0), rat(0), rat(0)}), Error);
    }
}

TEST_CASE("darboux basis block form on random constant data") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 25; ++iter) {
        int n = 2 + int(rng() % 5);
        DifferentialForm w(n, 2);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                long num = long(rng() % 7) - 3;
                if (num != 0) w.add_term(MultiIndex(std::vector<int>{i, j}), c(n, num));
            }
        if (w.is_zero()) continue;
        auto [change, k] = darboux_basis_at(w, std::vector<Rational>(n, rat(0)));
        DifferentialForm normal = pullback_linear(w, change.matrix());
        DifferentialForm expected(n, 2);
        for (int i = 0; i < k; ++i)
            expected.add_term(MultiIndex(std::vector<int>{i, k + i}), c(n, 1));
        CHECK(normal == expected);
    }
}

TEST_CASE("linear change composition and inversion") {
    std::mt19937_64 rng(3);
    int n = 4;
    RatMatrix m(n, n);
    do {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = rat(long(rng() % 5) - 2);
    } while (!m.is_invertible());
    LinearChange ch(m);
    DifferentialForm w = term(z(n, 1), {1, 2}) + term(z(n, 3) * rat(2), {2, 4});
    CHECK(ch.apply_inverse(ch.apply(w)) == w);
    LinearChange sw = symplectic_swap(n, 2, {true, true});
    DifferentialForm j = term(c(n, 1), {1, 3}) + term(c(n, 1), {2, 4});
    CHECK(pullback_linear(j, sw.matrix()) == j);
}
