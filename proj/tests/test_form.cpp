#include "doctest.h"

#include <random>

#include "pforms/exterior.hpp"
#include "pforms/form.hpp"

#include "test_support.hpp"

using namespace pforms;
using namespace testsup;

namespace {

Polynomial rand_poly(std::mt19937_64& rng, int n, int max_deg) {
    Polynomial p(n);
    int terms = 1 + int(rng() % 3);
    for (int t = 0; t < terms; ++t) {
        Monomial m = Monomial::one(n);
        int deg = int(rng() % (max_deg + 1));
        for (int d = 0; d < deg; ++d) m.e[rng() % n] += 1;
        long num = long(rng() % 9) - 4;
        if (num != 0) p.add_term(m, rat(num, 1 + long(rng() % 2)));
    }
    return p;
}

DifferentialForm rand_form(std::mt19937_64& rng, int n, int r, int max_deg) {
    DifferentialForm f(n, r);
    int terms = 1 + int(rng() % 3);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> idx;
        for (int i = 0; i < n && int(idx.size()) < r; ++i)
            if (rng() % 2 || n - i == r - int(idx.size())) idx.push_back(i);
        if (int(idx.size()) < r) continue;
        f.add_term(MultiIndex(std::move(idx)), rand_poly(rng, n, max_deg));
    }
    return f;
}

VectorField rand_field(std::mt19937_64& rng, int n, int max_deg) {
    std::vector<Polynomial> comps;
    for (int i = 0; i < n; ++i) comps.push_back(rand_poly(rng, n, max_deg));
    return VectorField(std::move(comps));
}

} // namespace

TEST_CASE("wedge basics") {
    int n = 3;
    CHECK(wedge(dz(n, 1), dz(n, 1)).is_zero());
    CHECK(wedge(dz(n, 2), dz(n, 1)) == -wedge(dz(n, 1), dz(n, 2)));
    CHECK(wedge(term(z(n, 1), {1}), term(z(n, 2), {2})) == term(z(n, 1) * z(n, 2), {1, 2}));
    CHECK_THROWS_AS(wedge(dz(2, 1), dz(3, 1)), Error);
    // degree overflow: still returned as the zero form of the right degree
    DifferentialForm w = wedge(wedge(dz(n, 1), dz(n, 2)), wedge(dz(n, 3), dz(n, 1)));
    CHECK(w.is_zero());
    CHECK(w.form_degree() == 4);
}

TEST_CASE("exterior derivative basics") {
    int n = 3;
    CHECK(exterior_derivative(term(z(n, 1), {2})) == term(c(n, 1), {1, 2}));
    CHECK(exterior_derivative(term(c(n, 1), {1, 2})).is_zero());
    CHECK(exterior_derivative(term(z(n, 1), {1, 2})).is_zero()); // dz1^dz1^dz2 = 0
}

TEST_CASE("interior product basics") {
    int n = 3;
    VectorField r = radial_field(n);
    CHECK(interior_product(r, dz(n, 1)) == DifferentialForm::from_polynomial(z(n, 1)));
    CHECK(interior_product(r, term(c(n, 1), {1, 2})) ==
          term(z(n, 1), {2}) - term(z(n, 2), {1}));
    CHECK(interior_product(r, term(z(n, 3), {1, 2})) ==
          term(z(n, 1) * z(n, 3), {2}) - term(z(n, 2) * z(n, 3), {1}));
    CHECK_THROWS_AS(interior_product(r, DifferentialForm::from_polynomial(z(n, 1))), Error);
}

TEST_CASE("radial field") {
    CHECK(radial_field(1).components[0] == z(1, 1));
    VectorField r3 = radial_field(3);
    for (int i = 0; i < 3; ++i) CHECK(r3.components[i] == z(3, i + 1));
    // Euler-orthogonality prototype
    int n = 2;
    DifferentialForm w = term(z(n, 1), {2}) - term(z(n, 2), {1});
    CHECK(interior_product(radial_field(n), w).is_zero());
}

TEST_CASE("form degree") {
    int n = 2;
    CHECK(*term(mono(n, {2, 0}), {1}).degree() == 2);
    CHECK(*term(c(n, 1), {1, 2}).degree() == 0);
    CHECK(*(term(z(n, 1), {1}) + term(mono(n, {0, 2}), {2})).degree() == 2);
    CHECK(!DifferentialForm::zero(n, 1).degree().has_value());
}

TEST_CASE("wedge power") {
    int n = 4;
    DifferentialForm w = term(c(n, 1), {1, 2}) + term(c(n, 1), {3, 4});
    CHECK(wedge_power(w, 2) == term(c(n, 2), {1, 2, 3, 4}));
    CHECK(wedge_power(term(c(n, 1), {1, 2}), 2).is_zero());
    CHECK(wedge_power(w, 0) == DifferentialForm::from_polynomial(c(n, 1)));
}

TEST_CASE("pullback along linear maps") {
    // projection C^3 -> C^2 dropping z3
    RatMatrix proj(2, 3);
    proj.at(0, 0) = 1;
    proj.at(1, 1) = 1;
    CHECK(pullback_linear(dz(2, 1), proj) == dz(3, 1));
    // swap map z -> (z2, z1) on C^2
    RatMatrix swap(2, 2);
    swap.at(0, 1) = 1;
    swap.at(1, 0) = 1;
    CHECK(pullback_linear(term(z(2, 1), {2}), swap) == term(z(2, 2), {1}));
    // z -> (z1+z3, z2): dz1^dz2 pulls back to dz1^dz2 + dz3^dz2
    RatMatrix m(2, 3);
    m.at(0, 0) = 1;
    m.at(0, 2) = 1;
    m.at(1, 1) = 1;
    CHECK(pullback_linear(term(c(2, 1), {1, 2}), m) ==
          term(c(3, 1), {1, 2}) - term(c(3, 1), {2, 3}));
    CHECK_THROWS_AS(pullback_linear(dz(3, 1), swap), Error);
}

TEST_CASE("exterior calculus laws on random forms") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 2 + int(rng() % 5);
        int ra = int(rng() % std::min(n + 1, 4));
        int rb = int(rng() % std::min(n + 1, 4));
        DifferentialForm a = rand_form(rng, n, ra, 3);
        DifferentialForm b = rand_form(rng, n, rb, 3);
        // d o d = 0
        CHECK(exterior_derivative(exterior_derivative(a)).is_zero());
        // graded commutativity
        DifferentialForm ab = wedge(a, b);
        DifferentialForm ba = wedge(b, a);
        if ((ra * rb) % 2 == 1) ba = -ba;
        CHECK(ab == ba);
        // Leibniz for d
        DifferentialForm lhs = exterior_derivative(ab);
        DifferentialForm rhs = wedge(exterior_derivative(a), b);
        DifferentialForm adb = wedge(a, exterior_derivative(b));
        rhs += (ra % 2 == 1) ? -adb : adb;
        CHECK(lhs == rhs);
        // Leibniz for i_X and i_X o i_X = 0
        VectorField x = rand_field(rng, n, 2);
        if (ra >= 1 && rb >= 1) {
            DifferentialForm li = interior_product(x, ab);
            DifferentialForm ri = wedge(interior_product(x, a), b);
            DifferentialForm air = wedge(a, interior_product(x, b));
            ri += (ra % 2 == 1) ? -air : air;
            CHECK(li == ri);
        }
        if (ra >= 2) CHECK(interior_product(x, interior_product(x, a)).is_zero());
        // pullback commutes with d and wedge
        int m = 2 + int(rng() % 3);
        RatMatrix pm(n, m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) pm.at(i, j) = rat(long(rng() % 5) - 2);
        CHECK(pullback_linear(exterior_derivative(a), pm) ==
              exterior_derivative(pullback_linear(a, pm)));
        CHECK(pullback_linear(ab, pm) ==
              wedge(pullback_linear(a, pm), pullback_linear(b, pm)));
    }
}
