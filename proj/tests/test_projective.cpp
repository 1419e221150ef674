#include "doctest.h"

#include "pforms/projective.hpp"
#include "pforms/random_gen.hpp"

#include "test_support.hpp"

using namespace pforms;
using namespace testsup;

namespace {

// the contact distribution on P^3 used as the worked example everywhere:
// theta = 2 z1 z2 dz2 - 2 z2^2 dz1 + 2 z3 z4 dz4 - 2 z4^2 dz3
DifferentialForm p3_contact_theta() {
    int n = 4;
    return term(mono(n, {1, 1, 0, 0}, 2), {2}) - term(mono(n, {0, 2, 0, 0}, 2), {1}) +
           term(mono(n, {0, 0, 1, 1}, 2), {4}) - term(mono(n, {0, 0, 0, 2}, 2), {3});
}

} // namespace

TEST_CASE("validate") {
    SUBCASE("smallest twisted form") {
        DifferentialForm theta = term(z(2, 1), {2}) - term(z(2, 2), {1});
        Distribution d = validate(theta);
        CHECK(d.degree == 0);
        CHECK(d.class_k == 0);
        CHECK(d.projective_dim == 1);
    }
    SUBCASE("euler condition") {
        CHECK_THROWS_AS(validate(term(mono(2, {2, 0}), {2})), Error);
    }
    SUBCASE("common factor") {
        DifferentialForm theta =
            term(mono(2, {2, 0}), {2}) - term(mono(2, {1, 1}), {1}); // z1 (z1 dz2 - z2 dz1)
        CHECK_THROWS_AS(validate(theta), Error);
    }
    SUBCASE("mixed degrees") {
        DifferentialForm theta = term(z(2, 1), {2}) - term(z(2, 2), {1}) +
                                 term(mono(2, {1, 1}), {2});
        CHECK_THROWS_AS(validate(theta), Error);
    }
}

TEST_CASE("class of the P^3 example") {
    Distribution d = validate(p3_contact_theta());
    CHECK(d.degree == 1);
    CHECK(d.class_k == 1);
    // derived identities, re-checked directly
    DifferentialForm dtheta = exterior_derivative(d.theta);
    CHECK(dtheta == term(z(4, 2) * rat(6), {1, 2}) + term(z(4, 4) * rat(6), {3, 4}));
    CHECK(!wedge_power(dtheta, 2).is_zero());
    CHECK(wedge_power(dtheta, 3).is_zero());
    CHECK(interior_product(radial_field(4), dtheta) == d.theta * rat(3));
}

TEST_CASE("class is invariant under pullback to more variables") {
    Distribution d = validate(p3_contact_theta());
    RatMatrix proj(4, 5);
    for (int i = 0; i < 4; ++i) proj.at(i, i) = 1;
    Distribution lifted = validate(pullback_linear(d.theta, proj));
    CHECK(lifted.class_k == 1);
    CHECK(lifted.degree == 1);
}

TEST_CASE("contact_form") {
    int n = 2;
    SUBCASE("basic pair") {
        auto out = contact_form({z(n, 1)}, {mono(n, {0, 2})});
        CHECK(out == term(mono(n, {1, 1}, 2), {2}) - term(mono(n, {0, 2}, 2), {1}));
    }
    SUBCASE("aligned pair cancels") {
        CHECK(contact_form({z(n, 1)}, {mono(n, {2, 0})}).is_zero());
    }
    SUBCASE("radial contraction vanishes and d scales") {
        Rng rng(8);
        for (int iter = 0; iter < 15; ++iter) {
            int nn = 3 + int(rand_int(rng, 0, 3));
            std::vector<Polynomial> ts, hs;
            DifferentialForm sum_dtdh(nn, 2);
            for (int i = 0; i < 2; ++i) {
                ts.push_back(rand_linear(rng, nn, 0, nn));
                hs.push_back(rand_homogeneous_poly(rng, nn, 2, 2));
                sum_dtdh += wedge(
                    exterior_derivative(DifferentialForm::from_polynomial(ts.back())),
                    exterior_derivative(DifferentialForm::from_polynomial(hs.back())));
            }
            DifferentialForm cf = contact_form(ts, hs);
            if (!cf.is_zero())
                CHECK(interior_product(radial_field(nn), cf).is_zero());
            CHECK(exterior_derivative(cf) == sum_dtdh * Rational(3));
        }
    }
    SUBCASE("degree mismatch is rejected") {
        CHECK_THROWS_AS(contact_form({mono(n, {2, 0})}, {mono(n, {0, 2})}), Error);
    }
}

TEST_CASE("classify the P^3 contact example") {
    Distribution d = validate(p3_contact_theta());
    Classification c = classify(d);
    CHECK(c.variant == ClassificationCase::contact);
    CHECK(c.class_k == 1);
    REQUIRE(c.alpha.has_value());
    CHECK(c.alpha->is_zero());
    CHECK(c.pure_contact);
    REQUIRE(c.t.size() == 2);
    // the recorded gauge lands exactly on t = (z1, z3), h = (3 z2^2, 3 z4^2)
    CHECK(c.t[0] == z(4, 1));
    CHECK(c.t[1] == z(4, 3));
    CHECK(c.h[0] == mono(4, {0, 2, 0, 0}, 3));
    CHECK(c.h[1] == mono(4, {0, 0, 0, 2}, 3));
    CHECK(reconstruct(c) == d.theta);
    // the reconstruction identity, expanded by hand
    CHECK(contact_form(c.t, c.h) == d.theta * Rational(3));
}

TEST_CASE("classify rejects out-of-scope inputs") {
    // degree 0
    DifferentialForm theta0 = term(z(2, 1), {2}) - term(z(2, 2), {1});
    CHECK_THROWS_AS(classify(validate(theta0)), Error);
    // class 0 at degree 1: an integrable example dz of (z1 z2) style
    // theta = i_R(d z1 ^ d(z2 z3)) has class 0
    int n = 3;
    DifferentialForm w = wedge(dz(n, 1), exterior_derivative(
                                             DifferentialForm::from_polynomial(mono(n, {0, 1, 1}))));
    DifferentialForm theta = interior_product(radial_field(n), w) * rat(1, 3);
    Distribution d = validate(theta);
    CHECK(d.class_k == 0);
    CHECK_THROWS_AS(classify(d), Error);
}

TEST_CASE("random distributions validate and classify") {
    int done_contact = 0, done_pullback = 0;
    unsigned long seed = 100;
    while (done_contact < 8) {
        int k = 1 + int(seed % 2);
        int n = 2 * k + 1 + int(seed % 3);
        auto rd = random_distribution(ClassificationCase::contact, k, n, seed);
        ++seed;
        Classification c = classify(rd.dist);
        CHECK(reconstruct(c) == rd.dist.theta);
        // derived identities per instance
        DifferentialForm dtheta = exterior_derivative(rd.dist.theta);
        CHECK(interior_product(radial_field(rd.dist.theta.vars()), dtheta) ==
              rd.dist.theta * Rational(3));
        ++done_contact;
    }
    seed = 500;
    while (done_pullback < 5) {
        int k = 1 + int(seed % 2);
        int n = 2 * k + 2 + int(seed % 2);
        auto rd = random_distribution(ClassificationCase::pullback, k, n, seed);
        ++seed;
        Classification c = classify(rd.dist);
        CHECK(reconstruct(c) == rd.dist.theta);
        ++done_pullback;
    }
}

TEST_CASE("the example on P^5 with two dummy variables still reconstructs") {
    RatMatrix proj(4, 6);
    for (int i = 0; i < 4; ++i) proj.at(i, i) = 1;
    Distribution d = validate(pullback_linear(p3_contact_theta(), proj));
    CHECK(d.class_k == 1);
    Classification c = classify(d);
    CHECK(reconstruct(c) == d.theta);
    if (c.variant == ClassificationCase::pullback) CHECK(c.g_form->vars() == 4);
}

TEST_CASE("degenerate classification data reconstructs to zero") {
    Classification empty{ClassificationCase::contact,
                         LinearChange::identity(3),
                         1,
                         std::nullopt,
                         std::nullopt,
                         DifferentialForm::zero(3, 1),
                         {},
                         {},
                         true};
    DifferentialForm zero = reconstruct(empty);
    CHECK(zero.is_zero());
    CHECK_THROWS_AS(validate(zero), Error); // rejected upstream
}

TEST_CASE("random_distribution rejects impossible dimensions") {
    CHECK_THROWS_AS(random_distribution(ClassificationCase::contact, 2, 4, 1), Error);
}

TEST_CASE("classify is stable under linear changes of the input") {
    Rng rng(4242);
    Distribution base = validate(p3_contact_theta());
    for (int iter = 0; iter < 10; ++iter) {
        LinearChange ch = rand_change(rng, 4);
        Distribution moved = validate(ch.apply(base.theta));
        CHECK(moved.class_k == base.class_k);
        CHECK(moved.degree == base.degree);
        Classification c = classify(moved);
        CHECK(reconstruct(c) == moved.theta);
    }
}
