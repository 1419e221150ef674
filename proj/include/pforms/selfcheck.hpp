#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "pforms/darboux.hpp"
#include "pforms/parser.hpp"
#include "pforms/printer.hpp"
#include "pforms/projective.hpp"
#include "pforms/random_gen.hpp"

// Seeded invariant suites, runnable from the command line. Each suite
// checks one family of exact laws on generated instances and reports a
// single pass/fail verdict with its case count and timing.

namespace pforms {

struct SuiteResult {
    std::string name;
    int cases = 0;
    bool passed = false;
    long ms = 0;
    std::string detail; // first failure, if any
};

namespace selfcheck_detail {

using Check = std::function<void(Rng&, int)>; // throws std::runtime_error on failure

inline void require(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error(what);
}

inline void exterior_laws(Rng& rng, int) {
    int n = 2 + int(rand_int(rng, 0, 4));
    int ra = int(rand_int(rng, 0, std::min(n, 3)));
    int rb = int(rand_int(rng, 0, std::min(n, 3)));
    DifferentialForm a = rand_form(rng, n, ra, 3, 3);
    DifferentialForm b = rand_form(rng, n, rb, 3, 3);
    require(exterior_derivative(exterior_derivative(a)).is_zero(), "d(d(a)) != 0");
    DifferentialForm ab = wedge(a, b), ba = wedge(b, a);
    if ((ra * rb) % 2 == 1) ba = -ba;
    require(ab == ba, "graded commutativity");
    DifferentialForm rhs = wedge(exterior_derivative(a), b);
    DifferentialForm adb = wedge(a, exterior_derivative(b));
    rhs += (ra % 2 == 1) ? -adb : adb;
    require(exterior_derivative(ab) == rhs, "Leibniz rule for d");
    VectorField x = rand_vector_field(rng, n, 2);
    if (ra >= 1 && rb >= 1) {
        DifferentialForm li = interior_product(x, ab);
        DifferentialForm ri = wedge(interior_product(x, a), b);
        DifferentialForm air = wedge(a, interior_product(x, b));
        ri += (ra % 2 == 1) ? -air : air;
        require(li == ri, "Leibniz rule for i_X");
    }
    if (ra >= 2)
        require(interior_product(x, interior_product(x, a)).is_zero(), "i_X o i_X != 0");
}

inline void homogeneity_identity(Rng& rng, int) {
    int n = 2 + int(rand_int(rng, 0, 3));
    int q = 1 + int(rand_int(rng, 0, std::min(n, 3) - 1));
    int s = int(rand_int(rng, 0, 3));
    DifferentialForm eta = rand_homogeneous_form(rng, n, q, s, 3);
    if (eta.is_zero()) return;
    require(jouanolou_identity_holds(eta), "i_R d(eta) + d(i_R eta) != (q+s) eta");
}

inline void darboux_round_trip(Rng& rng, int) {
    int k = 1 + int(rand_int(rng, 0, 1));
    int n = std::max(2 * k, 4 + int(rand_int(rng, 0, 3)));
    DifferentialForm w = rand_darboux_instance(rng, n, k);
    auto [nf, trace] = normal_form(w);
    require(reconstruct(nf) == w, "reconstruction mismatch");
    if (nf.variant == DarbouxVariant::contact_sum) {
        for (const auto& t : nf.t)
            require(t.uses_only_vars_below(2 * nf.k), "t leaves the x,y block");
        for (const auto& h : nf.h)
            require(h.is_zero() || h.is_homogeneous(2), "h is not quadratic");
        require(is_closed(*nf.zeta) && differentials_within_first(*nf.zeta, 2 * nf.k) &&
                    coefficients_use_only_first(*nf.zeta, 2 * nf.k),
                "zeta is not an x,y-only closed form");
    }
}

inline void medeiros_round_trip(Rng& rng, int) {
    int n = 2 + int(rand_int(rng, 0, 3));
    Polynomial q = rand_homogeneous_poly(rng, n, 2, 3);
    Polynomial t = rand_linear(rng, n, 0, n);
    DifferentialForm w =
        wedge(exterior_derivative(DifferentialForm::from_polynomial(q)),
              exterior_derivative(DifferentialForm::from_polynomial(t)));
    if (w.is_zero()) return;
    auto [q2, t2] = medeiros_decompose(w);
    require(wedge(exterior_derivative(DifferentialForm::from_polynomial(q2)),
                  exterior_derivative(DifferentialForm::from_polynomial(t2))) == w,
            "dq ^ dt mismatch");
}

inline void classify_round_trip(Rng& rng, int iter) {
    int k = 1 + int(rand_int(rng, 0, 1));
    int n = 2 * k + 1 + int(rand_int(rng, 0, 2));
    auto which = iter % 3 == 0 ? ClassificationCase::pullback : ClassificationCase::contact;
    RandomDistribution rd = random_distribution(which, k, n, rng());
    Classification c = classify(rd.dist);
    require(reconstruct(c) == rd.dist.theta, "classification reconstruction mismatch");
    DifferentialForm dtheta = exterior_derivative(rd.dist.theta);
    require(interior_product(radial_field(rd.dist.theta.vars()), dtheta) ==
                rd.dist.theta * Rational(3),
            "i_R d(theta) != 3 theta");
}

inline void parser_round_trip(Rng& rng, int) {
    int n = 1 + int(rand_int(rng, 0, 5));
    int r = int(rand_int(rng, 0, std::min(n, 3)));
    DifferentialForm f = rand_form(rng, n, r, 3, 4);
    require(parse_form(print_form(f), n) == f, "parse(print(f)) != f");
    require(parse_form(print_form_document(f)) == f, "document round trip failed");
}

inline void ring_laws(Rng& rng, int) {
    int n = 1 + int(rand_int(rng, 0, 3));
    Polynomial a = rand_homogeneous_poly(rng, n, int(rand_int(rng, 0, 3)), 3);
    Polynomial b = rand_homogeneous_poly(rng, n, int(rand_int(rng, 0, 3)), 3);
    Polynomial c = rand_homogeneous_poly(rng, n, int(rand_int(rng, 0, 3)), 3);
    require(a * b == b * a && (a + b) + c == a + (b + c) && a * (b + c) == a * b + a * c,
            "ring law failed");
    if (!a.is_zero() && !b.is_zero()) {
        Polynomial g = gcd(a * b, b * b);
        require(divide_exact(a * b, g).has_value() && divide_exact(b * b, g).has_value(),
                "gcd does not divide");
    }
}

} // namespace selfcheck_detail

inline std::vector<SuiteResult> run_selfcheck(unsigned long seed, int cases) {
    using namespace selfcheck_detail;
    struct Suite {
        const char* name;
        Check check;
        int scale; // relative share of `cases`
    };
    const Suite suites[] = {
        {"polynomial ring laws", ring_laws, 1},
        {"exterior calculus laws", exterior_laws, 1},
        {"homogeneity identity", homogeneity_identity, 1},
        {"darboux round trip", darboux_round_trip, 4},
        {"medeiros decomposition", medeiros_round_trip, 2},
        {"classification round trip", classify_round_trip, 4},
        {"parser round trip", parser_round_trip, 1},
    };
    std::vector<SuiteResult> results;
    for (const auto& s : suites) {
        SuiteResult r;
        r.name = s.name;
        r.cases = std::max(1, cases / s.scale);
        Rng rng(seed);
        auto t0 = std::chrono::steady_clock::now();
        r.passed = true;
        for (int i = 0; i < r.cases; ++i) {
            try {
                s.check(rng, i);
            } catch (const std::exception& e) {
                r.passed = false;
                r.detail = std::string(e.what()) + " (case " + std::to_string(i) + ")";
                break;
            }
        }
        r.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
                   .count();
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace pforms
