#pragma once

#include <random>
#include <vector>

#include "pforms/exterior.hpp"
#include "pforms/form.hpp"
#include "pforms/polynomial.hpp"
#include "pforms/projective.hpp"

// Deterministic instance generators. Everything is driven by a
// std::mt19937_64 seeded explicitly, so a seed pins the whole instance on
// every platform.

namespace pforms {

using Rng = std::mt19937_64;

inline long rand_int(Rng& rng, long lo, long hi) { // inclusive
    return lo + long(rng() % (unsigned long)(hi - lo + 1));
}

inline Rational rand_rational(Rng& rng) {
    long num = rand_int(rng, -4, 4);
    long den = rand_int(rng, 1, 3);
    return rat(num, den);
}

inline Rational rand_nonzero_rational(Rng& rng) {
    Rational q = rand_rational(rng);
    return is_zero(q) ? rat(1) : q;
}

// sparse homogeneous polynomial of exact degree d (possibly zero)
inline Polynomial rand_homogeneous_poly(Rng& rng, int n, int d, int terms) {
    Polynomial p(n);
    for (int t = 0; t < terms; ++t) {
        Monomial m = Monomial::one(n);
        for (int i = 0; i < d; ++i) m.e[rand_int(rng, 0, n - 1)] += 1;
        p.add_term(m, rand_rational(rng));
    }
    return p;
}

inline Polynomial rand_linear(Rng& rng, int n, int vars_from, int vars_to) {
    Polynomial p(n);
    for (int i = vars_from; i < vars_to; ++i)
        p += Polynomial::variable(n, i) * rand_rational(rng);
    return p;
}

inline DifferentialForm rand_form(Rng& rng, int n, int r, int max_deg, int terms) {
    DifferentialForm f(n, r);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> idx;
        for (int i = 0; i < n && int(idx.size()) < r; ++i)
            if (rng() % 2 || n - i == r - int(idx.size())) idx.push_back(i);
        Polynomial p(n);
        int deg = int(rand_int(rng, 0, max_deg));
        Monomial m = Monomial::one(n);
        for (int d = 0; d < deg; ++d) m.e[rand_int(rng, 0, n - 1)] += 1;
        p.add_term(m, rand_rational(rng));
        f.add_term(MultiIndex(std::move(idx)), p);
    }
    return f;
}

inline DifferentialForm rand_homogeneous_form(Rng& rng, int n, int q, int s, int terms) {
    DifferentialForm f(n, q);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> idx;
        for (int i = 0; i < n && int(idx.size()) < q; ++i)
            if (rng() % 2 || n - i == q - int(idx.size())) idx.push_back(i);
        f.add_term(MultiIndex(std::move(idx)), rand_homogeneous_poly(rng, n, s, 1));
    }
    return f;
}

inline VectorField rand_vector_field(Rng& rng, int n, int max_deg) {
    std::vector<Polynomial> comps;
    for (int i = 0; i < n; ++i) {
        Polynomial p(n);
        Monomial m = Monomial::one(n);
        int deg = int(rand_int(rng, 0, max_deg));
        for (int d = 0; d < deg; ++d) m.e[rand_int(rng, 0, n - 1)] += 1;
        p.add_term(m, rand_rational(rng));
        comps.push_back(std::move(p));
    }
    return VectorField(std::move(comps));
}

// Invertible change built as a product of shears and swaps, so the inverse
// stays as small as the matrix itself.
inline LinearChange rand_change(Rng& rng, int n) {
    RatMatrix m = RatMatrix::identity(n);
    int ops = 2 * n;
    for (int o = 0; o < ops; ++o) {
        RatMatrix e = RatMatrix::identity(n);
        int i = int(rand_int(rng, 0, n - 1));
        int j = int(rand_int(rng, 0, n - 1));
        if (i == j) {
            e.at(i, i) = rand_int(rng, 0, 1) ? rat(1) : rat(-1);
        } else if (rand_int(rng, 0, 3) == 0) {
            e.at(i, i) = 0;
            e.at(j, j) = 0;
            e.at(i, j) = 1;
            e.at(j, i) = 1;
        } else {
            e.at(i, j) = rat(rand_int(rng, -2, 2));
        }
        m = m * e;
    }
    return LinearChange(std::move(m));
}

// closed degree-one 2-form supported on the first `m` coordinates, built as
// the differential of a random quadratic 1-form there
inline DifferentialForm rand_closed_block_form(Rng& rng, int n, int m, int terms) {
    DifferentialForm tau(n, 1);
    for (int t = 0; t < terms; ++t) {
        int c = int(rand_int(rng, 0, m - 1));
        Polynomial q(n);
        Monomial mon = Monomial::one(n);
        mon.e[rand_int(rng, 0, m - 1)] += 1;
        mon.e[rand_int(rng, 0, m - 1)] += 1;
        q.add_term(mon, rand_rational(rng));
        tau.add_term(MultiIndex(std::vector<int>{c}), q);
    }
    return exterior_derivative(tau);
}

// Instance for the reduction round trip: a random invertible change applied
// to (block form on C^{2k}) + sum_{i<k} dt_i ^ dh_i with t_i linear in the
// block and h_i quadratic in everything. Ground truth is not returned on
// purpose: reconstruction is the only contract.
inline DifferentialForm rand_darboux_instance(Rng& rng, int n, int k) {
    while (true) {
        DifferentialForm w = rand_closed_block_form(rng, n, 2 * k, 2);
        for (int i = 0; i < k; ++i) {
            Polynomial t = rand_linear(rng, n, 0, 2 * k);
            Polynomial h = rand_homogeneous_poly(rng, n, 2, 3);
            w += wedge(exterior_derivative(DifferentialForm::from_polynomial(t)),
                       exterior_derivative(DifferentialForm::from_polynomial(h)));
        }
        if (w.is_zero()) continue;
        return rand_change(rng, n).apply(w);
    }
}

struct RandomDistribution {
    Distribution dist;
    ClassificationCase ground_truth;
};

namespace random_detail {

// theta = (1/3)[i_R(block form) + sum(t_i dh_i - 2 h_i dt_i)] with k+1
// pairs whose t live in the first `block` coordinates; the h are quadratic
// in everything. One draw; the caller validates.
inline DifferentialForm draw_contact_theta(Rng& rng, int ambient, int block, int k) {
    DifferentialForm theta(ambient, 1);
    if (rand_int(rng, 0, 1)) {
        DifferentialForm block_form = rand_closed_block_form(rng, ambient, block, 2);
        if (!block_form.is_zero())
            theta += interior_product(radial_field(ambient), block_form);
    }
    std::vector<Polynomial> ts, hs;
    for (int i = 0; i <= k; ++i) {
        ts.push_back(rand_linear(rng, ambient, 0, block));
        hs.push_back(rand_homogeneous_poly(rng, ambient, 2, 3));
    }
    theta += contact_form(ts, hs);
    return theta * rat(1, 3);
}

} // namespace random_detail

// Degree-one distribution instances with a recorded ground-truth case.
// Contact case: k+1 pairs in the first 2k+2 of the n+1 ambient coordinates.
// Pullback case: a degree-one distribution drawn on C^{2k+2} and pulled
// back along a random full-rank linear map. Draws retry (bounded) until the
// validator accepts the instance at the requested class.
inline RandomDistribution random_distribution(ClassificationCase which, int k, int n,
                                              unsigned long seed) {
    if (2 * k + 1 > n) fail(errc::bad_argument, "need 2k+1 <= n");
    if (k < 1) fail(errc::bad_argument, "class must be at least 1");
    Rng rng(seed);
    int ambient = n + 1;
    int block = 2 * k + 2;
    for (int attempt = 0; attempt < 64; ++attempt) {
        try {
            if (which == ClassificationCase::contact) {
                DifferentialForm theta = random_detail::draw_contact_theta(rng, ambient, block, k);
                Distribution d = validate(theta);
                if (d.degree != 1 || d.class_k != k) continue;
                return {std::move(d), ClassificationCase::contact};
            }
            // pullback case: a small distribution on C^{2k+2}, screened
            // cheaply before the expensive ambient validation
            DifferentialForm theta_small = random_detail::draw_contact_theta(rng, block, block, k);
            Distribution small = validate(theta_small);
            if (small.degree != 1 || small.class_k != k) continue;
            RatMatrix s(block, ambient);
            for (int i = 0; i < block; ++i)
                for (int j = 0; j < ambient; ++j) s.at(i, j) = rat(rand_int(rng, -2, 2));
            if (s.rank() != block) continue;
            DifferentialForm theta = pullback_linear(theta_small, s);
            Distribution d = validate(theta);
            if (d.degree != 1 || d.class_k != k) continue;
            return {std::move(d), ClassificationCase::pullback};
        } catch (const Error&) {
            continue; // validator rejected the draw; take the next one
        }
    }
    fail(errc::bad_argument, "no valid distribution within the retry budget");
}

} // namespace pforms
