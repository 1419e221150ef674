#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pforms/darboux.hpp"
#include "pforms/errors.hpp"
#include "pforms/exterior.hpp"
#include "pforms/form.hpp"

// Codimension-one distributions on P^n presented by homogeneous 1-forms on
// C^{n+1}, and the classifier for degree one and class k >= 1: either the
// pullback of a distribution on P^{2k+1} under a linear rational map, or a
// contact-type presentation 3 theta = i_R(zeta-part) + sum(t_i dh_i -
// 2 h_i dt_i) with k+1 linear t_i and k+1 quadratic h_i.

namespace pforms {

// A valid degree-d distribution: theta on C^{n+1}, coefficients homogeneous
// of degree d+1, i_R theta = 0, gcd of the coefficients constant.
struct Distribution {
    int projective_dim = 0; // the n of P^n; theta lives on C^{n+1}
    DifferentialForm theta{0, 1};
    int degree = 0;
    int class_k = 0;
};

inline DifferentialForm distribution_derived_two_form(const Distribution& d) {
    return exterior_derivative(d.theta);
}

// Checks the three defining conditions and computes degree and class.
inline Distribution validate(const DifferentialForm& theta) {
    if (theta.form_degree() != 1) fail(errc::bad_argument, "a distribution needs a 1-form");
    if (theta.is_zero()) fail(errc::zero_input, "zero 1-form");
    auto s = theta.homogeneous_degree();
    if (!s || *s < 1)
        fail(errc::not_homogeneous, "coefficients must be homogeneous of degree at least 1");
    if (!interior_product(radial_field(theta.vars()), theta).is_zero())
        fail(errc::euler_condition_fails, "i_R theta != 0");
    std::vector<Polynomial> coeffs;
    for (const auto& [I, p] : theta.terms()) coeffs.push_back(p);
    if (!gcd_many(coeffs).is_constant())
        fail(errc::vanishes_in_codim_one, "coefficients share a non-constant factor");

    Distribution d;
    d.projective_dim = theta.vars() - 1;
    d.theta = theta;
    d.degree = *s - 1;

    // class: largest j with theta ^ (d theta)^j != 0
    DifferentialForm dtheta = exterior_derivative(theta);
    int k = 0;
    DifferentialForm power = DifferentialForm::from_polynomial(Polynomial::constant(theta.vars(), 1));
    while (true) {
        DifferentialForm next = wedge(power, dtheta);
        if (next.is_zero() || wedge(theta, next).is_zero()) break;
        power = std::move(next);
        ++k;
    }
    d.class_k = k;

    // the defining pair for k, plus the two consequences of the homogeneity
    // identity: (d theta)^{k+1} != 0 and (d theta)^{k+2} = 0
    if (wedge(theta, wedge_power(dtheta, k)).is_zero())
        fail(errc::internal_error, "class certificate failed");
    if (!wedge(theta, wedge_power(dtheta, k + 1)).is_zero())
        fail(errc::internal_error, "class upper certificate failed");
    if (wedge_power(dtheta, k + 1).is_zero())
        fail(errc::internal_error, "(d theta)^(k+1) vanished against the derived identity");
    if (!wedge_power(dtheta, k + 2).is_zero())
        fail(errc::internal_error, "(d theta)^(k+2) failed to vanish");
    return d;
}

inline int class_of(const Distribution& d) { return d.class_k; }

// sum_i (t_i dh_i - 2 h_i dt_i); contracts to zero against the radial field
// by homogeneity bookkeeping.
inline DifferentialForm contact_form(const std::vector<Polynomial>& t,
                                     const std::vector<Polynomial>& h) {
    if (t.size() != h.size()) fail(errc::dimension_mismatch, "contact pair count");
    if (t.empty()) fail(errc::bad_argument, "empty contact data");
    int n = t[0].vars();
    DifferentialForm out(n, 1);
    for (size_t i = 0; i < t.size(); ++i) {
        if (!t[i].is_zero() && !t[i].is_homogeneous(1))
            fail(errc::not_homogeneous, "t must be linear");
        if (!h[i].is_zero() && !h[i].is_homogeneous(2))
            fail(errc::not_homogeneous, "h must be quadratic");
        DifferentialForm dh = exterior_derivative(DifferentialForm::from_polynomial(h[i]));
        DifferentialForm dt = exterior_derivative(DifferentialForm::from_polynomial(t[i]));
        out += dh.scaled_by(t[i]) - (dt.scaled_by(h[i]) * Rational(2));
    }
    return out;
}

enum class ClassificationCase { pullback, contact };

// Result of the degree-one classifier. Everything is expressed in the
// original coordinates of theta; `change` records the adapted system.
struct Classification {
    ClassificationCase variant;
    LinearChange change;
    int class_k = 0;

    // pullback case: theta = pullback of g_form along rho (a (2k+2) x (n+1)
    // matrix of full rank); g_form presents a degree-one distribution on
    // P^{2k+1}
    std::optional<RatMatrix> rho;
    std::optional<DifferentialForm> g_form;

    // contact case: 3 theta = 3 alpha + sum_i (t_i dh_i - 2 h_i dt_i), with
    // alpha = (1/3) i_R zeta for the x,y-only zeta of the underlying normal
    // form; alpha = 0 exactly in the pure contact subcase
    std::optional<DifferentialForm> alpha;
    std::vector<Polynomial> t, h;
    bool pure_contact = false;
};

// Reassembles theta from classification data; exact equality with the
// original input is checked by classify before returning. Degenerate data
// (zero alpha, no contact pairs) reassembles to the zero form, which any
// upstream validation rejects.
inline DifferentialForm reconstruct(const Classification& c) {
    if (c.variant == ClassificationCase::pullback) {
        if (!c.rho || !c.g_form) fail(errc::bad_argument, "pullback case without rho data");
        return pullback_linear(*c.g_form, *c.rho);
    }
    if (!c.alpha) fail(errc::bad_argument, "contact case without alpha");
    DifferentialForm out = *c.alpha;
    if (!c.t.empty()) out += contact_form(c.t, c.h) * rat(1, 3);
    return out;
}

// Theorem-level classifier for degree one, class k >= 1: reduces d(theta)
// and contracts the normal form with the radial field.
inline Classification classify(const Distribution& dist) {
    if (dist.degree != 1) fail(errc::degree_not_one, "classifier needs degree one");
    if (dist.class_k == 0)
        fail(errc::class_zero,
             "class zero means an integrable foliation; degree-one foliations fall under "
             "Jouanolou's classification, outside this tool");

    int nvars = dist.theta.vars();
    DifferentialForm omega = exterior_derivative(dist.theta);
    auto [nf, trace] = normal_form(omega);
    if (nf.k != dist.class_k + 1)
        fail(errc::internal_error, "normal-form class disagrees with the distribution class");
    int block = 2 * nf.k; // 2k+2 distinguished coordinates

    Classification out{ClassificationCase::pullback, nf.change, dist.class_k,
                       std::nullopt, std::nullopt, std::nullopt, {}, {}, false};

    if (nf.variant == DarbouxVariant::linear_pullback) {
        // theta = (1/3) pullback of i_{R1} eta along (projection o change^-1)
        DifferentialForm g = interior_product(radial_field(block), *nf.eta) * rat(1, 3);
        RatMatrix proj(block, nvars);
        for (int i = 0; i < block; ++i) proj.at(i, i) = 1;
        out.rho = proj * nf.change.inverse_matrix();
        out.g_form = std::move(g);
        if (reconstruct(out) != dist.theta)
            fail(errc::internal_error, "pullback reconstruction mismatch");
        return out;
    }

    // contact case: transport t, h and alpha back to the original coordinates
    out.variant = ClassificationCase::contact;
    for (const auto& t : nf.t) out.t.push_back(nf.change.apply_inverse(t));
    for (const auto& h : nf.h) out.h.push_back(nf.change.apply_inverse(h));
    DifferentialForm alpha_u = interior_product(radial_field(nvars), *nf.zeta) * rat(1, 3);
    out.alpha = nf.change.apply_inverse(alpha_u);
    out.pure_contact = out.alpha->is_zero();
    if (reconstruct(out) != dist.theta)
        fail(errc::internal_error, "contact reconstruction mismatch");
    return out;
}

} // namespace pforms
