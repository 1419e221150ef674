#pragma once

#include <utility>
#include <vector>

#include "pforms/errors.hpp"
#include "pforms/form.hpp"
#include "pforms/matrix.hpp"

namespace pforms {

// Invertible linear substitution z = M u together with its cached inverse.
// apply() pulls a form back to the new coordinates, apply_inverse() returns
// it to the old ones.
class LinearChange {
public:
    explicit LinearChange(RatMatrix m) : m_(std::move(m)), m_inv_(m_.inverse()) {
        if (m_.rows() != m_.cols()) fail(errc::dimension_mismatch, "change matrix must be square");
    }

    static LinearChange identity(int n) { return LinearChange(RatMatrix::identity(n)); }

    int vars() const { return m_.rows(); }
    const RatMatrix& matrix() const { return m_; }
    const RatMatrix& inverse_matrix() const { return m_inv_; }

    DifferentialForm apply(const DifferentialForm& f) const { return pullback_linear(f, m_); }
    DifferentialForm apply_inverse(const DifferentialForm& f) const { return pullback_linear(f, m_inv_); }

    Polynomial apply(const Polynomial& p) const { return substitute_linear(p, m_); }
    Polynomial apply_inverse(const Polynomial& p) const { return substitute_linear(p, m_inv_); }

    // coordinates of the point that M maps to p, i.e. the new coordinates of p
    std::vector<Rational> new_coordinates_of(const std::vector<Rational>& p) const {
        return m_inv_.apply(p);
    }

    // substitution composition: first *this (z = M u), then inner (u = N v)
    LinearChange then(const LinearChange& inner) const { return LinearChange(m_ * inner.matrix()); }

private:
    RatMatrix m_;
    RatMatrix m_inv_;
};

// Checks the homogeneity identity i_R d(eta) + d(i_R eta) = (q+s) eta for a
// homogeneous q-form of coefficient degree s. Returns the two sides' sum and
// the scaled right side for callers that want to report them.
inline bool jouanolou_identity_holds(const DifferentialForm& eta) {
    auto s = eta.homogeneous_degree();
    if (!s) fail(errc::not_homogeneous, "form is not coefficient-homogeneous");
    int q = eta.form_degree();
    VectorField r = radial_field(eta.vars());
    DifferentialForm lhs = interior_product(r, exterior_derivative(eta));
    if (q > 0) lhs += exterior_derivative(interior_product(r, eta));
    return lhs == eta * Rational(q + *s);
}

// Explicit primitive of a closed coefficient-homogeneous form via the
// homogeneity identity: b = i_R(a) / (q+s) satisfies db = a exactly.
inline DifferentialForm euler_primitive(const DifferentialForm& a) {
    if (a.is_zero()) return DifferentialForm::zero(a.vars(), a.form_degree() > 0 ? a.form_degree() - 1 : 0);
    if (a.form_degree() < 1) fail(errc::bad_argument, "primitive of a 0-form");
    auto s = a.homogeneous_degree();
    if (!s) fail(errc::not_homogeneous, "form is not coefficient-homogeneous");
    int total = a.form_degree() + *s;
    if (total <= 0) fail(errc::bad_argument, "q+s must be positive");
    if (!is_closed(a)) fail(errc::not_closed, "form is not closed");
    DifferentialForm b = interior_product(radial_field(a.vars()), a);
    return b * (Rational(1) / Rational(total));
}

// The unique k >= 1 with w^k != 0 and w^{k+1} = 0, for a nonzero 2-form.
inline int class_of_two_form(const DifferentialForm& w) {
    if (w.form_degree() != 2) fail(errc::bad_argument, "class of a non-2-form");
    if (w.is_zero()) fail(errc::zero_input, "class of the zero form");
    DifferentialForm power = w;
    int k = 1;
    while (true) {
        DifferentialForm next = wedge(power, w);
        if (next.is_zero()) return k;
        power = std::move(next);
        ++k;
        if (2 * k > w.vars())
            fail(errc::internal_error, "wedge powers fail to vanish");
    }
}

// Darboux basis for the constant 2-form w(p): an invertible rational change
// to coordinates (x_1..x_k, y_1..y_k, z_{2k+1}..z_n) in which w(p) becomes
// dx_1^dy_1 + ... + dx_k^dy_k. Errors when w(p) = 0.
inline std::pair<LinearChange, int> darboux_basis_at(const DifferentialForm& w,
                                                     const std::vector<Rational>& p) {
    RatMatrix a = two_form_matrix_at(w, p);
    bool nonzero = false;
    for (int i = 0; i < a.rows() && !nonzero; ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!is_zero(a.at(i, j))) { nonzero = true; break; }
    if (!nonzero) fail(errc::zero_input, "form vanishes at the chosen point");
    SkewNormalForm nf = skew_congruence_normal_form(a);
    return {LinearChange(std::move(nf.change)), nf.pairs};
}

// --- block bookkeeping for Darboux coordinates ---------------------------
// After a Darboux change the coordinates split into the x-block [0, k), the
// y-block [k, 2k) and the transverse z-block [2k, n).

enum class CoordBlock { X, Y, Z };

inline CoordBlock block_of(int index, int k) {
    if (index < k) return CoordBlock::X;
    if (index < 2 * k) return CoordBlock::Y;
    return CoordBlock::Z;
}

// part of a form whose differentials all lie in the x,y-block
inline DifferentialForm xy_differential_part(const DifferentialForm& f, int k) {
    DifferentialForm r(f.vars(), f.form_degree());
    for (const auto& [I, p] : f.terms()) {
        bool all_xy = true;
        for (int i : I.idx)
            if (block_of(i, k) == CoordBlock::Z) { all_xy = false; break; }
        if (all_xy) r.add_term(I, p);
    }
    return r;
}

// part of a form whose differentials all lie in the z-block
inline DifferentialForm z_differential_part(const DifferentialForm& f, int k) {
    DifferentialForm r(f.vars(), f.form_degree());
    for (const auto& [I, p] : f.terms()) {
        bool all_z = true;
        for (int i : I.idx)
            if (block_of(i, k) != CoordBlock::Z) { all_z = false; break; }
        if (all_z) r.add_term(I, p);
    }
    return r;
}

inline bool coefficients_use_only_first(const DifferentialForm& f, int m) {
    for (const auto& [I, p] : f.terms())
        if (!p.uses_only_vars_below(m)) return false;
    return true;
}

inline bool differentials_within_first(const DifferentialForm& f, int m) {
    for (const auto& [I, p] : f.terms())
        for (int i : I.idx)
            if (i >= m) return false;
    return true;
}

// Symplectic block swap (x_i, y_i) -> (y_i, -x_i) on selected pairs; the
// substitution matrix S satisfies x_old = -y_new, y_old = x_new on each
// swapped pair, so dx^dy is preserved.
inline LinearChange symplectic_swap(int n, int k, const std::vector<bool>& mask) {
    RatMatrix s(n, n);
    for (int i = 0; i < n; ++i) s.at(i, i) = 1;
    for (int i = 0; i < k; ++i) {
        if (!mask[i]) continue;
        s.at(i, i) = 0;
        s.at(k + i, k + i) = 0;
        s.at(i, k + i) = -1; // old x_i = -new y_i
        s.at(k + i, i) = 1;  // old y_i = new x_i
    }
    return LinearChange(std::move(s));
}

} // namespace pforms
