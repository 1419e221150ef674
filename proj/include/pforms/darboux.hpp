#pragma once

#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "pforms/errors.hpp"
#include "pforms/exterior.hpp"
#include "pforms/form.hpp"
#include "pforms/matrix.hpp"
#include "pforms/polynomial.hpp"

// Constructive reduction of a closed homogeneous degree-one 2-form on C^n to
// a normal form: either the pullback of a form on C^{2k} under the canonical
// projection from Darboux-adapted coordinates, or a contact-type sum
// zeta + sum_i dt_i ^ dh_i with t_i linear in the adapted (x,y) variables
// and h_i quadratic. Every branch ends with an exact reconstruction check,
// so a returned normal form is a certificate, not a claim.

namespace pforms {

enum class DarbouxVariant { linear_pullback, contact_sum };

struct DarbouxNormalForm {
    DarbouxVariant variant;
    LinearChange change; // substitution z = M u into adapted coordinates
    int k = 0;

    // linear_pullback: closed degree-one 2-form on C^{2k}
    std::optional<DifferentialForm> eta;

    // contact_sum: all on C^n in adapted coordinates
    std::optional<DifferentialForm> zeta;
    std::vector<Polynomial> t;
    std::vector<Polynomial> h;
};

// Full audit trail of the reduction. All 1-forms live on C^n in the adapted
// coordinates of `change`.
struct DarbouxTrace {
    std::vector<Rational> p0;
    LinearChange change;
    int k = 0;
    std::vector<DifferentialForm> eta, pi;         // the split of w
    std::vector<DifferentialForm> eta_bar, pi_bar; // z-block parts
    std::optional<RatMatrix> coupling;             // a[i][j] with eta_bar_i = sum_j a[i][j] pi_bar_j
    std::vector<DifferentialForm> beta, mu, gamma, delta;
    std::vector<Polynomial> f; // quadratic potentials (the h_i)
    bool swapped_roles = false;
};

namespace darboux_detail {

inline DifferentialForm one_form(int n) { return DifferentialForm(n, 1); }

inline DifferentialForm differential(const Polynomial& p) {
    return exterior_derivative(DifferentialForm::from_polynomial(p));
}

// split of a linear coefficient into its x,y part and its z part
inline std::pair<Polynomial, Polynomial> split_linear_by_block(const Polynomial& p, int k2) {
    Polynomial xy(p.vars()), z(p.vars());
    for (const auto& [m, c] : p.terms()) {
        bool in_z = false;
        for (int i = k2; i < p.vars(); ++i)
            if (m.e[i] > 0) { in_z = true; break; }
        (in_z ? z : xy).add_term(m, c);
    }
    return {xy, z};
}

inline bool has_pair_block(const DifferentialForm& w, int k, CoordBlock b1, CoordBlock b2) {
    for (const auto& [I, p] : w.terms()) {
        CoordBlock a = block_of(I.idx[0], k);
        CoordBlock b = block_of(I.idx[1], k);
        if ((a == b1 && b == b2) || (a == b2 && b == b1)) return true;
    }
    return false;
}

} // namespace darboux_detail

// Deterministic rational point where w^k does not vanish. Every coefficient
// of w^k is homogeneous of total degree k, hence of degree at most k in each
// variable, so a nonzero coefficient cannot vanish on the whole grid
// {0..k}^n; enumeration by height guarantees termination.
inline std::vector<Rational> find_regular_point(const DifferentialForm& w, int k) {
    int n = w.vars();
    DifferentialForm wk = wedge_power(w, k);
    if (wk.is_zero()) fail(errc::zero_input, "w^k vanishes identically");
    std::vector<int> pt(n, 0);
    auto nonzero_at = [&](const std::vector<int>& ipt) {
        std::vector<Rational> q(n);
        for (int i = 0; i < n; ++i) q[i] = rat(ipt[i]);
        for (const auto& [I, p] : wk.terms())
            if (!is_zero(p.evaluate(q))) return true;
        return false;
    };
    for (int height = 0; height <= k; ++height) {
        std::fill(pt.begin(), pt.end(), 0);
        while (true) {
            int mx = 0;
            for (int v : pt) mx = std::max(mx, v);
            if (mx == height && nonzero_at(pt)) {
                std::vector<Rational> q(n);
                for (int i = 0; i < n; ++i) q[i] = rat(pt[i]);
                return q;
            }
            // next tuple in {0..height}^n, lexicographic from the right
            int pos = n - 1;
            while (pos >= 0 && pt[pos] == height) pt[pos--] = 0;
            if (pos < 0) break;
            ++pt[pos];
        }
    }
    fail(errc::internal_error, "no regular point on the guaranteed grid");
}

struct CanonicalSplit {
    std::vector<DifferentialForm> eta, pi;         // full 1-forms, k of each
    std::vector<DifferentialForm> eta_bar, pi_bar; // their z-differential parts
};

// Deterministic allocation of the terms of a 2-form in Darboux coordinates
// into w = sum_i eta_i ^ dx_i + sum_i pi_i ^ dy_i. Mixed dx_i ^ dy_j terms
// go entirely to pi_j; dx^dx terms to the eta of the larger index, dy^dy
// terms to the pi of the larger index. A nonzero dz^dz block contradicts the
// Darboux-adapted shape and is surfaced as a hard error.
inline CanonicalSplit canonical_split(const DifferentialForm& w, int k) {
    using namespace darboux_detail;
    int n = w.vars();
    CanonicalSplit s;
    s.eta.assign(k, one_form(n));
    s.pi.assign(k, one_form(n));
    s.eta_bar.assign(k, one_form(n));
    s.pi_bar.assign(k, one_form(n));
    for (const auto& [I, p] : w.terms()) {
        int a = I.idx[0], b = I.idx[1];
        CoordBlock ba = block_of(a, k), bb = block_of(b, k);
        MultiIndex da(std::vector<int>{a});
        if (ba == CoordBlock::X && bb == CoordBlock::X) {
            s.eta[b].add_term(da, p);
        } else if (ba == CoordBlock::Y && bb == CoordBlock::Y) {
            s.pi[b - k].add_term(da, p);
        } else if (ba == CoordBlock::X && bb == CoordBlock::Y) {
            s.pi[b - k].add_term(da, p);
        } else if (bb == CoordBlock::Z && ba != CoordBlock::Z) {
            // c dζ_a ^ dz_b = -c dz_b ^ dζ_a
            MultiIndex db(std::vector<int>{b});
            if (ba == CoordBlock::X) {
                s.eta[a].add_term(db, -p);
                s.eta_bar[a].add_term(db, -p);
            } else {
                s.pi[a - k].add_term(db, -p);
                s.pi_bar[a - k].add_term(db, -p);
            }
        } else {
            fail(errc::nonzero_pure_z_block,
                 "2-form has a pure z-block term in Darboux coordinates");
        }
    }
    return s;
}

// Coefficients expressing each target 1-form as a constant combination of
// the basis 1-forms, by matching the coefficient of every (monomial, dz_l)
// pair: returns C (|basis| x |targets|) with target_i = sum_j C[j][i]
// basis_j, minimal under first-pivot elimination; nullopt if inconsistent.
inline std::optional<RatMatrix> express_in_span(const std::vector<DifferentialForm>& targets,
                                                const std::vector<DifferentialForm>& basis) {
    using Key = std::pair<int, Monomial>;
    auto key_less = [](const Key& a, const Key& b) {
        if (a.first != b.first) return a.first < b.first;
        return GrlexGreater{}(a.second, b.second);
    };
    std::map<Key, int, decltype(key_less)> row_of(key_less);
    auto note = [&](const DifferentialForm& f) {
        for (const auto& [I, p] : f.terms())
            for (const auto& [m, c] : p.terms())
                row_of.emplace(std::make_pair(I.idx[0], m), int(row_of.size()));
    };
    for (const auto& f : basis) note(f);
    for (const auto& f : targets) note(f);

    RatMatrix sys(int(row_of.size()), int(basis.size()));
    RatMatrix rhs(int(row_of.size()), int(targets.size()));
    for (int j = 0; j < int(basis.size()); ++j)
        for (const auto& [I, p] : basis[j].terms())
            for (const auto& [m, c] : p.terms()) sys.at(row_of.at({I.idx[0], m}), j) = c;
    for (int i = 0; i < int(targets.size()); ++i)
        for (const auto& [I, p] : targets[i].terms())
            for (const auto& [m, c] : p.terms()) rhs.at(row_of.at({I.idx[0], m}), i) = c;
    return solve_minimal(sys, rhs);
}

// Constants a[i][j] with eta_bar_i = sum_j a[i][j] pi_bar_j. Underdetermined
// systems take the first-pivot minimal solution; inconsistent systems yield
// nullopt (the caller decides whether that is NoCoupling).
inline std::optional<RatMatrix> solve_coupling(const std::vector<DifferentialForm>& eta_bars,
                                               const std::vector<DifferentialForm>& pi_bars) {
    int k = int(pi_bars.size());
    if (int(eta_bars.size()) != k) fail(errc::dimension_mismatch, "coupling list lengths");
    if (k == 0) return RatMatrix(0, 0);
    auto x = express_in_span(eta_bars, pi_bars);
    if (!x) return std::nullopt;
    RatMatrix a(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) a.at(i, j) = x->at(j, i);
    return a;
}

// Termwise primitive for a constant closed 2-form c with zero pure-z block:
// a linear 1-form beta in <dx_1..dx_k, dy_1..dy_k> with d(beta) = c.
// Rule per term c_ab de_a ^ de_b: e_a de_b when e_b is an x or y
// differential, else -e_b de_a.
inline DifferentialForm beta_lift(const DifferentialForm& c, int k) {
    using namespace darboux_detail;
    int n = c.vars();
    DifferentialForm beta(n, 1);
    for (const auto& [I, p] : c.terms()) {
        if (!p.is_constant()) fail(errc::bad_argument, "beta lift needs constant coefficients");
        Rational coef = p.coefficient(Monomial::one(n));
        int a = I.idx[0], b = I.idx[1];
        if (block_of(b, k) != CoordBlock::Z) {
            beta.add_term(MultiIndex(std::vector<int>{b}), Polynomial::variable(n, a) * coef);
        } else if (block_of(a, k) != CoordBlock::Z) {
            beta.add_term(MultiIndex(std::vector<int>{a}), Polynomial::variable(n, b) * -coef);
        } else {
            fail(errc::bad_argument, "beta lift input has a pure z-block term");
        }
    }
    if (exterior_derivative(beta) != c) fail(errc::internal_error, "beta lift failed to invert d");
    return beta;
}

namespace darboux_detail {

// Quadratic h with dh matching pi_bar on every dz direction:
// h = sum_a z_a * (xy part of c_a) + 1/2 sum_a z_a * (z part of c_a),
// exactly the homogeneity-identity integration split by block.
inline Polynomial partial_primitive(const DifferentialForm& pi_bar, int k2) {
    int n = pi_bar.vars();
    Polynomial h(n);
    for (const auto& [I, c] : pi_bar.terms()) {
        int a = I.idx[0];
        auto [xy, z] = split_linear_by_block(c, k2);
        h += Polynomial::variable(n, a) * xy;
        h += Polynomial::variable(n, a) * z * rat(1, 2);
    }
    // the z-gradient of h must reproduce pi_bar exactly
    for (int a = k2; a < n; ++a)
        if (h.differentiate(a) != pi_bar.coefficient(MultiIndex(std::vector<int>{a})))
            fail(errc::internal_error, "partial primitive integration failed");
    return h;
}

// Integration used on a fully adapted block (no dy^dy terms): quadratic H_i
// with dH_i matching the dx_i ^ d(...) coefficients of w in every y (and z)
// direction. Variables at index >= from are treated as the integration
// directions.
inline Polynomial integrate_row(const DifferentialForm& w, int i, int from) {
    int n = w.vars();
    Polynomial h(n);
    for (int a = from; a < n; ++a) {
        std::vector<int> key{i, a};
        Polynomial s = w.coefficient(MultiIndex(std::move(key)));
        if (s.is_zero()) continue;
        auto [head, tail] = split_linear_by_block(s, from);
        h += Polynomial::variable(n, a) * head;
        h += Polynomial::variable(n, a) * tail * rat(1, 2);
    }
    for (int a = from; a < n; ++a)
        if (h.differentiate(a) != w.coefficient(MultiIndex(std::vector<int>{i, a})))
            fail(errc::internal_error, "row integration failed");
    return h;
}

// Contact extraction on C^{2m}: when w has no dy^dy block, w equals
// sum_i dx_i ^ dh_i exactly, with h_i quadratic. Returns nullopt when the
// dy^dy block is nonzero (the caller may swap blocks and retry).
inline std::optional<std::vector<Polynomial>> full_contact_potentials(const DifferentialForm& w,
                                                                      int m) {
    if (has_pair_block(w, m, CoordBlock::Y, CoordBlock::Y)) return std::nullopt;
    int n = w.vars();
    std::vector<Polynomial> h;
    h.reserve(m);
    for (int i = 0; i < m; ++i) h.push_back(integrate_row(w, i, m));
    DifferentialForm residual = w;
    for (int i = 0; i < m; ++i)
        residual -= wedge(DifferentialForm::basis_one_form(n, i), differential(h[i]));
    if (!residual.is_zero()) {
        // residual is a closed dx^dx-only form with x-only coefficients;
        // absorb its Euler primitive into the potentials
        if (!differentials_within_first(residual, m) || !coefficients_use_only_first(residual, m) ||
            !is_closed(residual))
            fail(errc::internal_error, "contact residual has unexpected shape");
        DifferentialForm sigma = euler_primitive(residual);
        for (int i = 0; i < m; ++i)
            h[i] -= sigma.coefficient(MultiIndex(std::vector<int>{i}));
    }
    DifferentialForm check(n, 2);
    for (int i = 0; i < m; ++i)
        check += wedge(DifferentialForm::basis_one_form(n, i), differential(h[i]));
    if (check != w) fail(errc::internal_error, "contact extraction failed to reproduce the form");
    return h;
}

} // namespace darboux_detail

namespace darboux_detail {

// Greedy basis of the span of the given z-block 1-forms, in list order.
inline std::vector<DifferentialForm> greedy_basis(const std::vector<DifferentialForm>& bars) {
    std::vector<DifferentialForm> chosen;
    for (const auto& bar : bars) {
        if (bar.is_zero()) continue;
        if (!chosen.empty() && express_in_span({bar}, chosen)) continue;
        chosen.push_back(bar);
    }
    return chosen;
}

// Coefficient matrices of a degree-one 2-form: w(z) = sum_c z_c B_c.
inline std::vector<RatMatrix> coefficient_matrices(const DifferentialForm& w) {
    int n = w.vars();
    std::vector<RatMatrix> b(n, RatMatrix(n, n));
    for (const auto& [I, poly] : w.terms())
        for (const auto& [mon, coef] : poly.terms()) {
            int c = -1;
            for (int i = 0; i < n; ++i)
                if (mon.e[i] == 1) { c = i; break; }
            b[c].at(I.idx[0], I.idx[1]) += coef;
            b[c].at(I.idx[1], I.idx[0]) -= coef;
        }
    return b;
}

// Pencil contraction M(v): row c holds the covector v^T B_c, i.e. the value
// 1-form i_v w expressed coefficient-wise.
inline RatMatrix pencil_contraction(const std::vector<RatMatrix>& b, const std::vector<Rational>& v) {
    int n = int(b.size());
    RatMatrix m(n, n);
    for (int c = 0; c < n; ++c)
        for (int i = 0; i < n; ++i) {
            if (is_zero(v[i])) continue;
            for (int j = 0; j < n; ++j) m.at(c, j) += v[i] * b[c].at(i, j);
        }
    return m;
}

// Cheap test, on coefficient matrices only, of whether the Darboux basis at
// p yields transverse data that fits into k potentials: w(p) must have rank
// exactly 2k, the transformed pure z-block must vanish, and the bar span
// must be at most k-dimensional.
inline bool base_point_fits(const std::vector<RatMatrix>& b, int k,
                            const std::vector<Rational>& p) {
    int n = int(b.size());
    RatMatrix a(n, n);
    for (int c = 0; c < n; ++c) {
        if (is_zero(p[c])) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a.at(i, j) += p[c] * b[c].at(i, j);
    }
    SkewNormalForm snf = skew_congruence_normal_form(a);
    if (snf.pairs != k) return false;
    const RatMatrix& m = snf.change;
    RatMatrix mt = m.transposed();
    std::vector<RatMatrix> bt;
    bt.reserve(n);
    for (int c = 0; c < n; ++c) bt.push_back(mt * b[c] * m);

    int zdim = n - 2 * k;
    RatMatrix bars(2 * k, n * zdim);
    for (int cprime = 0; cprime < n; ++cprime) {
        // B'_{c'} = sum_c M[c][c'] M^T B_c M
        RatMatrix bp(n, n);
        for (int c = 0; c < n; ++c) {
            if (is_zero(m.at(c, cprime))) continue;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) bp.at(i, j) += m.at(c, cprime) * bt[c].at(i, j);
        }
        for (int i = 0; i < zdim; ++i)
            for (int j = 0; j < zdim; ++j)
                if (!is_zero(bp.at(2 * k + i, 2 * k + j))) return false;
        for (int e = 0; e < 2 * k; ++e)
            for (int zcol = 0; zcol < zdim; ++zcol)
                bars.at(e, cprime * zdim + zcol) = bp.at(e, 2 * k + zcol);
    }
    return bars.rank() <= k;
}

// Adapted coordinates built from a candidate transverse direction v: when
// the 1-form i_v w takes values in a constant space T of dimension at most
// k, the annihilator A of T collects the transverse block and the images
// i_u w for u in A span the distinguished coframe. Returns nullopt when v
// does not fit.
inline std::optional<LinearChange> change_from_direction(int k,
                                                         const std::vector<RatMatrix>& b,
                                                         const std::vector<Rational>& v) {
    int n = int(b.size());
    RatMatrix mv = pencil_contraction(b, v);
    if (mv.rank() > k) return std::nullopt;

    auto a_basis = mv.null_space(); // the candidate block A = ann(T)
    if (int(a_basis.size()) < n - k) return std::nullopt;

    // U* rows: T = ann(A), then the value covectors u^T B_c for u in A
    RatMatrix a_rows(int(a_basis.size()), n);
    for (int i = 0; i < int(a_basis.size()); ++i)
        for (int j = 0; j < n; ++j) a_rows.at(i, j) = a_basis[i][j];
    auto t_basis = a_rows.null_space();

    std::vector<std::vector<Rational>> rows;
    auto try_add = [&](const std::vector<Rational>& cand) {
        RatMatrix probe(int(rows.size()) + 1, n);
        for (int i = 0; i < int(rows.size()); ++i)
            for (int j = 0; j < n; ++j) probe.at(i, j) = rows[i][j];
        for (int j = 0; j < n; ++j) probe.at(int(rows.size()), j) = cand[j];
        if (probe.rank() == int(rows.size()) + 1) rows.push_back(cand);
    };
    for (const auto& t : t_basis) try_add(t);
    for (const auto& u : a_basis)
        for (int c = 0; c < n; ++c) {
            std::vector<Rational> row(n, Rational(0));
            bool nonzero = false;
            for (int j = 0; j < n; ++j) {
                for (int i = 0; i < n; ++i) {
                    if (is_zero(u[i])) continue;
                    row[j] += u[i] * b[c].at(i, j);
                }
                if (!is_zero(row[j])) nonzero = true;
            }
            if (nonzero) try_add(row);
        }
    if (int(rows.size()) > 2 * k) return std::nullopt;
    // pad the distinguished block with coordinate functionals, then complete
    for (int j = 0; j < n && int(rows.size()) < 2 * k; ++j) {
        std::vector<Rational> e(n, Rational(0));
        e[j] = 1;
        try_add(e);
    }
    if (int(rows.size()) != 2 * k) return std::nullopt;
    for (int j = 0; j < n && int(rows.size()) < n; ++j) {
        std::vector<Rational> e(n, Rational(0));
        e[j] = 1;
        try_add(e);
    }
    RatMatrix m_inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m_inv.at(i, j) = rows[i][j];
    return LinearChange(m_inv.inverse());
}

} // namespace darboux_detail

// Assembles the 2-form a normal form represents, transported back through
// the recorded coordinate change. Exact equality with the original input is
// the acceptance contract for the whole reduction.
inline DifferentialForm reconstruct(const DarbouxNormalForm& nf) {
    using namespace darboux_detail;
    int n = nf.change.vars();
    DifferentialForm in_u(n, 2);
    if (nf.variant == DarbouxVariant::linear_pullback) {
        if (!nf.eta) fail(errc::bad_argument, "pullback normal form without eta");
        RatMatrix proj(nf.eta->vars(), n);
        for (int i = 0; i < nf.eta->vars(); ++i) proj.at(i, i) = 1;
        in_u = pullback_linear(*nf.eta, proj);
    } else {
        if (!nf.zeta) fail(errc::bad_argument, "contact normal form without zeta");
        in_u = *nf.zeta;
        if (nf.t.size() != nf.h.size()) fail(errc::bad_argument, "t/h length mismatch");
        for (size_t i = 0; i < nf.t.size(); ++i)
            in_u += wedge(differential(nf.t[i]), differential(nf.h[i]));
    }
    return nf.change.apply_inverse(in_u);
}

namespace darboux_detail {

inline bool all_zero(const std::vector<DifferentialForm>& fs) {
    for (const auto& f : fs)
        if (!f.is_zero()) return false;
    return true;
}


std::optional<std::pair<DarbouxNormalForm, DarbouxTrace>> assemble_in_change(
    const DifferentialForm& w, int k, const LinearChange& start,
    const std::vector<Rational>& p0);

// One reduction attempt in the Darboux basis at the given regular point.
// Returns nullopt when the transverse data at this point does not fit into
// k potentials (another base point may still work); throws only on hard
// structural violations.
inline std::optional<std::pair<DarbouxNormalForm, DarbouxTrace>> try_assemble_at(
    const DifferentialForm& w, int k, const std::vector<Rational>& p0) {
    auto [change0, k_pt] = darboux_basis_at(w, p0);
    if (k_pt != k) return std::nullopt;
    return assemble_in_change(w, k, change0, p0);
}

// The splitting pipeline in a given adapted basis: split, case dispatch,
// potentials, zeta, trace, reconstruction check. The basis need not be
// normalized at a point; only the block structure matters.
inline std::optional<std::pair<DarbouxNormalForm, DarbouxTrace>> assemble_in_change(
    const DifferentialForm& w, int k, const LinearChange& start,
    const std::vector<Rational>& p0) {
    int n = w.vars();
    LinearChange change = start;
    DifferentialForm w_u = change.apply(w);
    DarbouxTrace trace{p0, change, k, {}, {}, {}, {}, std::nullopt, {}, {}, {}, {}, {}, false};

    auto finish_trace = [&](CanonicalSplit&& split) {
        trace.change = change;
        trace.eta = std::move(split.eta);
        trace.pi = std::move(split.pi);
        trace.eta_bar = std::move(split.eta_bar);
        trace.pi_bar = std::move(split.pi_bar);
    };

    CanonicalSplit split = canonical_split(w_u, k);
    if (all_zero(split.eta_bar) && all_zero(split.pi_bar)) {
        // Case 1: no transverse differentials; closedness forces the
        // coefficients into C[x_1..y_k], and the form descends to C^{2k}.
        if (!differentials_within_first(w_u, 2 * k) || !coefficients_use_only_first(w_u, 2 * k))
            fail(errc::internal_error, "pullback case lost x,y-only structure");
        DifferentialForm eta(2 * k, 2);
        for (const auto& [I, p] : w_u.terms()) {
            Polynomial q(2 * k);
            for (const auto& [m, c] : p.terms())
                q.add_term(Monomial(std::vector<int>(m.e.begin(), m.e.begin() + 2 * k)), c);
            eta.add_term(I, q);
        }
        finish_trace(std::move(split));
        DarbouxNormalForm nf{DarbouxVariant::linear_pullback, change, k, std::move(eta),
                             std::nullopt,                    {},     {}};
        if (reconstruct(nf) != w) fail(errc::internal_error, "reconstruction mismatch");
        return std::make_pair(std::move(nf), std::move(trace));
    }

    if (all_zero(split.pi_bar)) {
        // only the eta side survives: exchange the roles of x and y
        change = change.then(symplectic_swap(n, k, std::vector<bool>(k, true)));
        w_u = change.apply(w);
        trace.swapped_roles = true;
        split = canonical_split(w_u, k);
    }

    // Potentials G_i with the transverse part of w equal to sum dt_i ^ G_i.
    // First preference: G_i := pi_bar_i with the coupling matrix, which is
    // the classical shape t_i = -(sum_m a[m][i] x_m + y_i). When the pi_bar
    // do not span the eta_bar, fall back to any basis of the joint span;
    // that succeeds exactly when the span fits into k directions.
    std::vector<DifferentialForm> gs;
    std::optional<RatMatrix> coupling = solve_coupling(split.eta_bar, split.pi_bar);
    if (coupling) {
        gs = split.pi_bar;
    } else {
        std::vector<DifferentialForm> bars = split.pi_bar;
        for (const auto& f : split.eta_bar) bars.push_back(f);
        gs = greedy_basis(bars);
        if (int(gs.size()) > k) return std::nullopt;
    }

    // solve -bar_e = sum_i T[i][e] G_i over all 2k coframe slots
    std::vector<DifferentialForm> targets;
    for (int e = 0; e < k; ++e) targets.push_back(-split.eta_bar[e]);
    for (int e = 0; e < k; ++e) targets.push_back(-split.pi_bar[e]);
    auto tmat = express_in_span(targets, gs);
    if (!tmat) return std::nullopt;

    std::vector<Polynomial> hs, ts;
    for (const auto& g : gs) hs.push_back(partial_primitive(g, 2 * k));
    for (int i = 0; i < int(gs.size()); ++i) {
        Polynomial t(n);
        for (int e = 0; e < 2 * k; ++e) t += Polynomial::variable(n, e) * tmat->at(i, e);
        ts.push_back(std::move(t));
    }
    // pad to exactly k pairs
    for (int i = int(gs.size()); i < k; ++i) {
        ts.push_back(Polynomial::variable(n, i));
        hs.push_back(Polynomial(n));
    }

    DifferentialForm zeta = w_u;
    for (int i = 0; i < k; ++i) zeta -= wedge(differential(ts[i]), differential(hs[i]));
    if (!differentials_within_first(zeta, 2 * k) || !coefficients_use_only_first(zeta, 2 * k) ||
        !is_closed(zeta))
        fail(errc::zeta_not_reduced, "assembled zeta is not an x,y-only closed form");

    // audit data the proof names explicitly
    trace.coupling = coupling;
    trace.f = hs;
    for (int i = 0; i < k; ++i)
        trace.beta.push_back(beta_lift(exterior_derivative(split.eta[i]), k));
    if (coupling) {
        // mu_i = pi_i - d(f_i^2) in <dx,dy>, delta_i its xy-differential,
        // gamma_i = eta_i - sum_j a[i][j] d(f_j^2)
        for (int i = 0; i < k; ++i) {
            DifferentialForm mu_i = split.pi[i] - differential(hs[i]);
            if (!z_differential_part(mu_i, k).is_zero())
                fail(errc::internal_error, "mu has residual z-differentials");
            trace.mu.push_back(std::move(mu_i));
            trace.delta.push_back(xy_differential_part(differential(hs[i]), k));
            DifferentialForm gamma = split.eta[i];
            for (int j = 0; j < k; ++j) gamma -= differential(hs[j]) * coupling->at(i, j);
            if (!z_differential_part(gamma, k).is_zero())
                fail(errc::internal_error, "gamma has residual z-differentials");
            trace.gamma.push_back(std::move(gamma));
        }
    } else {
        // span-basis gauge: the h's are not paired with the pi's, so only
        // the block components of pi are meaningful here
        for (int i = 0; i < k; ++i)
            trace.mu.push_back(xy_differential_part(split.pi[i], k));
    }
    finish_trace(std::move(split));

    DarbouxNormalForm nf{DarbouxVariant::contact_sum, change,       k, std::nullopt,
                         std::move(zeta),             std::move(ts), std::move(hs)};
    if (reconstruct(nf) != w) fail(errc::internal_error, "reconstruction mismatch");
    return std::make_pair(std::move(nf), std::move(trace));
}

} // namespace darboux_detail

// The reduction pipeline. Throws on bad input (zero, non-closed, wrong
// degree) and on internal structural violations (NonzeroPureZBlock,
// NoCoupling, ZetaNotReduced).
inline std::pair<DarbouxNormalForm, DarbouxTrace> normal_form(const DifferentialForm& w) {
    using namespace darboux_detail;
    if (w.form_degree() != 2) fail(errc::bad_argument, "normal form of a non-2-form");
    if (w.is_zero()) fail(errc::zero_input, "normal form of the zero 2-form");
    auto s = w.homogeneous_degree();
    if (!s || *s != 1) fail(errc::not_homogeneous, "coefficients are not homogeneous of degree one");
    if (!is_closed(w)) fail(errc::not_closed, "2-form is not closed");

    int n = w.vars();
    int k = class_of_two_form(w);
    std::vector<Rational> p0 = find_regular_point(w, k);

    if (n == 2 * k) {
        // No transverse block. A pullback statement would be vacuous here, so
        // look for the full contact presentation w = sum dx_i ^ dh_i first.
        auto [change0, k_pt] = darboux_basis_at(w, p0);
        if (k_pt != k) fail(errc::internal_error, "rank at the regular point disagrees with the class");
        LinearChange change = change0;
        DifferentialForm w_u = change.apply(w);
        DarbouxTrace trace{p0, change, k, {}, {}, {}, {}, std::nullopt, {}, {}, {}, {}, {}, false};
        if (has_pair_block(w_u, k, CoordBlock::Y, CoordBlock::Y) &&
            !has_pair_block(w_u, k, CoordBlock::X, CoordBlock::X)) {
            change = change.then(symplectic_swap(n, k, std::vector<bool>(k, true)));
            w_u = change.apply(w);
            trace.swapped_roles = true;
        }
        auto hs = full_contact_potentials(w_u, k);
        trace.change = change;
        CanonicalSplit split = canonical_split(w_u, k);
        trace.eta = std::move(split.eta);
        trace.pi = std::move(split.pi);
        trace.eta_bar = std::move(split.eta_bar);
        trace.pi_bar = std::move(split.pi_bar);
        if (hs) {
            DarbouxNormalForm nf{DarbouxVariant::contact_sum, change, k,
                                 std::nullopt,                std::nullopt, {}, {}};
            for (int i = 0; i < k; ++i) nf.t.push_back(Polynomial::variable(n, i));
            nf.h = *hs;
            DifferentialForm zeta = w_u;
            for (int i = 0; i < k; ++i)
                zeta -= wedge(differential(nf.t[i]), differential(nf.h[i]));
            nf.zeta = zeta; // exact zero by construction of the potentials
            trace.f = nf.h;
            if (reconstruct(nf) != w) fail(errc::internal_error, "reconstruction mismatch");
            return {std::move(nf), std::move(trace)};
        }
        // both diagonal blocks occupied: fall back to the (trivial) pullback
        // presentation, which is still exact and certified
        DarbouxNormalForm nf{DarbouxVariant::linear_pullback, change, k, w_u, std::nullopt, {}, {}};
        if (reconstruct(nf) != w) fail(errc::internal_error, "reconstruction mismatch");
        return {std::move(nf), std::move(trace)};
    }

    if (auto res = try_assemble_at(w, k, p0)) return std::move(*res);

    // The transverse data at the first regular point may not fit into k
    // potentials even though a normal form exists. A hidden transverse
    // direction v satisfies rank(M(v)) <= k for the contraction pencil, and
    // one such v determines a full adapted splitting, so enumerate small
    // primitive integer directions.
    auto bmats = coefficient_matrices(w);
    auto try_direction = [&](const std::vector<int>& vi)
        -> std::optional<std::pair<DarbouxNormalForm, DarbouxTrace>> {
        // primitive representatives only: positive leading sign, gcd 1
        int lead = 0;
        long g = 0;
        for (int x : vi) {
            if (x != 0 && lead == 0) lead = x;
            g = std::gcd(g, long(x < 0 ? -x : x));
        }
        if (lead <= 0 || g != 1) return std::nullopt;
        std::vector<Rational> v(n);
        for (int i = 0; i < n; ++i) v[i] = rat(vi[i]);
        auto ch = change_from_direction(k, bmats, v);
        if (!ch) return std::nullopt;
        return assemble_in_change(w, k, *ch, {});
    };
    long budget = 150000; // candidate directions; keeps the scan bounded
    for (int height = 1; height <= 3 && budget > 0; ++height) {
        std::vector<int> vi(n, -height);
        while (budget > 0) {
            int mx = 0;
            for (int x : vi) mx = std::max(mx, x < 0 ? -x : x);
            if (mx == height) {
                --budget;
                if (auto res = try_direction(vi)) return std::move(*res);
            }
            int pos = n - 1;
            while (pos >= 0 && vi[pos] == height) vi[pos--] = -height;
            if (pos < 0) break;
            ++vi[pos];
        }
    }

    // Complementary route: scan base points. A point p whose Darboux basis
    // carries a small enough bar span also yields a reduction; such points
    // form a positive-dimensional locus that small signed vectors hit.
    DifferentialForm wk = wedge_power(w, k);
    auto attempt_point = [&](const std::vector<Rational>& q)
        -> std::optional<std::pair<DarbouxNormalForm, DarbouxTrace>> {
        bool regular = false;
        for (const auto& [I, p] : wk.terms())
            if (!is_zero(p.evaluate(q))) { regular = true; break; }
        if (!regular || !base_point_fits(bmats, k, q)) return std::nullopt;
        auto res = try_assemble_at(w, k, q);
        if (!res) fail(errc::internal_error, "assembly failed at a filtered base point");
        return res;
    };
    {
        // exhaustive signed sweep at height 1 (primitive representatives)
        std::vector<int> pt(n, -1);
        while (true) {
            int lead = 0;
            for (int x : pt)
                if (x != 0) { lead = x; break; }
            if (lead > 0) {
                std::vector<Rational> q(n);
                for (int i = 0; i < n; ++i) q[i] = rat(pt[i]);
                if (auto res = attempt_point(q)) return std::move(*res);
            }
            int pos = n - 1;
            while (pos >= 0 && pt[pos] == 1) pt[pos--] = -1;
            if (pos < 0) break;
            ++pt[pos];
        }
    }
    // seeded samples at growing heights; the fixed seed pins the answer
    std::mt19937_64 scan_rng(0x5eedba5eu);
    const std::pair<int, int> stages[] = {{2, 1200}, {3, 1200}, {9, 1600}};
    for (auto [height, samples] : stages) {
        for (int i = 0; i < samples; ++i) {
            std::vector<Rational> q(n);
            for (int j = 0; j < n; ++j)
                q[j] = rat(long(scan_rng() % (2 * height + 1)) - height);
            if (auto res = attempt_point(q)) return std::move(*res);
        }
    }
    fail(errc::no_coupling,
         "transverse data does not fit into k potentials in any scanned splitting");
}

// ω = dq ^ dt for a decomposable (w ^ w = 0) closed degree-one 2-form, with
// q quadratic and t linear. Runs the normal form at class one and applies
// the textbook manipulation to whichever case comes back.
inline std::pair<Polynomial, Polynomial> medeiros_decompose(const DifferentialForm& w) {
    using namespace darboux_detail;
    if (w.form_degree() != 2) fail(errc::bad_argument, "decomposition of a non-2-form");
    if (!wedge(w, w).is_zero()) fail(errc::not_decomposable, "w ^ w != 0");
    auto [nf, trace] = normal_form(w);
    if (nf.k != 1) fail(errc::internal_error, "decomposable form with class above one");
    int n = w.vars();
    DifferentialForm w_u = nf.change.apply(w);

    Polynomial q_u(n), t_u(n);
    if (nf.variant == DarbouxVariant::contact_sum && n == 2) {
        // w = dx ^ dh exactly
        t_u = nf.t[0];
        q_u = -nf.h[0];
    } else if (nf.variant == DarbouxVariant::linear_pullback) {
        // w = g(x,y) dx ^ dy: integrate g along y
        t_u = Polynomial::variable(n, 0);
        Polynomial g = w_u.coefficient(MultiIndex(std::vector<int>{0, 1}));
        auto [gx, gy] = split_linear_by_block(g, 1);
        Polynomial bigH = Polynomial::variable(n, 1) * gx +
                          Polynomial::variable(n, 1) * gy * rat(1, 2);
        q_u = -bigH;
    } else {
        // w = g dx ^ dy + dt ^ dh with dt = -(a dx + dy); eliminate the dy
        // part and integrate the closed remainder
        t_u = nf.t[0];
        Polynomial g = nf.zeta->coefficient(MultiIndex(std::vector<int>{0, 1}));
        DifferentialForm alpha =
            DifferentialForm::basis_one_form(n, 0).scaled_by(-g) - differential(nf.h[0]);
        if (wedge(alpha, differential(t_u)) != w_u)
            fail(errc::internal_error, "alpha ^ dt does not reproduce the form");
        DifferentialForm d_alpha = exterior_derivative(alpha);
        // constant kappa with kappa ^ dt = d(alpha)
        DifferentialForm dt = differential(t_u);
        std::map<MultiIndex, int> rows;
        for (int c = 0; c < n; ++c) {
            DifferentialForm basis = wedge(DifferentialForm::basis_one_form(n, c), dt);
            for (const auto& [I, p] : basis.terms()) rows.emplace(I, int(rows.size()));
        }
        for (const auto& [I, p] : d_alpha.terms()) rows.emplace(I, int(rows.size()));
        RatMatrix sys(int(rows.size()), n), rhs(int(rows.size()), 1);
        for (int c = 0; c < n; ++c) {
            DifferentialForm basis = wedge(DifferentialForm::basis_one_form(n, c), dt);
            for (const auto& [I, p] : basis.terms())
                sys.at(rows.at(I), c) = p.coefficient(Monomial::one(n));
        }
        for (const auto& [I, p] : d_alpha.terms())
            rhs.at(rows.at(I), 0) = p.coefficient(Monomial::one(n));
        auto kappa = solve_minimal(sys, rhs);
        if (!kappa) fail(errc::internal_error, "no linear correction for alpha");
        Polynomial ell(n);
        for (int c = 0; c < n; ++c) ell += Polynomial::variable(n, c) * kappa->at(c, 0);
        DifferentialForm closed_part = alpha - dt.scaled_by(ell);
        DifferentialForm q_form = euler_primitive(closed_part);
        q_u = q_form.coefficient(MultiIndex{});
    }

    if (wedge(differential(q_u), differential(t_u)) != w_u)
        fail(errc::internal_error, "dq ^ dt does not reproduce the form");
    Polynomial q = nf.change.apply_inverse(q_u);
    Polynomial t = nf.change.apply_inverse(t_u);
    if (wedge(differential(q), differential(t)) != w)
        fail(errc::internal_error, "decomposition lost exactness in the original coordinates");
    return {std::move(q), std::move(t)};
}

} // namespace pforms
