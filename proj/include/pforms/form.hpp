#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pforms/errors.hpp"
#include "pforms/matrix.hpp"
#include "pforms/polynomial.hpp"

namespace pforms {

// Strictly increasing tuple of 0-based variable indices; the basis form
// dz_{i1} ^ ... ^ dz_{ir}.
struct MultiIndex {
    std::vector<int> idx;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> i) : idx(std::move(i)) {}

    int length() const { return int(idx.size()); }
    bool operator==(const MultiIndex& o) const { return idx == o.idx; }
    bool operator<(const MultiIndex& o) const { return idx < o.idx; }

    bool contains(int i) const { return std::binary_search(idx.begin(), idx.end(), i); }

    // position of i, assuming present
    int position_of(int i) const {
        return int(std::lower_bound(idx.begin(), idx.end(), i) - idx.begin());
    }

    MultiIndex erased(int pos) const {
        MultiIndex r = *this;
        r.idx.erase(r.idx.begin() + pos);
        return r;
    }
};

// Sorted merge of two strictly increasing index tuples with the shuffle
// sign; nullopt when they collide (the wedge vanishes).
inline std::optional<std::pair<MultiIndex, int>> merge_indices(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex out;
    out.idx.reserve(a.idx.size() + b.idx.size());
    size_t i = 0, j = 0;
    int sign = 1;
    while (i < a.idx.size() && j < b.idx.size()) {
        if (a.idx[i] == b.idx[j]) return std::nullopt;
        if (a.idx[i] < b.idx[j]) {
            out.idx.push_back(a.idx[i++]);
        } else {
            // b.idx[j] jumps over the remaining entries of a
            if ((a.idx.size() - i) % 2 == 1) sign = -sign;
            out.idx.push_back(b.idx[j++]);
        }
    }
    while (i < a.idx.size()) out.idx.push_back(a.idx[i++]);
    while (j < b.idx.size()) out.idx.push_back(b.idx[j++]);
    return std::make_pair(std::move(out), sign);
}

// Insert a single index in front, i.e. dz_i ^ dz_I, with sign; nullopt on
// collision.
inline std::optional<std::pair<MultiIndex, int>> prepend_index(int i, const MultiIndex& I) {
    MultiIndex single(std::vector<int>{i});
    return merge_indices(single, I);
}

// Element of Omega^r(n): polynomial coefficients on strictly increasing
// multi-indices. Invariants: every index tuple has length r, entries in
// [0, n); no stored zero coefficients.
class DifferentialForm {
public:
    using TermMap = std::map<MultiIndex, Polynomial>;

    DifferentialForm(int n, int r) : n_(n), r_(r) {
        if (n < 0 || r < 0) fail(errc::bad_argument, "negative form parameters");
    }

    static DifferentialForm zero(int n, int r) { return DifferentialForm(n, r); }

    static DifferentialForm from_polynomial(const Polynomial& p) {
        DifferentialForm f(p.vars(), 0);
        f.add_term(MultiIndex{}, p);
        return f;
    }

    // dz_{i+1} for 0-based i
    static DifferentialForm basis_one_form(int n, int i) {
        if (i < 0 || i >= n) fail(errc::index_out_of_range, "differential index");
        DifferentialForm f(n, 1);
        f.add_term(MultiIndex(std::vector<int>{i}), Polynomial::constant(n, 1));
        return f;
    }

    int vars() const { return n_; }
    int form_degree() const { return r_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Polynomial coefficient(const MultiIndex& I) const {
        auto it = terms_.find(I);
        return it == terms_.end() ? Polynomial(n_) : it->second;
    }

    void add_term(const MultiIndex& I, const Polynomial& p) {
        if (I.length() != r_) fail(errc::dimension_mismatch, "multi-index length");
        if (p.vars() != n_) fail(errc::dimension_mismatch, "coefficient ring");
        for (size_t t = 0; t < I.idx.size(); ++t) {
            if (I.idx[t] < 0 || I.idx[t] >= n_) fail(errc::index_out_of_range, "multi-index entry");
            if (t + 1 < I.idx.size() && I.idx[t] >= I.idx[t + 1])
                fail(errc::bad_argument, "multi-index not strictly increasing");
        }
        if (p.is_zero()) return;
        auto [it, inserted] = terms_.emplace(I, p);
        if (!inserted) {
            it->second += p;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    bool operator==(const DifferentialForm& o) const {
        return n_ == o.n_ && r_ == o.r_ && terms_ == o.terms_;
    }
    bool operator!=(const DifferentialForm& o) const { return !(*this == o); }

    DifferentialForm operator-() const {
        DifferentialForm r(n_, r_);
        for (const auto& [I, p] : terms_) r.terms_.emplace(I, -p);
        return r;
    }

    DifferentialForm& operator+=(const DifferentialForm& o) {
        check_compatible(o);
        for (const auto& [I, p] : o.terms_) add_term(I, p);
        return *this;
    }
    DifferentialForm& operator-=(const DifferentialForm& o) {
        check_compatible(o);
        for (const auto& [I, p] : o.terms_) add_term(I, -p);
        return *this;
    }
    DifferentialForm operator+(const DifferentialForm& o) const {
        DifferentialForm r = *this;
        r += o;
        return r;
    }
    DifferentialForm operator-(const DifferentialForm& o) const {
        DifferentialForm r = *this;
        r -= o;
        return r;
    }
    DifferentialForm operator*(const Rational& c) const {
        DifferentialForm r(n_, r_);
        if (pforms::is_zero(c)) return r;
        for (const auto& [I, p] : terms_) r.terms_.emplace(I, p * c);
        return r;
    }
    friend DifferentialForm operator*(const Rational& c, const DifferentialForm& f) { return f * c; }

    DifferentialForm scaled_by(const Polynomial& p) const {
        DifferentialForm r(n_, r_);
        for (const auto& [I, q] : terms_) r.add_term(I, q * p);
        return r;
    }

    // max total degree of the coefficients; nullopt is the zero form's -inf
    std::optional<int> degree() const {
        std::optional<int> d;
        for (const auto& [I, p] : terms_) {
            auto pd = p.degree();
            if (degree_less(d, pd)) d = pd;
        }
        return d;
    }

    // common coefficient degree when homogeneous; nullopt for mixed
    std::optional<int> homogeneous_degree() const {
        if (terms_.empty()) return 0;
        auto d = terms_.begin()->second.homogeneous_degree();
        if (!d) return std::nullopt;
        for (const auto& [I, p] : terms_)
            if (!p.is_homogeneous(*d)) return std::nullopt;
        return d;
    }

    bool is_coefficient_homogeneous(int s) const {
        for (const auto& [I, p] : terms_)
            if (!p.is_homogeneous(s)) return false;
        return true;
    }

private:
    void check_compatible(const DifferentialForm& o) const {
        if (n_ != o.n_ || r_ != o.r_) fail(errc::dimension_mismatch, "forms of different shape");
    }

    int n_, r_;
    TermMap terms_;
};

// Polynomial vector field X = sum X_i d/dz_i.
struct VectorField {
    std::vector<Polynomial> components;

    explicit VectorField(std::vector<Polynomial> comps) : components(std::move(comps)) {}

    int vars() const { return int(components.size()); }
};

// R = z_1 d/dz_1 + ... + z_n d/dz_n
inline VectorField radial_field(int n) {
    if (n < 1) fail(errc::bad_argument, "radial field needs at least one variable");
    std::vector<Polynomial> comps;
    comps.reserve(n);
    for (int i = 0; i < n; ++i) comps.push_back(Polynomial::variable(n, i));
    return VectorField(std::move(comps));
}

inline DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
    if (a.vars() != b.vars()) fail(errc::dimension_mismatch, "wedge of forms on different spaces");
    DifferentialForm r(a.vars(), a.form_degree() + b.form_degree());
    for (const auto& [I, p] : a.terms())
        for (const auto& [J, q] : b.terms()) {
            auto merged = merge_indices(I, J);
            if (!merged) continue;
            Polynomial c = p * q;
            if (merged->second < 0) c = -c;
            r.add_term(merged->first, c);
        }
    return r;
}

// a ^ ... ^ a, m factors; m = 0 gives the constant 0-form 1. Iterated wedge
// on purpose: operands stay tiny at this scale.
inline DifferentialForm wedge_power(const DifferentialForm& a, int m) {
    if (m < 0) fail(errc::bad_argument, "negative wedge power");
    DifferentialForm r = DifferentialForm::from_polynomial(Polynomial::constant(a.vars(), 1));
    for (int i = 0; i < m; ++i) r = wedge(r, a);
    return r;
}

inline DifferentialForm exterior_derivative(const DifferentialForm& a) {
    DifferentialForm r(a.vars(), a.form_degree() + 1);
    for (const auto& [I, p] : a.terms())
        for (int i = 0; i < a.vars(); ++i) {
            Polynomial dp = p.differentiate(i);
            if (dp.is_zero()) continue;
            auto merged = prepend_index(i, I);
            if (!merged) continue;
            if (merged->second < 0) dp = -dp;
            r.add_term(merged->first, dp);
        }
    return r;
}

inline bool is_closed(const DifferentialForm& a) { return exterior_derivative(a).is_zero(); }

// Contraction i_X a. An antiderivation of degree -1; errors on 0-forms.
inline DifferentialForm interior_product(const VectorField& x, const DifferentialForm& a) {
    if (x.vars() != a.vars()) fail(errc::dimension_mismatch, "contraction on different spaces");
    if (a.form_degree() == 0) fail(errc::bad_argument, "contraction of a 0-form");
    DifferentialForm r(a.vars(), a.form_degree() - 1);
    for (const auto& [I, p] : a.terms())
        for (int t = 0; t < I.length(); ++t) {
            const Polynomial& comp = x.components[I.idx[t]];
            if (comp.is_zero()) continue;
            Polynomial c = p * comp;
            if (t % 2 == 1) c = -c;
            r.add_term(I.erased(t), c);
        }
    return r;
}

// Pullback along the linear map z -> Mz from C^n to C^m, where M is m x n
// and the form lives upstairs on C^m. Substitutes coordinates into the
// coefficients and expands each dz_i through the rows of M.
inline DifferentialForm pullback_linear(const DifferentialForm& a, const RatMatrix& m) {
    if (m.rows() != a.vars()) fail(errc::dimension_mismatch, "pullback matrix shape");
    int n = m.cols();
    std::vector<Polynomial> var_images;
    var_images.reserve(a.vars());
    for (int i = 0; i < a.vars(); ++i) {
        Polynomial l(n);
        for (int j = 0; j < n; ++j) {
            Monomial mon = Monomial::one(n);
            mon.e[j] = 1;
            l.add_term(mon, m.at(i, j));
        }
        var_images.push_back(std::move(l));
    }
    // images of the coframe: dz_i -> sum_j M[i][j] du_j
    std::vector<DifferentialForm> coframe_images;
    coframe_images.reserve(a.vars());
    for (int i = 0; i < a.vars(); ++i) {
        DifferentialForm w(n, 1);
        for (int j = 0; j < n; ++j)
            w.add_term(MultiIndex(std::vector<int>{j}), Polynomial::constant(n, m.at(i, j)));
        coframe_images.push_back(std::move(w));
    }

    DifferentialForm r(n, a.form_degree());
    for (const auto& [I, p] : a.terms()) {
        DifferentialForm term = DifferentialForm::from_polynomial(p.substitute(var_images));
        for (int t = 0; t < I.length(); ++t) term = wedge(term, coframe_images[I.idx[t]]);
        r += term;
    }
    return r;
}

// Constant value of a form at a point, as a form with constant coefficients.
inline DifferentialForm evaluate_form(const DifferentialForm& a, const std::vector<Rational>& point) {
    DifferentialForm r(a.vars(), a.form_degree());
    for (const auto& [I, p] : a.terms())
        r.add_term(I, Polynomial::constant(a.vars(), p.evaluate(point)));
    return r;
}

// Skew matrix of a 2-form's value at a point: A[i][j] = coefficient of
// dz_i ^ dz_j.
inline RatMatrix two_form_matrix_at(const DifferentialForm& w, const std::vector<Rational>& point) {
    if (w.form_degree() != 2) fail(errc::bad_argument, "matrix of a non-2-form");
    RatMatrix a(w.vars(), w.vars());
    for (const auto& [I, p] : w.terms()) {
        Rational v = p.evaluate(point);
        a.at(I.idx[0], I.idx[1]) = v;
        a.at(I.idx[1], I.idx[0]) = -v;
    }
    return a;
}

} // namespace pforms
