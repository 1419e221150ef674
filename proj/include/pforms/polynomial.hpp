#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "pforms/errors.hpp"
#include "pforms/matrix.hpp"
#include "pforms/rational.hpp"

namespace pforms {

// Exponent vector of a monomial in z_1..z_n; e[i] is the exponent of z_{i+1}.
struct Monomial {
    std::vector<int> e;

    Monomial() = default;
    explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}
    static Monomial one(int n) { return Monomial(std::vector<int>(n, 0)); }

    int vars() const { return int(e.size()); }
    int degree() const { return std::accumulate(e.begin(), e.end(), 0); }
    bool is_one() const {
        return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    }

    bool divides(const Monomial& o) const {
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
        return r;
    }

    // quotient, assuming divisibility
    Monomial operator/(const Monomial& o) const {
        Monomial r = *this;
        for (size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
        return r;
    }

    bool operator==(const Monomial& o) const { return e == o.e; }
};

// Graded-lexicographic order, biggest first, so that map iteration starts at
// the leading term. This is the one term order used everywhere: printing,
// gcd normalization, exact division.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        return a.e > b.e;
    }
};

// Sparse multivariate polynomial with exact rational coefficients.
// Invariants: no stored zero coefficients; every monomial has length n.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GrlexGreater>;

    explicit Polynomial(int n = 0) : n_(n) {
        if (n < 0) fail(errc::bad_argument, "negative variable count");
    }

    static Polynomial zero(int n) { return Polynomial(n); }

    static Polynomial constant(int n, const Rational& c) {
        Polynomial p(n);
        p.add_term(Monomial::one(n), c);
        return p;
    }

    // z_{i+1} for 0-based index i
    static Polynomial variable(int n, int i) {
        if (i < 0 || i >= n) fail(errc::index_out_of_range, "variable index");
        Polynomial p(n);
        Monomial m = Monomial::one(n);
        m.e[i] = 1;
        p.add_term(m, Rational(1));
        return p;
    }

    int vars() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
    size_t term_count() const { return terms_.size(); }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (int(m.e.size()) != n_) fail(errc::dimension_mismatch, "monomial length");
        if (pforms::is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (pforms::is_zero(it->second)) terms_.erase(it);
        }
    }

    // nullopt encodes the degree of the zero polynomial (the -inf sentinel;
    // compare with degree_less below, never numerically).
    std::optional<int> degree() const {
        if (terms_.empty()) return std::nullopt;
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    bool is_homogeneous(int d) const {
        for (const auto& [m, c] : terms_)
            if (m.degree() != d) return false;
        return true;
    }

    // common degree of all terms, nullopt if mixed; zero polynomial reports 0
    std::optional<int> homogeneous_degree() const {
        if (terms_.empty()) return 0;
        int d = terms_.begin()->first.degree();
        return is_homogeneous(d) ? std::optional<int>(d) : std::nullopt;
    }

    bool uses_only_vars_below(int m) const {
        for (const auto& [mon, c] : terms_)
            for (int i = m; i < n_; ++i)
                if (mon.e[i] != 0) return false;
        return true;
    }

    bool operator==(const Polynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial operator-() const {
        Polynomial r(n_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    Polynomial operator+(const Polynomial& o) const {
        Polynomial r = *this;
        r += o;
        return r;
    }
    Polynomial operator-(const Polynomial& o) const {
        Polynomial r = *this;
        r -= o;
        return r;
    }

    Polynomial operator*(const Polynomial& o) const {
        check_same(o);
        Polynomial r(n_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    Polynomial operator*(const Rational& c) const {
        Polynomial r(n_);
        if (pforms::is_zero(c)) return r;
        for (const auto& [m, q] : terms_) r.terms_.emplace(m, q * c);
        return r;
    }

    friend Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

    Polynomial pow(int m) const {
        if (m < 0) fail(errc::bad_argument, "negative power");
        Polynomial r = constant(n_, 1);
        for (int i = 0; i < m; ++i) r = r * *this;
        return r;
    }

    // exact partial derivative with respect to z_{i+1}
    Polynomial differentiate(int i) const {
        if (i < 0 || i >= n_) fail(errc::index_out_of_range, "derivative index");
        Polynomial r(n_);
        for (const auto& [m, c] : terms_) {
            if (m.e[i] == 0) continue;
            Monomial d = m;
            d.e[i] -= 1;
            r.add_term(d, c * m.e[i]);
        }
        return r;
    }

    Polynomial homogeneous_component(int d) const {
        if (d < 0) fail(errc::bad_argument, "negative degree");
        Polynomial r(n_);
        for (const auto& [m, c] : terms_)
            if (m.degree() == d) r.terms_.emplace(m, c);
        return r;
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        if (int(point.size()) != n_) fail(errc::dimension_mismatch, "evaluation point length");
        Rational total = 0;
        for (const auto& [m, c] : terms_) {
            Rational v = c;
            for (int i = 0; i < n_; ++i)
                if (m.e[i] != 0) v *= rational_pow(point[i], m.e[i]);
            total += v;
        }
        return total;
    }

    // p(images[0], ..., images[n-1]); the images may live in a ring with a
    // different variable count. Used for all linear coordinate changes.
    Polynomial substitute(const std::vector<Polynomial>& images) const {
        if (int(images.size()) != n_) fail(errc::dimension_mismatch, "substitution image count");
        int m = images.empty() ? 0 : images[0].vars();
        Polynomial r(m);
        for (const auto& [mon, c] : terms_) {
            Polynomial term = Polynomial::constant(m, c);
            for (int i = 0; i < n_; ++i)
                for (int k = 0; k < mon.e[i]; ++k) term = term * images[i];
            r += term;
        }
        return r;
    }

    // leading data under graded-lex
    const Monomial& leading_monomial() const {
        if (terms_.empty()) fail(errc::zero_input, "leading term of zero polynomial");
        return terms_.begin()->first;
    }
    const Rational& leading_coefficient() const {
        if (terms_.empty()) fail(errc::zero_input, "leading term of zero polynomial");
        return terms_.begin()->second;
    }

private:
    void check_same(const Polynomial& o) const {
        if (n_ != o.n_) fail(errc::dimension_mismatch, "polynomials in different rings");
    }

    int n_;
    TermMap terms_;
};

// -inf < every integer
inline bool degree_less(const std::optional<int>& a, const std::optional<int>& b) {
    if (!a) return bool(b);
    if (!b) return false;
    return *a < *b;
}

// p composed with z -> Mz for square invertible M.
inline Polynomial substitute_linear(const Polynomial& p, const RatMatrix& m) {
    if (m.rows() != p.vars() || m.cols() != p.vars())
        fail(errc::dimension_mismatch, "substitution matrix shape");
    if (!m.is_invertible()) fail(errc::singular_matrix, "substitution matrix is singular");
    std::vector<Polynomial> images;
    images.reserve(p.vars());
    for (int i = 0; i < p.vars(); ++i) {
        Polynomial l(p.vars());
        for (int j = 0; j < p.vars(); ++j) l.add_term([&] {
            Monomial mon = Monomial::one(p.vars());
            mon.e[j] = 1;
            return mon;
        }(), m.at(i, j));
        images.push_back(std::move(l));
    }
    return p.substitute(images);
}

// Exact multivariate division: returns p/d when d divides p, else nullopt.
inline std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& d) {
    if (p.vars() != d.vars()) fail(errc::dimension_mismatch, "division in different rings");
    if (d.is_zero()) fail(errc::zero_input, "division by zero polynomial");
    Polynomial rem = p;
    Polynomial quot(p.vars());
    const Monomial& lm = d.leading_monomial();
    const Rational& lc = d.leading_coefficient();
    while (!rem.is_zero()) {
        const Monomial& rm = rem.leading_monomial();
        if (!lm.divides(rm)) return std::nullopt;
        Monomial qm = rm / lm;
        Rational qc = rem.leading_coefficient() / lc;
        Polynomial t(p.vars());
        t.add_term(qm, qc);
        quot += t;
        rem -= t * d;
    }
    return quot;
}

namespace detail {

// view of p as a univariate polynomial in variable v with polynomial
// coefficients (which no longer mention v)
inline std::map<int, Polynomial> univariate_view(const Polynomial& p, int v) {
    std::map<int, Polynomial> out;
    for (const auto& [m, c] : p.terms()) {
        Monomial stripped = m;
        int d = stripped.e[v];
        stripped.e[v] = 0;
        auto it = out.find(d);
        if (it == out.end()) it = out.emplace(d, Polynomial(p.vars())).first;
        it->second.add_term(stripped, c);
    }
    return out;
}

inline int degree_in(const Polynomial& p, int v) {
    int d = -1;
    for (const auto& [m, c] : p.terms()) d = std::max(d, m.e[v]);
    return d;
}

inline Polynomial times_var_power(const Polynomial& p, int v, int k) {
    Polynomial r(p.vars());
    for (const auto& [m, c] : p.terms()) {
        Monomial m2 = m;
        m2.e[v] += k;
        r.add_term(m2, c);
    }
    return r;
}

inline Polynomial leading_coeff_in(const Polynomial& p, int v) {
    int d = degree_in(p, v);
    Polynomial r(p.vars());
    for (const auto& [m, c] : p.terms()) {
        if (m.e[v] != d) continue;
        Monomial m2 = m;
        m2.e[v] = 0;
        r.add_term(m2, c);
    }
    return r;
}

// pseudo-remainder of a by b in variable v
inline Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, int v) {
    int db = degree_in(b, v);
    Polynomial lb = leading_coeff_in(b, v);
    while (!a.is_zero() && degree_in(a, v) >= db) {
        int da = degree_in(a, v);
        Polynomial la = leading_coeff_in(a, v);
        a = a * lb - times_var_power(la, v, da - db) * b;
    }
    return a;
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b);

inline Polynomial content_in(const Polynomial& p, int v) {
    auto view = univariate_view(p, v);
    Polynomial g(p.vars());
    for (const auto& [d, coeff] : view) g = g.is_zero() ? coeff : gcd_impl(g, coeff);
    return g;
}

inline Monomial monomial_content(const Polynomial& p) {
    Monomial mc = p.leading_monomial();
    for (const auto& [m, c] : p.terms())
        for (int i = 0; i < p.vars(); ++i) mc.e[i] = std::min(mc.e[i], m.e[i]);
    return mc;
}

// gcd up to a rational unit; the public wrapper normalizes
inline Polynomial gcd_impl(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() || b.is_constant()) return Polynomial::constant(a.vars(), 1);

    // strip monomial content first; it is both cheap and common
    Monomial ma = monomial_content(a);
    Monomial mb = monomial_content(b);
    Monomial mg = ma;
    for (int i = 0; i < a.vars(); ++i) mg.e[i] = std::min(ma.e[i], mb.e[i]);
    Polynomial pa(a.vars()), pb(b.vars());
    for (const auto& [m, c] : a.terms()) pa.add_term(m / ma, c);
    for (const auto& [m, c] : b.terms()) pb.add_term(m / mb, c);

    // main variable: lowest index occurring in either primitive part
    int v = -1;
    for (int i = 0; i < a.vars() && v < 0; ++i)
        if (degree_in(pa, i) > 0 || degree_in(pb, i) > 0) v = i;
    Polynomial core(a.vars());
    if (v < 0) {
        core = Polynomial::constant(a.vars(), 1);
    } else if (degree_in(pa, v) == 0 || degree_in(pb, v) == 0) {
        // one side is free of v: the gcd divides its v-content
        const Polynomial& free_side = degree_in(pa, v) == 0 ? pa : pb;
        const Polynomial& other = degree_in(pa, v) == 0 ? pb : pa;
        core = gcd_impl(free_side, content_in(other, v));
    } else {
        Polynomial x = degree_in(pa, v) >= degree_in(pb, v) ? pa : pb;
        Polynomial y = degree_in(pa, v) >= degree_in(pb, v) ? pb : pa;
        Polynomial cx = content_in(x, v);
        Polynomial cy = content_in(y, v);
        Polynomial cont_gcd = gcd_impl(cx, cy);
        x = *divide_exact(x, cx);
        y = *divide_exact(y, cy);
        while (true) {
            Polynomial r = pseudo_remainder(x, y, v);
            if (r.is_zero()) {
                core = cont_gcd * *divide_exact(y, content_in(y, v));
                break;
            }
            if (degree_in(r, v) == 0) {
                core = cont_gcd;
                break;
            }
            x = y;
            y = *divide_exact(r, content_in(r, v));
        }
    }

    Polynomial g(a.vars());
    for (const auto& [m, c] : core.terms()) g.add_term(m * mg, c);
    return g;
}

} // namespace detail

// Greatest common divisor of a list, normalized so the leading coefficient
// under graded-lex is 1. Errors when every input is zero.
inline Polynomial gcd_many(const std::vector<Polynomial>& ps) {
    Polynomial g(ps.empty() ? 0 : ps[0].vars());
    bool any = false;
    for (const auto& p : ps) {
        if (p.is_zero()) continue;
        any = true;
        g = g.is_zero() ? p : detail::gcd_impl(g, p);
        if (g.is_constant()) break;
    }
    if (!any) fail(errc::zero_input, "gcd of all-zero inputs");
    return g * (1 / g.leading_coefficient());
}

inline Polynomial gcd(const Polynomial& a, const Polynomial& b) { return gcd_many({a, b}); }

} // namespace pforms
