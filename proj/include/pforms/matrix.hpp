#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pforms/errors.hpp"
#include "pforms/rational.hpp"

namespace pforms {

// Dense matrix over the rationals. Small and exact; every routine here is
// plain fraction arithmetic with no pivot-size heuristics.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Rational(0)) {
        if (rows < 0 || cols < 0) fail(errc::bad_argument, "negative matrix dimension");
    }

    static RatMatrix identity(int n) {
        RatMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rational& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const RatMatrix& o) const { return !(*this == o); }

    RatMatrix transposed() const {
        RatMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    RatMatrix operator*(const RatMatrix& o) const {
        if (cols_ != o.rows_) fail(errc::dimension_mismatch, "matrix product shape");
        RatMatrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                if (is_zero(at(i, k))) continue;
                for (int j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
            }
        return r;
    }

    std::vector<Rational> apply(const std::vector<Rational>& v) const {
        if (int(v.size()) != cols_) fail(errc::dimension_mismatch, "matrix-vector shape");
        std::vector<Rational> r(rows_, Rational(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
        return r;
    }

    bool is_skew_symmetric() const {
        if (rows_ != cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = i; j < cols_; ++j)
                if (at(i, j) != -at(j, i)) return false;
        return true;
    }

    // Gauss-Jordan with exact arithmetic; fails on a singular input.
    RatMatrix inverse() const {
        if (rows_ != cols_) fail(errc::dimension_mismatch, "inverse of non-square matrix");
        int n = rows_;
        RatMatrix work = *this;
        RatMatrix inv = identity(n);
        for (int col = 0; col < n; ++col) {
            int pivot = -1;
            for (int r = col; r < n; ++r)
                if (!is_zero(work.at(r, col))) { pivot = r; break; }
            if (pivot < 0) fail(errc::singular_matrix, "matrix is not invertible");
            work.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            Rational p = work.at(col, col);
            work.scale_row(col, 1 / p);
            inv.scale_row(col, 1 / p);
            for (int r = 0; r < n; ++r) {
                if (r == col || is_zero(work.at(r, col))) continue;
                Rational f = work.at(r, col);
                work.add_row(r, col, -f);
                inv.add_row(r, col, -f);
            }
        }
        return inv;
    }

    Rational determinant() const {
        if (rows_ != cols_) fail(errc::dimension_mismatch, "determinant of non-square matrix");
        RatMatrix work = *this;
        Rational det = 1;
        int n = rows_;
        for (int col = 0; col < n; ++col) {
            int pivot = -1;
            for (int r = col; r < n; ++r)
                if (!is_zero(work.at(r, col))) { pivot = r; break; }
            if (pivot < 0) return Rational(0);
            if (pivot != col) {
                work.swap_rows(col, pivot);
                det = -det;
            }
            det *= work.at(col, col);
            for (int r = col + 1; r < n; ++r) {
                if (is_zero(work.at(r, col))) continue;
                Rational f = work.at(r, col) / work.at(col, col);
                work.add_row(r, col, -f);
            }
        }
        return det;
    }

    bool is_invertible() const { return rows_ == cols_ && !is_zero(determinant()); }

    int rank() const {
        RatMatrix work = *this;
        int r = 0;
        for (int col = 0; col < cols_ && r < rows_; ++col) {
            int pivot = -1;
            for (int row = r; row < rows_; ++row)
                if (!is_zero(work.at(row, col))) { pivot = row; break; }
            if (pivot < 0) continue;
            work.swap_rows(r, pivot);
            for (int row = r + 1; row < rows_; ++row) {
                if (is_zero(work.at(row, col))) continue;
                Rational f = work.at(row, col) / work.at(r, col);
                work.add_row(row, r, -f);
            }
            ++r;
        }
        return r;
    }

    // basis of {x : Ax = 0}, one vector per entry
    std::vector<std::vector<Rational>> null_space() const {
        RatMatrix work = *this;
        std::vector<int> pivot_col;
        int r = 0;
        for (int col = 0; col < cols_ && r < rows_; ++col) {
            int pivot = -1;
            for (int row = r; row < rows_; ++row)
                if (!is_zero(work.at(row, col))) { pivot = row; break; }
            if (pivot < 0) continue;
            work.swap_rows(r, pivot);
            Rational p = work.at(r, col);
            work.scale_row(r, 1 / p);
            for (int row = 0; row < rows_; ++row) {
                if (row == r || is_zero(work.at(row, col))) continue;
                work.add_row(row, r, -work.at(row, col));
            }
            pivot_col.push_back(col);
            ++r;
        }
        std::vector<std::vector<Rational>> basis;
        int next_pivot = 0;
        for (int col = 0; col < cols_; ++col) {
            if (next_pivot < int(pivot_col.size()) && pivot_col[next_pivot] == col) {
                ++next_pivot;
                continue;
            }
            std::vector<Rational> v(cols_, Rational(0));
            v[col] = 1;
            for (int i = 0; i < int(pivot_col.size()); ++i) v[pivot_col[i]] = -work.at(i, col);
            basis.push_back(std::move(v));
        }
        return basis;
    }

private:
    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }
    void scale_row(int i, const Rational& f) {
        for (int c = 0; c < cols_; ++c) at(i, c) *= f;
    }
    void add_row(int dst, int src, const Rational& f) {
        for (int c = 0; c < cols_; ++c) at(dst, c) += f * at(src, c);
    }

    int rows_, cols_;
    std::vector<Rational> a_;

    friend std::optional<RatMatrix> solve_minimal(RatMatrix, RatMatrix);
};

// Solves A X = B exactly. Returns the solution with every free variable set
// to zero (first-pivot elimination), or nullopt when the system is
// inconsistent.
inline std::optional<RatMatrix> solve_minimal(RatMatrix a, RatMatrix b) {
    if (a.rows() != b.rows()) fail(errc::dimension_mismatch, "solve shape");
    int m = a.rows(), n = a.cols(), q = b.cols();
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int pivot = -1;
        for (int r = row; r < m; ++r)
            if (!is_zero(a.at(r, col))) { pivot = r; break; }
        if (pivot < 0) continue;
        a.swap_rows(row, pivot);
        b.swap_rows(row, pivot);
        Rational p = a.at(row, col);
        a.scale_row(row, 1 / p);
        b.scale_row(row, 1 / p);
        for (int r = 0; r < m; ++r) {
            if (r == row || is_zero(a.at(r, col))) continue;
            Rational f = a.at(r, col);
            for (int c = 0; c < n; ++c) a.at(r, c) -= f * a.at(row, c);
            for (int c = 0; c < q; ++c) b.at(r, c) -= f * b.at(row, c);
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (int r = row; r < m; ++r)
        for (int c = 0; c < q; ++c)
            if (!is_zero(b.at(r, c))) return std::nullopt;
    RatMatrix x(n, q);
    for (int r = 0; r < int(pivot_col.size()); ++r)
        for (int c = 0; c < q; ++c) x.at(pivot_col[r], c) = b.at(r, c);
    return x;
}

// Skew-symmetric congruence normal form. For skew A returns (M, k) with
// M^T A M = J, where J has J[i][k+i] = 1 = -J[k+i][i] for i < k and zeros
// elsewhere; 2k = rank(A). Symmetric-pair Gaussian elimination over the
// rationals, no eigenvalue machinery.
struct SkewNormalForm {
    RatMatrix change; // columns are the new basis vectors in old coordinates
    int pairs;        // k = rank/2
};

inline SkewNormalForm skew_congruence_normal_form(const RatMatrix& a) {
    if (!a.is_skew_symmetric()) fail(errc::bad_argument, "matrix is not skew-symmetric");
    int n = a.rows();
    // basis[c] is the c-th candidate basis vector; pairings are evaluated
    // through the original form.
    std::vector<std::vector<Rational>> basis(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) basis[i][i] = 1;

    auto pairing = [&](const std::vector<Rational>& u, const std::vector<Rational>& v) {
        Rational s = 0;
        for (int i = 0; i < n; ++i) {
            if (is_zero(u[i])) continue;
            for (int j = 0; j < n; ++j) s += u[i] * a.at(i, j) * v[j];
        }
        return s;
    };

    std::vector<std::vector<Rational>> us, vs;
    std::vector<std::vector<Rational>> rest(basis.begin(), basis.end());
    while (true) {
        int pi = -1, pj = -1;
        for (int i = 0; i < int(rest.size()) && pi < 0; ++i)
            for (int j = i + 1; j < int(rest.size()); ++j)
                if (!is_zero(pairing(rest[i], rest[j]))) { pi = i; pj = j; break; }
        if (pi < 0) break;
        std::vector<Rational> u = rest[pi];
        std::vector<Rational> v = rest[pj];
        Rational c = pairing(u, v);
        for (auto& x : v) x /= c; // now pairing(u, v) = 1
        std::vector<std::vector<Rational>> next;
        for (int i = 0; i < int(rest.size()); ++i) {
            if (i == pi || i == pj) continue;
            std::vector<Rational> w = rest[i];
            Rational bu = pairing(u, w);
            Rational bv = pairing(v, w);
            // w' = w - B(u,w) v + B(v,w) u kills both pairings
            for (int t = 0; t < n; ++t) w[t] += -bu * v[t] + bv * u[t];
            next.push_back(std::move(w));
        }
        us.push_back(std::move(u));
        vs.push_back(std::move(v));
        rest = std::move(next);
    }

    int k = int(us.size());
    RatMatrix m(n, n);
    for (int c = 0; c < k; ++c)
        for (int r = 0; r < n; ++r) m.at(r, c) = us[c][r];
    for (int c = 0; c < k; ++c)
        for (int r = 0; r < n; ++r) m.at(r, k + c) = vs[c][r];
    for (int c = 0; c < int(rest.size()); ++c)
        for (int r = 0; r < n; ++r) m.at(r, 2 * k + c) = rest[c][r];
    return SkewNormalForm{std::move(m), k};
}

} // namespace pforms
