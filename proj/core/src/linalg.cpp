#include "qorbit/linalg.hpp"

#include "qorbit/errors.hpp"

#include <cassert>

namespace qorbit {

DMat dmat(std::size_t rows, std::size_t cols) {
    return DMat(rows, DVec(cols));
}

DMat identity_mat(std::size_t n) {
    DMat m = dmat(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Scalar(1);
    return m;
}

DMat mat_mul(const DMat& a, const DMat& b) {
    std::size_t r = a.size(), k = b.size(), c = k ? b[0].size() : 0;
    DMat m = dmat(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t].is_zero()) continue;
            for (std::size_t j = 0; j < c; ++j) {
                if (b[t][j].is_zero()) continue;
                m[i][j] += a[i][t] * b[t][j];
            }
        }
    return m;
}

DVec mat_vec(const DMat& a, const DVec& v) {
    DVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (a[i][j].is_zero() || v[j].is_zero()) continue;
            r[i] += a[i][j] * v[j];
        }
    return r;
}

DMat mat_add(const DMat& a, const DMat& b) {
    DMat m = a;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] += b[i][j];
    return m;
}

DMat mat_sub(const DMat& a, const DMat& b) {
    DMat m = a;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= b[i][j];
    return m;
}

DMat mat_scale(const DMat& a, const Scalar& c) {
    DMat m = a;
    for (auto& row : m)
        for (auto& x : row) x *= c;
    return m;
}

DMat mat_transpose(const DMat& a) {
    if (a.empty()) return a;
    DMat m = dmat(a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) m[j][i] = a[i][j];
    return m;
}

bool mat_is_zero(const DMat& a) {
    for (auto& row : a)
        for (auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

Echelon echelon(DMat a) {
    Echelon e;
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t p = row;
        while (p < rows && a[p][col].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[row], a[p]);
        Scalar inv = a[row][col].inverse();
        for (std::size_t j = col; j < cols; ++j)
            if (!a[row][j].is_zero()) a[row][j] *= inv;
        for (std::size_t r2 = 0; r2 < rows; ++r2) {
            if (r2 == row || a[r2][col].is_zero()) continue;
            Scalar f = a[r2][col];
            for (std::size_t j = col; j < cols; ++j) {
                if (a[row][j].is_zero()) continue;
                a[r2][j] -= f * a[row][j];
            }
        }
        e.pivot_cols.push_back(static_cast<int>(col));
        ++row;
    }
    e.rank = static_cast<int>(row);
    e.rref = std::move(a);
    return e;
}

int mat_rank(const DMat& a) { return echelon(a).rank; }

std::optional<DVec> solve(const DMat& a, const DVec& b) {
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    DMat aug = a;
    for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    Echelon e = echelon(std::move(aug));
    // inconsistency: pivot in the last column
    for (int pc : e.pivot_cols)
        if (pc == static_cast<int>(cols)) return std::nullopt;
    DVec x(cols, Scalar(0));
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
        x[e.pivot_cols[r]] = e.rref[r][cols];
    return x;
}

std::vector<DVec> kernel_basis(const DMat& a) {
    std::size_t cols = a.empty() ? 0 : a[0].size();
    Echelon e = echelon(a);
    std::vector<bool> is_pivot(cols, false);
    for (int pc : e.pivot_cols) is_pivot[pc] = true;
    std::vector<DVec> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        DVec v(cols, Scalar(0));
        v[free_col] = Scalar(1);
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
            v[e.pivot_cols[r]] = -e.rref[r][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

FFExpand ff_rank_expand(const DMat& a) {
    FFExpand out;
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    if (rows == 0 || cols == 0) return out;
    // clear denominators column by column (tracked for the back-substitution)
    std::vector<LaurentPoly> m(rows * cols);
    DVec colden(cols, Scalar(1));
    for (std::size_t j = 0; j < cols; ++j) {
        LaurentPoly d(GaussQ(1));
        for (std::size_t i = 0; i < rows; ++i)
            if (!a[i][j].is_zero() && !a[i][j].den().is_constant()) {
                LaurentPoly g = laurent_gcd(d, a[i][j].den());
                d = d * laurent_divexact(a[i][j].den(), g);
            }
        colden[j] = Scalar(d);
        for (std::size_t i = 0; i < rows; ++i) {
            Scalar v = a[i][j] * colden[j];
            if (!v.den().is_constant())
                throw precondition_error("column denominator clearing failed");
            m[i * cols + j] = v.num();
        }
    }
    auto at = [&](std::size_t i, std::size_t j) -> LaurentPoly& { return m[i * cols + j]; };
    // Bareiss forward elimination with leftmost pivots
    LaurentPoly prev(GaussQ(1));
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pr = r;
        while (pr < rows && at(pr, col).is_zero()) ++pr;
        if (pr == rows) continue;
        if (pr != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(at(r, j), at(pr, j));
        bool prev_is_one = prev.is_constant() && prev.coeff(0, 0).is_one();
        for (std::size_t rr = r + 1; rr < rows; ++rr) {
            bool col_zero = at(rr, col).is_zero();
            for (std::size_t j = col + 1; j < cols; ++j) {
                LaurentPoly t = at(r, col) * at(rr, j);
                if (!col_zero && !at(r, j).is_zero()) t -= at(rr, col) * at(r, j);
                at(rr, j) = (t.is_zero() || prev_is_one) ? t : laurent_divexact(t, prev);
            }
            at(rr, col) = LaurentPoly();
        }
        prev = at(r, col);
        out.pivot_cols.push_back(static_cast<int>(col));
        ++r;
    }
    out.rank = static_cast<int>(r);
    // back-substitution per column over the echelon rows
    out.coords = dmat(out.rank, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        bool pivot_col = false;
        for (int k = 0; k < out.rank; ++k)
            if (out.pivot_cols[k] == static_cast<int>(j)) {
                out.coords[k][j] = Scalar(1);
                pivot_col = true;
                break;
            }
        if (pivot_col) continue;
        for (int rr = out.rank - 1; rr >= 0; --rr) {
            if (out.pivot_cols[rr] > static_cast<int>(j)) continue;
            Scalar acc = Scalar(at(rr, j));
            for (int k = rr + 1; k < out.rank; ++k) {
                if (out.coords[k][j].is_zero()) continue;
                acc -= Scalar(at(rr, out.pivot_cols[k])) * out.coords[k][j];
            }
            out.coords[rr][j] = acc / Scalar(at(rr, out.pivot_cols[rr]));
        }
        // undo the column scalings: x_b d_b / d_j
        for (int k = 0; k < out.rank; ++k)
            if (!out.coords[k][j].is_zero())
                out.coords[k][j] = out.coords[k][j] * colden[out.pivot_cols[k]] / colden[j];
    }
    return out;
}

std::optional<DMat> mat_inverse(const DMat& a) {
    std::size_t n = a.size();
    DMat aug = a;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? Scalar(1) : Scalar(0));
    }
    Echelon e = echelon(std::move(aug));
    if (e.rank != static_cast<int>(n)) return std::nullopt;
    for (std::size_t r = 0; r < n; ++r)
        if (e.pivot_cols[r] != static_cast<int>(r)) return std::nullopt;
    DMat inv = dmat(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.rref[i][n + j];
    return inv;
}

} // namespace qorbit
