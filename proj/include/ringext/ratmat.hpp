#pragma once

// Dense exact rational matrices: fraction-free (Bareiss) determinants,
// reduced row echelon form, kernel bases, and Lagrange interpolation for
// the determinant-as-polynomial checks.

#include "ringext/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace ringext {

class RatMat {
  public:
    RatMat() : rows_(0), cols_(0) {}
    RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

    static RatMat identity(std::size_t n) {
        RatMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const RatMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    RatMat operator*(const RatMat& o) const {
        if (cols_ != o.rows_) throw std::logic_error("RatMat: dimension mismatch in product");
        RatMat out(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rat& aik = at(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const Rat& bkj = o.at(k, j);
                    if (bkj != 0) out.at(i, j) += aik * bkj;
                }
            }
        return out;
    }

    std::vector<Rat> operator*(const std::vector<Rat>& v) const {
        if (cols_ != v.size()) throw std::logic_error("RatMat: dimension mismatch in mat*vec");
        std::vector<Rat> out(rows_, Rat(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != 0 && v[j] != 0) out[i] += at(i, j) * v[j];
        return out;
    }

    /// Exact determinant by Bareiss fraction-free elimination. Rows are
    /// first scaled to integers; the scale is divided back out at the end.
    Rat det() const {
        if (rows_ != cols_) throw std::logic_error("RatMat: determinant of non-square matrix");
        const std::size_t n = rows_;
        if (n == 0) return Rat(1);
        std::vector<Int> m(n * n);
        Rat scale(1);
        for (std::size_t i = 0; i < n; ++i) {
            Int l = 1;
            for (std::size_t j = 0; j < n; ++j) l = lcm(l, denominator(at(i, j)));
            scale *= Rat(l);
            for (std::size_t j = 0; j < n; ++j)
                m[i * n + j] = numerator(at(i, j)) * (l / denominator(at(i, j)));
        }
        int sign = 1;
        Int prev = 1;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            std::size_t piv = k;
            while (piv < n && m[piv * n + k] == 0) ++piv;
            if (piv == n) return Rat(0);
            if (piv != k) {
                for (std::size_t j = k; j < n; ++j) std::swap(m[piv * n + j], m[k * n + j]);
                sign = -sign;
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                for (std::size_t j = k + 1; j < n; ++j)
                    m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
                m[i * n + k] = 0;
            }
            prev = m[k * n + k];
        }
        Rat d(m[n * n - 1]);
        if (sign < 0) d = -d;
        return d / scale;
    }

    /// Reduced row echelon form; returns the pivot column of each row.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t piv = row;
            while (piv < rows_ && at(piv, col) == 0) ++piv;
            if (piv == rows_) continue;
            if (piv != row)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(piv, j), at(row, j));
            const Rat inv = Rat(1) / at(row, col);
            for (std::size_t j = col; j < cols_; ++j) at(row, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == row || at(i, col) == 0) continue;
                const Rat f = at(i, col);
                for (std::size_t j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    /// Basis of the right kernel, one vector per free column, in ascending
    /// free-column order.
    std::vector<std::vector<Rat>> kernel_basis() const {
        RatMat r = *this;
        const auto pivots = r.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto p : pivots) is_pivot[p] = true;
        std::vector<std::vector<Rat>> basis;
        for (std::size_t f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            std::vector<Rat> v(cols_, Rat(0));
            v[f] = 1;
            for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r.at(i, f);
            basis.push_back(std::move(v));
        }
        return basis;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

/// Coefficients (ascending degree) of the unique polynomial of degree
/// < points.size() through the given (x, y) points. Exact Newton form
/// converted to monomial coefficients.
inline std::vector<Rat> lagrange_interpolate(const std::vector<std::pair<Rat, Rat>>& points) {
    const std::size_t n = points.size();
    // Divided-difference table (n is tiny here).
    std::vector<std::vector<Rat>> dd(n);
    for (std::size_t i = 0; i < n; ++i) dd[i] = {points[i].second};
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = 0; i + k < n; ++i)
            dd[i].push_back((dd[i + 1][k - 1] - dd[i][k - 1]) / (points[i + k].first - points[i].first));
    // Expand Newton form into monomial coefficients.
    std::vector<Rat> out(n, Rat(0));
    std::vector<Rat> basis{Rat(1)};  // product of (x - x_j), ascending coefficients
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < basis.size(); ++j) out[j] += dd[0][k] * basis[j];
        if (k + 1 < n) {
            std::vector<Rat> next(basis.size() + 1, Rat(0));
            for (std::size_t j = 0; j < basis.size(); ++j) {
                next[j + 1] += basis[j];
                next[j] -= points[k].first * basis[j];
            }
            basis = std::move(next);
        }
    }
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    return out;
}

inline Rat poly_eval(const std::vector<Rat>& coeffs, const Rat& x) {
    Rat v(0);
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
    return v;
}

}  // namespace ringext
