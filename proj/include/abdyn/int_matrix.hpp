/*
   Copyright 2026 The abdyn Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ABDYN_INT_MATRIX_HPP
#define ABDYN_INT_MATRIX_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "int_poly.hpp"

namespace abdyn {

using IntVector = std::vector<Int>;

/// Dense row-major matrix over Z with arbitrary-precision entries.
class IntMatrix {
   public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, 0) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        detail::require_dims(e_.size() == rows_ * cols_, "matrix entry count does not match rows*cols");
    }
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        e_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            detail::require_dims(r.size() == cols_, "ragged matrix literal");
            for (long v : r) e_.emplace_back(v);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
        IntMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            detail::require_dims(rows[i].size() == cols, "row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    // Companion matrix of a monic polynomial: ones on the subdiagonal, -coefficients in the last column.
    static IntMatrix companion(const IntPolynomial& p) {
        detail::require(p.is_monic(), "companion matrix needs a monic polynomial");
        const auto n = static_cast<std::size_t>(p.degree());
        IntMatrix m(n, n);
        for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = 1;
        for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -p[i];
        return m;
    }

    static IntMatrix block_diag(const std::vector<IntMatrix>& blocks) {
        std::size_t r = 0, c = 0;
        for (const auto& b : blocks) {
            r += b.rows();
            c += b.cols();
        }
        IntMatrix m(r, c);
        std::size_t oi = 0, oj = 0;
        for (const auto& b : blocks) {
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j) m(oi + i, oj + j) = b(i, j);
            oi += b.rows();
            oj += b.cols();
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    const std::vector<Int>& entries() const { return e_; }

    Int& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    IntVector row(std::size_t i) const {
        return IntVector(e_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                         e_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    IntVector col(std::size_t j) const {
        IntVector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    IntMatrix submatrix(const std::vector<std::size_t>& ri, const std::vector<std::size_t>& ci) const {
        IntMatrix s(ri.size(), ci.size());
        for (std::size_t a = 0; a < ri.size(); ++a)
            for (std::size_t b = 0; b < ci.size(); ++b) s(a, b) = (*this)(ri[a], ci[b]);
        return s;
    }

    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](const Int& a) { return a == 0; });
    }
    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    IntMatrix& operator+=(const IntMatrix& o) {
        detail::require_dims(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum shape mismatch");
        for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
        return *this;
    }
    IntMatrix& operator-=(const IntMatrix& o) {
        detail::require_dims(rows_ == o.rows_ && cols_ == o.cols_, "matrix difference shape mismatch");
        for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
        return *this;
    }
    friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) { return a += b; }
    friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) { return a -= b; }
    friend IntMatrix operator*(const Int& s, IntMatrix m) {
        for (auto& a : m.e_) a *= s;
        return m;
    }
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        detail::require_dims(a.cols_ == b.rows_, "matrix product shape mismatch");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Int& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }
    friend IntVector operator*(const IntMatrix& a, const IntVector& v) {
        detail::require_dims(a.cols_ == v.size(), "matrix-vector shape mismatch");
        IntVector out(a.rows_, 0);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
        return out;
    }
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? ", [" : "[");
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
            os << "]";
        }
        os << "]";
        return os.str();
    }

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> e_;
};

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.to_string(); }

inline IntMatrix pow(const IntMatrix& m, unsigned e) {
    detail::require_dims(m.is_square(), "matrix power of a non-square matrix");
    IntMatrix result = IntMatrix::identity(m.rows());
    IntMatrix base = m;
    while (e != 0) {
        if (e & 1U) result = result * base;
        e >>= 1U;
        if (e != 0) base = base * base;
    }
    return result;
}

// p(M) by Horner's rule.
inline IntMatrix evaluate(const IntPolynomial& p, const IntMatrix& m) {
    detail::require_dims(m.is_square(), "polynomial evaluation at a non-square matrix");
    const std::size_t n = m.rows();
    IntMatrix acc(n, n);
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * m;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
    }
    return acc;
}

namespace detail {

// Bareiss fraction-free forward elimination on a copy; returns (rank, det-if-square).
inline std::pair<std::size_t, Int> bareiss(IntMatrix a) {
    const std::size_t m = a.rows(), n = a.cols();
    Int prev = 1;
    int sign = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && a(p, c) == 0) ++p;
        if (p == m) continue;
        if (p != r) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(r, j));
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                Int t = a(r, c) * a(i, j) - a(i, c) * a(r, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a(i, c) = 0;
        }
        prev = a(r, c);
        ++r;
    }
    Int det = 0;
    if (m == n && r == n) det = n == 0 ? Int(1) : Int(sign * prev);
    return {r, det};
}

}  // namespace detail

inline Int determinant(const IntMatrix& m) {
    detail::require_dims(m.is_square(), "determinant of a non-square matrix");
    if (m.rows() == 0) return 1;
    return detail::bareiss(m).second;
}

inline std::size_t rank(const IntMatrix& m) { return detail::bareiss(m).first; }

inline bool is_unimodular(const IntMatrix& m) {
    if (!m.is_square()) return false;
    Int d = determinant(m);
    return d == 1 || d == -1;
}

/**
 * Characteristic polynomial det(T*I - M), computed with Berkowitz's
 * division-free algorithm so every intermediate stays in Z.
 */
inline IntPolynomial char_poly(const IntMatrix& m) {
    detail::require_dims(m.is_square(), "characteristic polynomial of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return IntPolynomial::one();
    // v holds the coefficients (descending) of the char poly of the leading r x r block.
    std::vector<Int> v{1, -m(0, 0)};
    for (std::size_t r = 1; r < n; ++r) {
        // Partition leading (r+1)x(r+1) block as [[A, C], [R, a]] with A r x r.
        std::vector<Int> col(r), rowv(r);
        for (std::size_t i = 0; i < r; ++i) {
            col[i] = m(i, r);
            rowv[i] = m(r, i);
        }
        // Toeplitz column: 1, -a, -R C, -R A C, -R A^2 C, ...
        std::vector<Int> t(r + 2);
        t[0] = 1;
        t[1] = -m(r, r);
        std::vector<Int> w = col;
        for (std::size_t k = 2; k < r + 2; ++k) {
            Int s = 0;
            for (std::size_t i = 0; i < r; ++i) s += rowv[i] * w[i];
            t[k] = -s;
            std::vector<Int> nw(r, 0);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) nw[i] += m(i, j) * w[j];
            w = std::move(nw);
        }
        std::vector<Int> nv(r + 2, 0);
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= std::min(i, r); ++j) nv[i] += t[i - j] * v[j];
        v = std::move(nv);
    }
    std::reverse(v.begin(), v.end());
    return IntPolynomial(std::move(v));
}

// k-th exterior power: the matrix of k x k minors, rows/cols indexed by sorted k-subsets in lexicographic order.
inline IntMatrix exterior_power(const IntMatrix& m, std::size_t k) {
    detail::require_dims(k <= m.rows() && k <= m.cols(), "exterior power degree exceeds matrix size");
    auto subsets = [](std::size_t n, std::size_t kk) {
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> idx(kk);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            out.push_back(idx);
            std::size_t i = kk;
            while (i > 0 && idx[i - 1] == n - kk + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < kk; ++j) idx[j] = idx[j - 1] + 1;
        }
        return out;
    };
    if (k == 0) return IntMatrix{{1}};
    const auto rs = subsets(m.rows(), k);
    const auto cs = subsets(m.cols(), k);
    IntMatrix e(rs.size(), cs.size());
    for (std::size_t a = 0; a < rs.size(); ++a)
        for (std::size_t b = 0; b < cs.size(); ++b) e(a, b) = determinant(m.submatrix(rs[a], cs[b]));
    return e;
}

// Squared Frobenius norm, exact.
inline Int frobenius_squared(const IntMatrix& m) {
    Int s = 0;
    for (const auto& a : m.entries()) s += a * a;
    return s;
}

}  // namespace abdyn

#endif  // ABDYN_INT_MATRIX_HPP
