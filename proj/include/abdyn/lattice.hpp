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

#ifndef ABDYN_LATTICE_HPP
#define ABDYN_LATTICE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "int_matrix.hpp"
#include "int_poly.hpp"

namespace abdyn {

namespace detail {

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline void row_axpy(IntMatrix& m, std::size_t dst, const Int& f, std::size_t src) {
    if (f == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= f * m(src, j);
}

inline void row_swap(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

/**
 * Integer row echelon form of the leading `pivot_cols` columns using only
 * unimodular row operations; the remaining columns ride along. With
 * `reduce_above`, entries above each pivot are reduced into [0, pivot) and
 * the echelon block is the Hermite normal form. Returns the rank.
 */
inline std::size_t integer_echelon(IntMatrix& m, std::size_t pivot_cols, bool reduce_above) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < m.rows(); ++c) {
        while (true) {
            std::size_t best = m.rows();
            for (std::size_t i = r; i < m.rows(); ++i)
                if (m(i, c) != 0 && (best == m.rows() || abs(m(i, c)) < abs(m(best, c)))) best = i;
            if (best == m.rows()) break;
            row_swap(m, r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < m.rows(); ++i) {
                if (m(i, c) == 0) continue;
                row_axpy(m, i, floor_div(m(i, c), m(r, c)), r);
                if (m(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (r >= m.rows() || m(r, c) == 0) continue;
        if (m(r, c) < 0)
            for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
        if (reduce_above)
            for (std::size_t i = 0; i < r; ++i) row_axpy(m, i, floor_div(m(i, c), m(r, c)), r);
        ++r;
    }
    return r;
}

}  // namespace detail

/// Hermite normal form of the row lattice of `rows` (zero rows dropped).
inline IntMatrix hermite_normal_form(IntMatrix rows) {
    const std::size_t r = detail::integer_echelon(rows, rows.cols(), true);
    std::vector<std::size_t> keep(r), all(rows.cols());
    for (std::size_t i = 0; i < r; ++i) keep[i] = i;
    for (std::size_t j = 0; j < rows.cols(); ++j) all[j] = j;
    return rows.submatrix(keep, all);
}

/// Basis (as rows) of the integer kernel {x in Z^n : A x = 0}. The basis spans a saturated lattice.
inline IntMatrix integer_kernel(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    // [A^T | I_n]: rows whose A^T part vanishes after echelon carry kernel vectors.
    IntMatrix aug(n, m + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) aug(i, j) = a(j, i);
        aug(i, m + i) = 1;
    }
    const std::size_t r = detail::integer_echelon(aug, m, false);
    IntMatrix ker(n - r, n);
    for (std::size_t i = r; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) ker(i - r, j) = aug(i, m + j);
    if (ker.rows() == 0) return ker;
    return hermite_normal_form(ker);
}

/// Nonzero elementary divisors d_1 | d_2 | ... of the Smith normal form.
inline std::vector<Int> smith_divisors(IntMatrix a) {
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<Int> out;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        auto move_min_to_pivot = [&]() {
            std::size_t bi = m, bj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a(i, j) != 0 && (bi == m || abs(a(i, j)) < abs(a(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == m) return false;
            detail::row_swap(a, t, bi);
            for (std::size_t i = 0; i < m; ++i) std::swap(a(i, t), a(i, bj));
            return true;
        };
        if (!move_min_to_pivot()) break;
        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a(i, t) == 0) continue;
                detail::row_axpy(a, i, detail::floor_div(a(i, t), a(t, t)), t);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a(t, j) == 0) continue;
                Int f = detail::floor_div(a(t, j), a(t, t));
                for (std::size_t i = 0; i < m; ++i) a(i, j) -= f * a(i, t);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) {
                move_min_to_pivot();
                continue;
            }
            bool divisible = true;
            for (std::size_t i = t + 1; i < m && divisible; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        for (std::size_t k = 0; k < n; ++k) a(t, k) += a(i, k);
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        out.push_back(abs(a(t, t)));
    }
    return out;
}

/// Sublattice of Z^n given by a row basis.
struct Sublattice {
    std::size_t ambient_rank = 0;
    IntMatrix basis;  // rank x ambient_rank, rows are basis vectors
    bool saturated = false;

    std::size_t rank() const { return basis.rows(); }

    /// Coordinates of v in the Hermite basis of the lattice; nullopt if v is not in it.
    std::optional<IntVector> hermite_coordinates(IntVector v) const {
        detail::require_dims(v.size() == ambient_rank, "vector length differs from ambient rank");
        const IntMatrix h = hermite_normal_form(basis);
        IntVector coords;
        std::size_t c = 0;
        for (std::size_t i = 0; i < h.rows(); ++i) {
            while (h(i, c) == 0) {
                if (v[c] != 0) return std::nullopt;
                ++c;
            }
            if (!mpz_divisible_p(v[c].get_mpz_t(), h(i, c).get_mpz_t())) return std::nullopt;
            const Int f = v[c] / h(i, c);
            for (std::size_t j = 0; j < ambient_rank; ++j) v[j] -= f * h(i, j);
            coords.push_back(f);
        }
        if (!std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; })) return std::nullopt;
        return coords;
    }

    bool contains(const IntVector& v) const { return hermite_coordinates(v).has_value(); }

    // u maps the lattice into itself (u acts on column vectors).
    bool is_invariant_under(const IntMatrix& u) const {
        for (std::size_t i = 0; i < rank(); ++i)
            if (!contains(u * basis.row(i))) return false;
        return true;
    }

    // Torsion-freeness of Z^n / L, certified by the Smith form of the basis.
    bool check_saturated() const {
        for (const auto& d : smith_divisors(basis))
            if (d != 1) return false;
        return true;
    }
};

/// Matrix of u on an invariant sublattice, in its Hermite basis (columns are images).
inline IntMatrix restriction(const Sublattice& l, const IntMatrix& u) {
    detail::require_dims(u.is_square() && u.rows() == l.ambient_rank, "restriction: dimension mismatch");
    const IntMatrix h = hermite_normal_form(l.basis);
    IntMatrix out(l.rank(), l.rank());
    for (std::size_t j = 0; j < l.rank(); ++j) {
        const auto c = l.hermite_coordinates(u * h.row(j));
        detail::require(c.has_value(), "restriction: lattice is not invariant");
        for (std::size_t i = 0; i < l.rank(); ++i) out(i, j) = (*c)[i];
    }
    return out;
}

/// Inverse of a unimodular integer matrix, by Gauss-Jordan over Q.
inline IntMatrix inverse_unimodular(const IntMatrix& m) {
    detail::require_dims(m.is_square(), "inverse_unimodular needs a square matrix");
    detail::require(is_unimodular(m), "inverse_unimodular needs det +/-1");
    const std::size_t n = m.rows();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
        a[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (a[p][c] == 0) ++p;
        std::swap(a[p], a[c]);
        const Rat piv = a[c][c];
        for (auto& x : a[c]) x /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            const Rat f = a[i][c];
            for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    IntMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = a[i][n + j].get_num();
    return inv;
}

/**
 * Unimodular U whose first rows span the saturated lattice with row basis k.
 */
inline IntMatrix complete_to_unimodular(const IntMatrix& k, std::size_t n) {
    detail::require_dims(k.rows() == 0 || k.cols() == n, "complete_to_unimodular: width mismatch");
    const std::size_t r = k.rows();
    IntMatrix aug(n, r + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < r; ++j) aug(i, j) = k(j, i);
        aug(i, r + i) = 1;
    }
    detail::integer_echelon(aug, r, false);
    IntMatrix rmat(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rmat(i, j) = aug(i, r + j);
    // R K^T = [T; 0] with T unimodular, so K = T^T (first rows of R^{-T}).
    for (std::size_t i = 0; i < r; ++i)
        detail::require(abs(aug(i, i)) == 1, "complete_to_unimodular: lattice is not saturated");
    return inverse_unimodular(rmat).transpose();
}

/// The saturated lattice Z^n intersected with ker p(M).
inline Sublattice kernel_lattice(const IntPolynomial& p, const IntMatrix& m) {
    detail::require_dims(m.is_square(), "kernel_lattice needs a square matrix");
    return {m.rows(), integer_kernel(evaluate(p, m)), true};
}

/// [Z^n : L0 + L1] for complementary sublattices; 0 when the ranks do not add up to n.
inline Int direct_sum_index(const Sublattice& a, const Sublattice& b) {
    detail::require_dims(a.ambient_rank == b.ambient_rank, "sublattices live in different ambient lattices");
    if (a.rank() + b.rank() != a.ambient_rank) return 0;
    IntMatrix stacked(a.ambient_rank, a.ambient_rank);
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < a.ambient_rank; ++j) stacked(i, j) = a.basis(i, j);
    for (std::size_t i = 0; i < b.rank(); ++i)
        for (std::size_t j = 0; j < a.ambient_rank; ++j) stacked(a.rank() + i, j) = b.basis(i, j);
    return abs(determinant(stacked));
}

/**
 * Size of the largest Jordan block for eigenvalue 1: the smallest j >= 1 with
 * rank (M - I)^j equal to the stable rank rank (M - I)^n. Returns 0 when 1 is
 * not an eigenvalue.
 */
inline unsigned unipotent_index(const IntMatrix& m) {
    detail::require_dims(m.is_square(), "unipotent_index needs a square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 0;
    const IntMatrix nil = m - IntMatrix::identity(n);
    const std::size_t stable = rank(pow(nil, static_cast<unsigned>(n)));
    if (stable == n) return 0;
    IntMatrix p = nil;
    for (unsigned j = 1; j <= n; ++j) {
        if (rank(p) == stable) return j;
        p = p * nil;
    }
    return static_cast<unsigned>(n);
}

/// Jordan block sizes for eigenvalue 1, descending.
inline std::vector<unsigned> unipotent_block_sizes(const IntMatrix& m) {
    detail::require_dims(m.is_square(), "unipotent_block_sizes needs a square matrix");
    const std::size_t n = m.rows();
    std::vector<std::size_t> ranks{n};
    const IntMatrix nil = m - IntMatrix::identity(n);
    IntMatrix p = IntMatrix::identity(n);
    for (std::size_t j = 1; j <= n + 1; ++j) {
        p = p * nil;
        ranks.push_back(rank(p));
    }
    // #blocks of size >= j is ranks[j-1] - ranks[j].
    std::vector<unsigned> sizes;
    for (std::size_t j = n; j >= 1; --j) {
        const std::size_t at_least_j = ranks[j - 1] - ranks[j];
        const std::size_t at_least_j1 = ranks[j] - ranks[j + 1];
        for (std::size_t c = 0; c < at_least_j - at_least_j1; ++c) sizes.push_back(static_cast<unsigned>(j));
    }
    return sizes;
}

/**
 * Smallest n >= 1 with M^n unipotent when every eigenvalue of M is a root of
 * unity (the lcm of the cyclotomic indices); nullopt otherwise.
 */
inline std::optional<std::uint64_t> quasi_unipotent_order(const IntMatrix& m) {
    detail::require_dims(m.is_square(), "quasi_unipotent_order needs a square matrix");
    detail::require(is_unimodular(m), "quasi_unipotent_order needs det = +/-1");
    const CyclotomicSplit s = cyclotomic_split(char_poly(m));
    if (!s.free_part.is_one()) return std::nullopt;
    return s.order_lcm();
}

}  // namespace abdyn

#endif  // ABDYN_LATTICE_HPP
