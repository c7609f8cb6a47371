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

#ifndef ABDYN_DEGREES_HPP
#define ABDYN_DEGREES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "exactalg.hpp"

namespace abdyn {

/**
 * Automorphism of a semi-abelian variety given by its torus part u_T (r x r)
 * and the rational representation u_A_rat (2g x 2g) of its abelian part.
 */
struct SemiAbelianAut {
    std::size_t r = 0;
    std::size_t g = 0;
    IntMatrix u_T;
    IntMatrix u_A_rat;

    SemiAbelianAut() = default;
    SemiAbelianAut(IntMatrix torus, IntMatrix abelian)
        : r(torus.rows()), g(abelian.rows() / 2), u_T(std::move(torus)), u_A_rat(std::move(abelian)) {}

    std::size_t dim() const { return r + g; }

    /// Throws ContractError unless both parts are lattice automorphisms and the
    /// moduli of u_A_rat form a doubled multiset.
    void validate(double tol = 1e-9) const;
};

struct DegreeProfile {
    std::vector<double> lambdas;
    std::vector<std::optional<int>> growth_exponents;
    // Two analytic moduli of u_A merged by the grouping tolerance.
    bool moduli_collision = false;

    std::size_t dim() const { return lambdas.empty() ? 0 : lambdas.size() - 1; }
};

namespace detail {

inline std::vector<double> descending_moduli(const IntMatrix& m, double tol, bool* collision = nullptr) {
    if (m.rows() == 0) return {};
    const auto groups = eigenvalue_moduli(char_poly(m), tol);
    if (collision)
        for (const auto& g : groups)
            if (!g.exact_unit && g.multiplicity > 2) *collision = true;
    return expand_moduli(groups);
}

inline std::vector<double> analytic_moduli(const IntMatrix& u_A_rat, double tol, bool* collision = nullptr) {
    const auto doubled = descending_moduli(u_A_rat, tol, collision);
    std::vector<double> out;
    for (std::size_t i = 0; i < doubled.size(); i += 2) out.push_back(doubled[i]);
    return out;
}

// Jordan weights s-1, s-3, ..., 1-s of the unipotent blocks of m, descending.
inline std::vector<int> sl2_weights(const IntMatrix& m) {
    std::vector<int> w;
    for (unsigned s : unipotent_block_sizes(m))
        for (int x = static_cast<int>(s) - 1; x >= 1 - static_cast<int>(s); x -= 2) w.push_back(x);
    std::sort(w.rbegin(), w.rend());
    return w;
}

inline int top_weight_sum(const std::vector<int>& w, std::size_t k) {
    int s = 0;
    for (std::size_t i = 0; i < k && i < w.size(); ++i) s += w[i];
    return s;
}

inline IntMatrix unipotent_power(const IntMatrix& m) {
    if (m.rows() == 0) return m;
    const auto q = quasi_unipotent_order(m);
    require(q.has_value(), "matrix is not quasi-unipotent");
    return pow(m, static_cast<unsigned>(*q));
}

inline bool all_cyclotomic(const IntMatrix& m) {
    return m.rows() == 0 || cyclotomic_split(char_poly(m)).free_part.is_one();
}

}  // namespace detail

inline void SemiAbelianAut::validate(double tol) const {
    detail::require_dims(u_T.rows() == r && u_T.cols() == r, "u_T must be r x r");
    detail::require_dims(u_A_rat.rows() == 2 * g && u_A_rat.cols() == 2 * g, "u_A_rat must be 2g x 2g");
    detail::require(r == 0 || is_unimodular(u_T), "det(u_T) must be +/-1");
    detail::require(g == 0 || is_unimodular(u_A_rat), "det(u_A_rat) must be +/-1");
    if (g == 0) return;
    for (const auto& grp : eigenvalue_moduli(char_poly(u_A_rat), tol))
        detail::require(grp.multiplicity % 2 == 0,
                        "moduli of u_A_rat are not a doubled multiset (modulus " + std::to_string(grp.modulus) +
                            " has odd multiplicity)");
}

/**
 * lambda_j = max over k + l = j of prod_{m<=k} |tau_m| * prod_{n<=l} |alpha_n|^2.
 * Exponents d_k of deg_k(f^n) ~ n^{d_k} are filled in wherever lambda_k = 1.
 */
inline DegreeProfile semiabelian_degrees(const SemiAbelianAut& aut, double tol = 1e-9) {
    aut.validate(tol);
    DegreeProfile out;
    const auto tau = detail::descending_moduli(aut.u_T, tol);
    const auto alpha = detail::analytic_moduli(aut.u_A_rat, tol, &out.moduli_collision);

    std::vector<double> log_t{0.0}, log_a{0.0};
    for (double t : tau) log_t.push_back(log_t.back() + std::log(t));
    for (double a : alpha) log_a.push_back(log_a.back() + 2 * std::log(a));

    const std::size_t n = aut.dim();
    for (std::size_t j = 0; j <= n; ++j) {
        double best = -HUGE_VAL;
        for (std::size_t k = 0; k <= std::min(j, aut.r); ++k)
            if (j - k <= aut.g) best = std::max(best, log_t[k] + log_a[j - k]);
        out.lambdas.push_back(std::exp(best));
    }
    out.lambdas.front() = 1.0;
    out.lambdas.back() = 1.0;

    // Every intermediate lambda equals 1 exactly when all eigenvalues are roots of unity.
    const bool unit = detail::all_cyclotomic(aut.u_T) && detail::all_cyclotomic(aut.u_A_rat);
    std::vector<int> wt, wa;
    if (unit) {
        wt = detail::sl2_weights(detail::unipotent_power(aut.u_T));
        wa = detail::sl2_weights(detail::unipotent_power(aut.u_A_rat));
    }
    for (std::size_t j = 0; j <= n; ++j) {
        if (j == 0 || j == n) {
            out.growth_exponents.emplace_back(0);
            continue;
        }
        if (!unit) {
            out.growth_exponents.emplace_back(std::nullopt);
            continue;
        }
        out.lambdas[j] = 1.0;
        int d = 0;
        for (std::size_t k = 0; k <= std::min(j, aut.r); ++k)
            if (j - k <= aut.g)
                d = std::max(d, detail::top_weight_sum(wt, k) + detail::top_weight_sum(wa, 2 * (j - k)));
        out.growth_exponents.emplace_back(d);
    }
    return out;
}

struct FirstDegree {
    double lambda1 = 1.0;
    std::optional<int> d;
};

/// lambda_1 = max{|tau_1|, |alpha_1|^2}; for lambda_1 = 1, d = max{j_T - 1, 2(j_A - 1)}.
inline FirstDegree first_degree_data(const SemiAbelianAut& aut, double tol = 1e-9) {
    aut.validate(tol);
    FirstDegree out;
    if (detail::all_cyclotomic(aut.u_T) && detail::all_cyclotomic(aut.u_A_rat)) {
        const int jt = static_cast<int>(unipotent_index(detail::unipotent_power(aut.u_T)));
        const int ja = static_cast<int>(unipotent_index(detail::unipotent_power(aut.u_A_rat)));
        out.d = std::max({0, jt - 1, 2 * (ja - 1)});
        return out;
    }
    const auto tau = detail::descending_moduli(aut.u_T, tol);
    const auto alpha = detail::analytic_moduli(aut.u_A_rat, tol);
    if (!tau.empty()) out.lambda1 = std::max(out.lambda1, tau.front());
    if (!alpha.empty()) out.lambda1 = std::max(out.lambda1, alpha.front() * alpha.front());
    return out;
}

/// Degrees of the map induced by M on E^g: lambda_k = (prod of the top k |mu_i|)^2.
inline DegreeProfile product_Eg_degrees(const IntMatrix& m, double tol = 1e-9) {
    detail::require_dims(m.is_square(), "product_Eg_degrees needs a square matrix");
    detail::require(is_unimodular(m), "product_Eg_degrees needs det = +/-1");
    return semiabelian_degrees(SemiAbelianAut(IntMatrix(0, 0), IntMatrix::block_diag({m, m})), tol);
}

namespace detail {

inline double log_abs(const Int& x) {
    if (x == 0) return -HUGE_VAL;
    long e = 0;
    const double m = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

// Largest absolute entry, in log form.
inline double log_max_entry(const IntMatrix& m) {
    Int best = 0;
    for (const auto& x : m.entries())
        if (abs(x) > best) best = abs(x);
    return log_abs(best);
}

}  // namespace detail

/**
 * log of max_{j} ||Lambda^{2j} u_A_rat^n|| * ||Lambda^{k-j} u_T^n|| for n = 1..n_max,
 * using exact integer powers and the max-entry norm. Stays finite for any n.
 */
inline std::vector<double> degree_sequence_log(const SemiAbelianAut& aut, std::size_t k, std::size_t n_max) {
    aut.validate();
    detail::require(k <= aut.dim(), "k must lie in 0..r+g");
    detail::require(n_max >= 1, "n_max must be >= 1");
    std::vector<double> out;
    IntMatrix t = IntMatrix::identity(aut.r), a = IntMatrix::identity(2 * aut.g);
    for (std::size_t n = 1; n <= n_max; ++n) {
        t = t * aut.u_T;
        a = a * aut.u_A_rat;
        double best = -HUGE_VAL;
        for (std::size_t j = 0; j <= std::min(k, aut.g); ++j)
            if (k - j <= aut.r)
                best = std::max(best, detail::log_max_entry(exterior_power(a, 2 * j)) +
                                          detail::log_max_entry(exterior_power(t, k - j)));
        out.push_back(best);
    }
    return out;
}

/// exp of degree_sequence_log; entries overflow to +inf for very long runs.
inline std::vector<double> degree_sequence_numeric(const SemiAbelianAut& aut, std::size_t k, std::size_t n_max) {
    auto v = degree_sequence_log(aut, k, n_max);
    for (auto& x : v) x = std::exp(x);
    return v;
}

/// Asymptotic ||X^n|| ~ rate^n * n^exponent.
struct Growth {
    double log_rate = 0.0;
    int exponent = 0;
};

namespace detail {

/**
 * Minimal polynomial of the sequence X^0, X^1, ..., X^{n_max}: first exact
 * linear dependency over Q, then checked against every later power. nullopt if
 * no recurrence is confirmed inside the window.
 */
inline std::optional<IntPolynomial> power_recurrence(const IntMatrix& x, std::size_t n_max) {
    const std::size_t len = x.rows() * x.cols();
    std::vector<IntMatrix> powers{IntMatrix::identity(x.rows())};
    for (std::size_t n = 1; n <= n_max; ++n) powers.push_back(powers.back() * x);

    // Echelon rows carry the combination of powers that produced them.
    struct Row {
        std::vector<Rat> v;
        std::vector<Rat> combo;
        std::size_t pivot;
    };
    std::vector<Row> basis;
    for (std::size_t d = 0; d <= n_max; ++d) {
        Row row{std::vector<Rat>(powers[d].entries().begin(), powers[d].entries().end()), std::vector<Rat>(d + 1), 0};
        row.combo[d] = 1;
        for (const auto& b : basis) {
            if (row.v[b.pivot] == 0) continue;
            const Rat f = row.v[b.pivot] / b.v[b.pivot];
            for (std::size_t i = 0; i < len; ++i) row.v[i] -= f * b.v[i];
            for (std::size_t i = 0; i < b.combo.size(); ++i) row.combo[i] -= f * b.combo[i];
        }
        std::size_t p = 0;
        while (p < len && row.v[p] == 0) ++p;
        if (p < len) {
            row.pivot = p;
            basis.push_back(std::move(row));
            continue;
        }
        // combo is monic of degree d; clear denominators (it is integral by Gauss).
        std::vector<Int> c;
        for (const auto& q : row.combo) {
            if (q.get_den() != 1) return std::nullopt;
            c.push_back(q.get_num());
        }
        IntPolynomial mp(c);
        for (std::size_t n = d + 1; n <= n_max; ++n) {
            IntMatrix acc(x.rows(), x.cols());
            for (std::size_t i = 0; i <= d; ++i) acc = acc + mp[i] * powers[n - d + i];
            if (!acc.is_zero()) return std::nullopt;
        }
        return mp;
    }
    return std::nullopt;
}

inline Growth growth_from_minpoly(const IntPolynomial& mp, double tol) {
    Growth g{-HUGE_VAL, 0};
    struct Top {
        double modulus;
        unsigned mult;
    };
    std::vector<Top> tops;
    for (const auto& [factor, mult] : squarefree_decomposition(mp)) {
        if (factor.degree() < 1) continue;
        for (const auto& grp : eigenvalue_moduli(factor, tol)) tops.push_back({grp.modulus, mult});
    }
    double rho = 0;
    for (const auto& t : tops) rho = std::max(rho, t.modulus);
    unsigned m = 0;
    for (const auto& t : tops)
        if (rho - t.modulus <= tol * std::max(1.0, rho)) m = std::max(m, t.mult);
    g.log_rate = rho > 0 ? std::log(rho) : -HUGE_VAL;
    g.exponent = static_cast<int>(m) - 1;
    return g;
}

}  // namespace detail

/**
 * Growth of the k-th degree sequence read off from the powers n <= n_max: for
 * each exterior power the minimal polynomial of its power sequence is recovered
 * exactly and confirmed on the remaining powers, and its dominant roots give the
 * rate and polynomial exponent. Throws IndeterminateRank when the window is too
 * short to confirm a recurrence.
 */
inline Growth fit_growth(const SemiAbelianAut& aut, std::size_t k, std::size_t n_max = 25, double tol = 1e-9) {
    aut.validate(tol);
    detail::require(k <= aut.dim(), "k must lie in 0..r+g");
    std::optional<Growth> best;
    for (std::size_t j = 0; j <= std::min(k, aut.g); ++j) {
        if (k - j > aut.r) continue;
        Growth total{0.0, 0};
        for (const IntMatrix& x : {exterior_power(aut.u_A_rat, 2 * j), exterior_power(aut.u_T, k - j)}) {
            const auto mp = detail::power_recurrence(x, n_max);
            if (!mp) throw IndeterminateRank("no power recurrence confirmed within n <= " + std::to_string(n_max));
            const Growth g = detail::growth_from_minpoly(*mp, tol);
            total.log_rate += g.log_rate;
            total.exponent += g.exponent;
        }
        if (!best) {
            best = total;
            continue;
        }
        const double scale = tol * std::max(1.0, std::fabs(best->log_rate));
        if (total.log_rate > best->log_rate + scale)
            best = total;
        else if (std::fabs(total.log_rate - best->log_rate) <= scale)
            best->exponent = std::max(best->exponent, total.exponent);
    }
    return *best;
}

/**
 * Slope of log a_n against log n over n in [n_max/2, n_max], with a constant
 * and a 1/n term absorbing lower-order corrections.
 */
inline double polynomial_slope(const std::vector<double>& log_values) {
    const std::size_t n_max = log_values.size();
    detail::require(n_max >= 6, "polynomial_slope needs at least 6 samples");
    Eigen::MatrixXd a(static_cast<Eigen::Index>(n_max - n_max / 2 + 1), 3);
    Eigen::VectorXd b(a.rows());
    Eigen::Index row = 0;
    for (std::size_t n = n_max / 2; n <= n_max; ++n, ++row) {
        const double x = static_cast<double>(n);
        a(row, 0) = std::log(x);
        a(row, 1) = 1.0;
        a(row, 2) = 1.0 / x;
        b(row) = log_values[n - 1];
    }
    return a.colPivHouseholderQr().solve(b)(0);
}

/**
 * Degrees of f restricted to the exceptional divisor of the blow-up along an
 * invariant Z of codimension c in an N-fold:
 * lambda_i(E) = max over j in [max(0, i-c+1), min(i, N-c)] of lambda_j(f|_Z).
 */
inline std::vector<double> blowup_restriction_degrees(const std::vector<double>& lambdas_on_Z, std::size_t N,
                                                      std::size_t c) {
    detail::require(c >= 1 && c <= N, "codimension must satisfy 1 <= c <= N");
    detail::require(lambdas_on_Z.size() == N - c + 1, "need lambda_0..lambda_{N-c} of f|_Z");
    std::vector<double> out;
    for (std::size_t i = 0; i < N; ++i) {
        const std::size_t lo = i + 1 >= c ? i + 1 - c : 0;
        const std::size_t hi = std::min(i, N - c);
        double best = -HUGE_VAL;
        for (std::size_t j = lo; j <= hi; ++j) best = std::max(best, lambdas_on_Z[j]);
        out.push_back(best);
    }
    return out;
}

/// lambda_k(f|_Z) <= min{lambda_k(f), lambda_{k+c}(f)} + tol for every k.
inline bool restriction_inequality_check(const std::vector<double>& lambdas_full, const std::vector<double>& lambdas_sub,
                                         std::size_t c, double tol = 1e-9) {
    detail::require(!lambdas_full.empty() && lambdas_sub.size() + c == lambdas_full.size(),
                    "restriction_inequality_check: dim Z must equal N - c");
    for (std::size_t k = 0; k < lambdas_sub.size(); ++k)
        if (lambdas_sub[k] > std::min(lambdas_full[k], lambdas_full[k + c]) + tol) return false;
    return true;
}

/// lambda_k^2 >= lambda_{k-1} lambda_{k+1} within a relative tolerance.
inline bool is_log_concave(const std::vector<double>& lambdas, double rel_tol = 1e-9) {
    for (std::size_t k = 1; k + 1 < lambdas.size(); ++k) {
        const double lhs = lambdas[k] * lambdas[k];
        const double rhs = lambdas[k - 1] * lambdas[k + 1];
        if (lhs < rhs - rel_tol * std::max(1.0, rhs)) return false;
    }
    return true;
}

}  // namespace abdyn

#endif  // ABDYN_DEGREES_HPP
