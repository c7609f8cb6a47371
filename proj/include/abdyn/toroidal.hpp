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

#ifndef ABDYN_TOROIDAL_HPP
#define ABDYN_TOROIDAL_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "exactalg.hpp"

namespace abdyn {

/// Leading principal minors all positive.
inline bool is_positive_definite(const IntMatrix& m) {
    if (!m.is_square() || !m.is_symmetric()) return false;
    for (std::size_t k = 1; k <= m.rows(); ++k) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        if (determinant(m.submatrix(idx, idx)) <= 0) return false;
    }
    return true;
}

/**
 * Degeneration data: g' abelian and r' torus directions, and the positive
 * definite block B' of the monodromy logarithm. Points of N x Z are written
 * (a, b, k) with a in Z^{g'}, b in Z^{r'}.
 */
struct GammaData {
    std::size_t g_prime = 0;
    std::size_t r_prime = 0;
    IntMatrix Bprime;

    GammaData() = default;
    GammaData(std::size_t gp, IntMatrix b) : g_prime(gp), r_prime(b.rows()), Bprime(std::move(b)) {}

    std::size_t g() const { return g_prime + r_prime; }

    void validate() const {
        detail::require_dims(Bprime.rows() == r_prime && Bprime.cols() == r_prime, "B' must be r' x r'");
        detail::require(Bprime.is_symmetric(), "B' must be symmetric");
        detail::require(is_positive_definite(Bprime), "B' must be positive definite");
    }
};

/// (alpha, beta) . (a, b, k) = (a, b + k beta B', k); alpha acts trivially.
inline IntVector gamma_act(const GammaData& gd, const IntVector& beta, IntVector point) {
    detail::require_dims(beta.size() == gd.r_prime, "beta must have r' entries");
    detail::require_dims(point.size() == gd.g() + 1, "point must have g + 1 entries");
    const Int& k = point.back();
    for (std::size_t j = 0; j < gd.r_prime; ++j) {
        Int shift = 0;
        for (std::size_t i = 0; i < gd.r_prime; ++i) shift += beta[i] * gd.Bprime(i, j);
        point[gd.g_prime + j] += k * shift;
    }
    return point;
}

struct MonodromyData {
    IntMatrix B;             // upper right block of the monodromy
    IntMatrix basis_change;  // unimodular U with U B U^T = diag(0, B')
    GammaData gamma;
};

/**
 * Reads B off a unipotent monodromy [[I, B], [0, I]] of a principally
 * polarized family and brings it to the block form diag(0, B').
 */
inline MonodromyData monodromy_to_B(const IntMatrix& m) {
    detail::require_dims(m.is_square() && m.rows() % 2 == 0, "monodromy must be 2g x 2g");
    const std::size_t g = m.rows() / 2;
    detail::require(char_poly(m) == pow(IntPolynomial{-1, 1}, static_cast<unsigned>(2 * g)),
                    "monodromy is not unipotent: apply quasi_unipotent_order first and pass M^n");
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            const Int id = i == j ? 1 : 0;
            detail::require(m(i, j) == id && m(g + i, g + j) == id && m(g + i, j) == 0,
                            "monodromy must have the principally polarized shape [[I, B], [0, I]]");
        }
    IntMatrix b(g, g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) b(i, j) = m(i, g + j);
    detail::require(b.is_symmetric(), "B must be symmetric positive semi-definite");

    const IntMatrix ker = integer_kernel(b);
    const IntMatrix u = complete_to_unimodular(ker, g);
    const IntMatrix nb = u * b * u.transpose();
    const std::size_t gp = ker.rows(), rp = g - gp;
    IntMatrix bp(rp, rp);
    for (std::size_t i = 0; i < rp; ++i)
        for (std::size_t j = 0; j < rp; ++j) bp(i, j) = nb(gp + i, gp + j);
    detail::require(rp == 0 || is_positive_definite(bp), "B must be symmetric positive semi-definite");
    return {b, u, GammaData(gp, bp)};
}

struct Cone {
    std::vector<IntVector> generators;
};

/**
 * A Gamma-invariant fan stored as one representative per orbit. `period` rows
 * generate the translations of the b-coordinates identifying representatives.
 */
struct Fan {
    GammaData gamma;
    IntMatrix period;
    std::vector<Cone> cones;
    IntMatrix metric;  // integer Gram matrix on the b-coordinates
    std::optional<std::uint64_t> seed;
    unsigned attempts = 1;

    std::size_t ambient_dim() const { return gamma.g() + 1; }
};

namespace detail {

// Reduce v modulo the row lattice of an echelon matrix h.
inline IntVector reduce_mod(IntVector v, const IntMatrix& h, std::size_t offset = 0) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        while (h(i, c) == 0) ++c;
        const Int q = floor_div(v[offset + c], h(i, c));
        for (std::size_t j = c; j < h.cols(); ++j) v[offset + j] -= q * h(i, j);
    }
    return v;
}

using ConeKey = std::vector<IntVector>;

// Lexicographically least sorted generator list over the translates that reduce one generator.
inline ConeKey canonical_key(const Cone& cone, const IntMatrix& period_hnf, std::size_t g_prime) {
    ConeKey best;
    bool have = false;
    for (const auto& gen : cone.generators) {
        const Int k = gen.back();
        if (k <= 0) continue;
        const IntVector red = reduce_mod(gen, k * period_hnf, g_prime);
        ConeKey cand;
        for (IntVector v : cone.generators) {
            for (std::size_t j = 0; j < period_hnf.cols(); ++j) {
                Int shift = red[g_prime + j] - gen[g_prime + j];
                v[g_prime + j] += v.back() * (shift / k);
            }
            cand.push_back(std::move(v));
        }
        std::sort(cand.begin(), cand.end());
        if (!have || cand < best) best = std::move(cand);
        have = true;
    }
    if (!have) {
        best = cone.generators;
        std::sort(best.begin(), best.end());
    }
    return best;
}

inline IntVector lift(const IntVector& b, std::size_t g_prime) {
    IntVector v(g_prime, 0);
    v.insert(v.end(), b.begin(), b.end());
    v.push_back(1);
    return v;
}

inline Int gcd_entries(const IntVector& v) {
    Int g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Int(abs(x)).get_mpz_t());
    return g;
}

// lambda >= 0 with sum lambda_i gens_i = p, exactly; nullopt if p is outside the cone. gens independent.
inline std::optional<std::vector<Rat>> cone_coordinates(const std::vector<IntVector>& gens, const IntVector& p) {
    const std::size_t m = gens.size(), d = p.size();
    std::vector<std::vector<Rat>> a(d, std::vector<Rat>(m + 1));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < m; ++j) a[i][j] = gens[j][i];
        a[i][m] = p[i];
    }
    std::size_t row = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < m && row < d; ++c) {
        std::size_t r = row;
        while (r < d && a[r][c] == 0) ++r;
        if (r == d) continue;
        std::swap(a[r], a[row]);
        for (std::size_t i = 0; i < d; ++i) {
            if (i == row || a[i][c] == 0) continue;
            const Rat f = a[i][c] / a[row][c];
            for (std::size_t j = c; j <= m; ++j) a[i][j] -= f * a[row][j];
        }
        pivots.push_back(c);
        ++row;
    }
    for (std::size_t i = row; i < d; ++i)
        if (a[i][m] != 0) return std::nullopt;
    std::vector<Rat> lambda(m, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        lambda[pivots[i]] = a[i][m] / a[i][pivots[i]];
        if (lambda[pivots[i]] < 0) return std::nullopt;
    }
    return lambda;
}

// A nonzero lambda >= 0 with sum lambda_i gens_i = 0 exists (the cone contains a line).
inline bool contains_line(const std::vector<IntVector>& gens) {
    const std::size_t m = gens.size();
    if (m == 0) return false;
    IntMatrix g(gens[0].size(), m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < gens[0].size(); ++i) g(i, j) = gens[j][i];
    if (rank(g) == m) return false;
    // Search circuits: minimal dependent subsets have a one-dimensional kernel.
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < m; ++j)
            if (mask >> j & 1) cols.push_back(j);
        std::vector<std::size_t> rows(gens[0].size());
        std::iota(rows.begin(), rows.end(), 0);
        const IntMatrix sub = g.submatrix(rows, cols);
        const IntMatrix ker = integer_kernel(sub);
        if (ker.rows() != 1) continue;
        bool pos = true, neg = true;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (ker(0, j) <= 0) pos = false;
            if (ker(0, j) >= 0) neg = false;
        }
        if (pos || neg) return true;
    }
    return false;
}

inline IntMatrix diffs_from_first(const std::vector<IntVector>& pts, std::size_t off, std::size_t n) {
    IntMatrix d(pts.size() - 1, n);
    for (std::size_t i = 1; i < pts.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) d(i - 1, j) = pts[i][off + j] - pts[0][off + j];
    return d;
}

using i128 = __int128;

inline i128 det_small(std::vector<std::vector<i128>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
    i128 s = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<i128>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<i128> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(a[i][j]);
            minor.push_back(row);
        }
        const i128 t = a[0][c] * det_small(minor);
        s += c % 2 ? -t : t;
    }
    return s;
}

enum class StarStatus { Ok, Degenerate, Incomplete };

/**
 * Delaunay simplices of Z^n with vertex 0 under the integer Gram matrix q, with
 * the other vertices searched in [-radius, radius]^n. Each simplex is certified
 * by enumerating every lattice point inside its circumscribed ellipsoid.
 */
inline StarStatus delaunay_star(const IntMatrix& q, int radius, std::vector<std::vector<IntVector>>& cells) {
    const std::size_t n = q.rows();
    std::vector<std::vector<long>> qq(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) qq[i][j] = q(i, j).get_si();
    auto f = [&](const std::vector<long>& x) {
        i128 s = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) s += static_cast<i128>(qq[i][j]) * x[i] * x[j];
        return s;
    };
    std::vector<std::vector<long>> pts;
    std::vector<long> x(n, -radius);
    for (;;) {
        if (std::any_of(x.begin(), x.end(), [](long v) { return v != 0; })) pts.push_back(x);
        std::size_t i = 0;
        while (i < n && x[i] == radius) x[i++] = -radius;
        if (i == n) break;
        ++x[i];
    }
    Eigen::MatrixXd qd(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) qd(i, j) = static_cast<double>(qq[i][j]);
    const Eigen::MatrixXd qinv = qd.inverse();

    cells.clear();
    i128 covered = 0;
    std::vector<std::size_t> idx(n);
    std::function<StarStatus(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) -> StarStatus {
        if (depth < n) {
            for (std::size_t i = start; i < pts.size(); ++i) {
                idx[depth] = i;
                if (auto s = rec(depth + 1, i + 1); s != StarStatus::Ok) return s;
            }
            return StarStatus::Ok;
        }
        std::vector<std::vector<i128>> v(n, std::vector<i128>(n));
        std::vector<i128> fv(n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) v[r][c] = pts[idx[r]][c];
            fv[r] = f(pts[idx[r]]);
        }
        const i128 d = det_small(v);
        if (d == 0) return StarStatus::Ok;
        // w = V^{-1} f by Cramer: w_c = wn[c] / d.
        std::vector<i128> wn(n);
        for (std::size_t c = 0; c < n; ++c) {
            auto vc = v;
            for (std::size_t r = 0; r < n; ++r) vc[r][c] = fv[r];
            wn[c] = det_small(vc);
        }
        const int sd = d > 0 ? 1 : -1;
        // sign of f(y) - w.y, scaled by |d|
        auto excess = [&](const std::vector<long>& y) {
            i128 s = d * f(y);
            for (std::size_t c = 0; c < n; ++c) s -= wn[c] * y[c];
            return s * sd;
        };
        bool tie = false;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const i128 e = excess(pts[i]);
            if (e < 0) return StarStatus::Ok;
            if (e == 0 && std::find(idx.begin(), idx.end(), i) == idx.end()) tie = true;
        }
        // Exhaustive check inside the circumscribed ellipsoid.
        Eigen::VectorXd w(n);
        for (std::size_t c = 0; c < n; ++c) w(c) = static_cast<double>(wn[c]) / static_cast<double>(d);
        const Eigen::VectorXd center = qinv * w / 2.0;
        const double rho2 = center.dot(qd * center);
        std::vector<long> lo(n), hi(n);
        for (std::size_t c = 0; c < n; ++c) {
            const double half = std::sqrt(std::max(0.0, rho2 * qinv(c, c))) + 1.0;
            lo[c] = static_cast<long>(std::floor(center(c) - half));
            hi[c] = static_cast<long>(std::ceil(center(c) + half));
        }
        std::vector<long> y = lo;
        for (;;) {
            bool in_box = true, is_vertex = std::all_of(y.begin(), y.end(), [](long t) { return t == 0; });
            for (std::size_t c = 0; c < n; ++c) in_box = in_box && std::abs(y[c]) <= radius;
            for (std::size_t r = 0; r < n && !is_vertex; ++r) is_vertex = y == pts[idx[r]];
            if (!in_box && !is_vertex) {
                const i128 e = excess(y);
                if (e < 0) return StarStatus::Ok;
                if (e == 0) tie = true;
            }
            std::size_t c = 0;
            while (c < n && y[c] == hi[c]) y[c] = lo[c], ++c;
            if (c == n) break;
            ++y[c];
        }
        if (tie) return StarStatus::Degenerate;
        std::vector<IntVector> cell{IntVector(n, 0)};
        for (std::size_t r = 0; r < n; ++r) {
            IntVector p(n);
            for (std::size_t c = 0; c < n; ++c) p[c] = pts[idx[r]][c];
            cell.push_back(p);
        }
        cells.push_back(cell);
        covered += d > 0 ? d : -d;
        return StarStatus::Ok;
    };
    if (rec(0, 0) == StarStatus::Degenerate) return StarStatus::Degenerate;
    i128 fact = 1;
    for (std::size_t i = 2; i <= n + 1; ++i) fact *= static_cast<i128>(i);
    return covered == fact ? StarStatus::Ok : StarStatus::Incomplete;
}

inline IntMatrix perturbed_metric(const IntMatrix& base, std::mt19937_64& rng) {
    const std::size_t n = base.rows();
    std::uniform_int_distribution<int> d(-20, 20);
    for (;;) {
        IntMatrix q = Int(1000) * base;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const int e = d(rng);
                q(i, j) += e;
                if (i != j) q(j, i) += e;
            }
        if (is_positive_definite(q)) return q;
    }
}

}  // namespace detail

constexpr unsigned kFanRetryCap = 16;

/**
 * Delaunay fan of the lattice N_Pi = {(0, b, 1)} under the metric `metric` on
 * the b-coordinates (identity when absent). A metric with co-spherical points is
 * replaced by a seeded random integer perturbation, at most kFanRetryCap times.
 */
inline Fan delaunay_fan(const GammaData& gd, std::optional<IntMatrix> metric = std::nullopt,
                        std::uint64_t seed = 0, bool random_metric = false) {
    gd.validate();
    const std::size_t n = gd.r_prime;
    detail::require(n >= 1 && n <= 3, "delaunay_fan supports 1 <= r' <= 3");
    IntMatrix base = metric ? *metric : IntMatrix::identity(n);
    detail::require_dims(base.rows() == n && base.cols() == n, "metric must be r' x r'");
    detail::require(is_positive_definite(base), "metric must be symmetric positive definite");
    for (const auto& e : base.entries()) detail::require(abs(e) <= 1000000, "metric entries must be at most 1e6");

    std::mt19937_64 rng(seed);
    Fan fan;
    fan.gamma = gd;
    fan.period = hermite_normal_form(gd.Bprime);
    std::vector<std::vector<IntVector>> star;
    bool done = false;
    for (unsigned attempt = 0; attempt < kFanRetryCap && !done; ++attempt) {
        IntMatrix q = (attempt == 0 && !random_metric) ? base : detail::perturbed_metric(base, rng);
        for (int radius = 1; radius <= 3; ++radius) {
            const auto status = detail::delaunay_star(q, radius, star);
            if (status == detail::StarStatus::Degenerate) break;
            if (status == detail::StarStatus::Ok) {
                done = true;
                fan.metric = q;
                fan.attempts = attempt + 1;
                if (attempt > 0 || random_metric) fan.seed = seed;
                break;
            }
        }
    }
    if (!done)
        throw NumericError("no simplicial Delaunay decomposition after " + std::to_string(kFanRetryCap) +
                           " metric perturbations (seed " + std::to_string(seed) + ")");

    // Classes of simplices under Z^n, then under the period lattice.
    std::set<std::vector<IntVector>> classes;
    for (auto cell : star) {
        std::sort(cell.begin(), cell.end());
        const IntVector m0 = cell.front();
        for (auto& v : cell)
            for (std::size_t j = 0; j < n; ++j) v[j] -= m0[j];
        std::sort(cell.begin(), cell.end());
        classes.insert(cell);
    }
    std::vector<IntVector> reps{IntVector(n, 0)};
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<IntVector> next;
        for (const auto& r : reps)
            for (Int t = 0; t < fan.period(j, j); ++t) {
                IntVector v = r;
                v[j] = t;
                next.push_back(v);
            }
        reps = std::move(next);
    }
    std::map<detail::ConeKey, Cone> orbit;
    for (const auto& cls : classes)
        for (const auto& t : reps) {
            std::vector<IntVector> gens;
            for (const auto& v : cls) {
                IntVector b(n);
                for (std::size_t j = 0; j < n; ++j) b[j] = v[j] + t[j];
                gens.push_back(detail::lift(b, gd.g_prime));
            }
            for (std::uint32_t mask = 1; mask < (1u << gens.size()); ++mask) {
                Cone face;
                for (std::size_t i = 0; i < gens.size(); ++i)
                    if (mask >> i & 1) face.generators.push_back(gens[i]);
                auto key = detail::canonical_key(face, fan.period, gd.g_prime);
                orbit.emplace(key, Cone{key});
            }
        }
    std::vector<Cone> cones;
    for (auto& [key, c] : orbit) cones.push_back(std::move(c));
    std::stable_sort(cones.begin(), cones.end(),
                     [](const Cone& a, const Cone& b) { return a.generators.size() < b.generators.size(); });
    fan.cones = std::move(cones);
    return fan;
}

struct FanReport {
    std::vector<std::string> violations;
    bool non_regular = false;  // some maximal simplex has lattice volume > 1

    bool ok() const { return violations.empty(); }
};

/**
 * Admissibility of every cone, the ray condition, Gamma-invariance, closure
 * under faces, and coverage of a period cell by the height-1 slices.
 */
inline FanReport validate_fan(const Fan& fan) {
    FanReport rep;
    auto fail = [&](const std::string& s) { rep.violations.push_back(s); };
    try {
        fan.gamma.validate();
    } catch (const ContractError& e) {
        fail(std::string("gamma data: ") + e.what());
        return rep;
    }
    const std::size_t gp = fan.gamma.g_prime, n = fan.gamma.r_prime, dim = fan.ambient_dim();
    if (fan.period.cols() != n || rank(fan.period) != n) {
        fail("period lattice must have full rank r'");
        return rep;
    }
    const IntMatrix period = hermite_normal_form(fan.period);
    if (period != hermite_normal_form(fan.gamma.Bprime)) fail("period lattice differs from the Gamma translations beta B'");

    std::map<detail::ConeKey, std::size_t> keys;
    for (std::size_t i = 0; i < fan.cones.size(); ++i) {
        const auto key = detail::canonical_key(fan.cones[i], period, gp);
        if (!keys.emplace(key, i).second) fail("cone " + std::to_string(i) + " duplicates another Gamma-orbit");
    }

    Int volume = 0;
    for (std::size_t i = 0; i < fan.cones.size(); ++i) {
        const auto& gens = fan.cones[i].generators;
        const std::string tag = "cone " + std::to_string(i) + ": ";
        if (gens.empty()) {
            fail(tag + "no generators");
            continue;
        }
        if (std::any_of(gens.begin(), gens.end(), [&](const IntVector& v) { return v.size() != dim; })) {
            fail(tag + "generator of wrong dimension");
            continue;
        }
        bool positive = false;
        for (const auto& v : gens) {
            if (detail::gcd_entries(v) != 1) fail(tag + "generator is not primitive");
            if (v.back() < 0) fail(tag + "generator leaves N_R x R_+");
            if (v.back() > 0) positive = true;
            bool ray_ok = v.back() == 1;
            for (std::size_t j = 0; j < gp; ++j) ray_ok = ray_ok && v[j] == 0;
            if (!ray_ok) fail(tag + "ray is not of the form (0, b, 1)");
        }
        if (!positive) fail(tag + "contained in N_R x {0}");
        if (detail::contains_line(gens)) fail(tag + "not strongly convex");
        IntMatrix g(gens.size(), dim);
        for (std::size_t r = 0; r < gens.size(); ++r)
            for (std::size_t c = 0; c < dim; ++c) g(r, c) = gens[r][c];
        if (rank(g) != gens.size()) fail(tag + "not simplicial");

        for (std::size_t b = 0; b < n; ++b) {
            IntVector beta(n, 0);
            beta[b] = 1;
            Cone moved;
            for (const auto& v : gens) moved.generators.push_back(gamma_act(fan.gamma, beta, v));
            if (!keys.count(detail::canonical_key(moved, period, gp)))
                fail(tag + "Gamma-translate by e_" + std::to_string(b) + " is missing");
        }
        for (std::uint32_t mask = 1; mask + 1 < (1u << gens.size()); ++mask) {
            Cone face;
            for (std::size_t r = 0; r < gens.size(); ++r)
                if (mask >> r & 1) face.generators.push_back(gens[r]);
            if (!keys.count(detail::canonical_key(face, period, gp))) fail(tag + "a face is missing");
        }
        if (gens.size() == n + 1 && std::all_of(gens.begin(), gens.end(), [](const IntVector& v) { return v.back() == 1; })) {
            const Int d = abs(determinant(detail::diffs_from_first(gens, gp, n)));
            volume += d;
            if (d > 1) rep.non_regular = true;
        }
    }
    Int fact = 1;
    for (std::size_t i = 2; i <= n; ++i) fact *= static_cast<long>(i);
    if (volume != fact * abs(determinant(period)))
        fail("height-1 slices do not tile a period cell (volume " + volume.get_str() + " vs " +
             Int(fact * abs(determinant(period))).get_str() + ")");
    return rep;
}

/// Gamma-orbits of rays and of maximal cones: the strata counts of the central fiber.
inline std::pair<std::size_t, std::size_t> central_fiber_combinatorics(const Fan& fan) {
    std::size_t rays = 0, top = 0;
    for (const auto& c : fan.cones) {
        if (c.generators.size() == 1) ++rays;
        if (c.generators.size() == fan.gamma.r_prime + 1) ++top;
    }
    return {rays, top};
}

/// The dual-basis vector of vanishing orders.
inline IntVector cocharacter_from_orders(const std::vector<Int>& orders) { return orders; }

/**
 * Whether t -> (phi(t), t) extends into X(Delta): some Gamma-translate of a cone
 * contains the ray through (n_phi, 1). Cones with a generator at height 0 are ignored.
 */
inline bool section_extends(const IntVector& n_phi, const Fan& fan) {
    const std::size_t gp = fan.gamma.g_prime, n = fan.gamma.r_prime;
    detail::require_dims(n_phi.size() == fan.gamma.g(), "n_phi must have g entries");
    IntVector p = n_phi;
    p.push_back(1);
    const IntMatrix h = hermite_normal_form(fan.gamma.Bprime);
    for (const auto& cone : fan.cones) {
        const auto& gens = cone.generators;
        if (gens.empty() || std::any_of(gens.begin(), gens.end(), [](const IntVector& v) { return v.back() <= 0; }))
            continue;
        // Box of the height-1 slice in b-coordinates.
        std::vector<Rat> lo(n), hi(n);
        for (std::size_t j = 0; j < n; ++j) {
            lo[j] = hi[j] = Rat(gens[0][gp + j], gens[0].back());
            for (const auto& v : gens) {
                const Rat x(v[gp + j], v.back());
                lo[j] = std::min(lo[j], Rat(x));
                hi[j] = std::max(hi[j], Rat(x));
            }
        }
        // Translations ell = beta H with p_b - ell in the box, solved row by row of the echelon H.
        std::vector<Int> beta(n);
        std::function<bool(std::size_t, IntVector)> search = [&](std::size_t j, IntVector ell) -> bool {
            if (j == n) {
                IntVector q = p;
                for (std::size_t c = 0; c < n; ++c) q[gp + c] -= ell[c];
                return detail::cone_coordinates(gens, q).has_value();
            }
            // coordinate j of ell is ell[j] + beta_j h(j, j)
            const Rat a = (Rat(p[gp + j]) - hi[j] - Rat(ell[j])) / Rat(h(j, j));
            const Rat b = (Rat(p[gp + j]) - lo[j] - Rat(ell[j])) / Rat(h(j, j));
            Int from, to;
            mpz_cdiv_q(from.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
            mpz_fdiv_q(to.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
            for (Int t = from; t <= to; ++t) {
                IntVector next = ell;
                for (std::size_t c = j; c < n; ++c) next[c] += t * h(j, c);
                if (search(j + 1, next)) return true;
            }
            return false;
        };
        if (search(0, IntVector(n, 0))) return true;
    }
    return false;
}

struct TranslationPower {
    std::optional<Int> N;
    IntVector beta;
    std::string diagnostic;
};

/**
 * Smallest N >= 1 with N * (torus part of n_phi) = beta B' for an integer beta,
 * available when the abelian coordinates of n_phi vanish.
 */
inline TranslationPower translation_regularizable(const IntVector& n_phi, const GammaData& gd) {
    gd.validate();
    detail::require_dims(n_phi.size() == gd.g(), "n_phi must have g entries");
    TranslationPower out;
    for (std::size_t j = 0; j < gd.g_prime; ++j)
        if (n_phi[j] != 0) {
            out.diagnostic = "abelian coordinate nonzero: not possible for the cocharacter of a genuine section";
            return out;
        }
    const std::size_t n = gd.r_prime;
    // x B' = b over Q; B' is positive definite, hence invertible.
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = gd.Bprime(j, i);
        a[i][n] = n_phi[gd.g_prime + i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t r = c;
        while (r < n && a[r][c] == 0) ++r;
        if (r == n) {
            out.diagnostic = "torus part is not in the span of the Gamma-orbit of (0, 1)";
            return out;
        }
        std::swap(a[r], a[c]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            const Rat f = a[i][c] / a[c][c];
            for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    Int N = 1;
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = a[i][n] / a[i][i];
        mpz_lcm(N.get_mpz_t(), N.get_mpz_t(), x[i].get_den_mpz_t());
    }
    out.N = N;
    for (const auto& xi : x) out.beta.push_back(Int(xi * N));
    out.diagnostic = "ok";
    return out;
}

}  // namespace abdyn

#endif  // ABDYN_TOROIDAL_HPP
