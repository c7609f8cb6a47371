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

#ifndef ABDYN_ORBIT_HPP
#define ABDYN_ORBIT_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exactalg.hpp"

namespace abdyn {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Lattice in C^g given by 2g complex g-vectors, optionally with an integral symplectic form on that basis.
struct NumericLattice {
    std::size_t g = 0;
    std::vector<CVector> basis;
    std::optional<IntMatrix> polarization;

    /// Real 2g x 2g matrix whose columns are (Re e_j, Im e_j).
    Eigen::MatrixXd real_matrix() const {
        const auto n = static_cast<Eigen::Index>(2 * g);
        Eigen::MatrixXd r(n, n);
        for (std::size_t j = 0; j < 2 * g; ++j)
            for (std::size_t i = 0; i < g; ++i) {
                r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = basis[j][i].real();
                r(static_cast<Eigen::Index>(g + i), static_cast<Eigen::Index>(j)) = basis[j][i].imag();
            }
        return r;
    }

    double condition_number() const {
        if (g == 0) return 1.0;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(real_matrix());
        const auto& s = svd.singularValues();
        return s(s.size() - 1) > 0 ? s(0) / s(s.size() - 1) : HUGE_VAL;
    }

    void validate() const {
        detail::require_dims(basis.size() == 2 * g, "lattice needs 2g basis vectors");
        for (const auto& v : basis) detail::require_dims(v.size() == g, "basis vectors must have g entries");
        if (condition_number() > 1e12)
            throw NumericError("lattice basis is ill-conditioned (condition number " +
                               std::to_string(condition_number()) + ")");
        if (polarization) {
            detail::require_dims(polarization->rows() == 2 * g && polarization->cols() == 2 * g,
                                 "polarization must be 2g x 2g");
            detail::require((*polarization + polarization->transpose()).is_zero(), "polarization must be skew-symmetric");
        }
    }
};

namespace detail {

inline Eigen::VectorXd realify(const CVector& v) {
    const auto g = static_cast<Eigen::Index>(v.size());
    Eigen::VectorXd x(2 * g);
    for (Eigen::Index i = 0; i < g; ++i) {
        x(i) = v[static_cast<std::size_t>(i)].real();
        x(g + i) = v[static_cast<std::size_t>(i)].imag();
    }
    return x;
}

inline CVector complexify(const Eigen::VectorXd& x) {
    const Eigen::Index g = x.size() / 2;
    CVector v(static_cast<std::size_t>(g));
    for (Eigen::Index i = 0; i < g; ++i) v[static_cast<std::size_t>(i)] = {x(i), x(g + i)};
    return v;
}

}  // namespace detail

/// Real coordinates x with v = sum x_j e_j.
inline std::vector<double> real_dual_coords(const NumericLattice& lat, const CVector& v) {
    lat.validate();
    detail::require_dims(v.size() == lat.g, "vector must have g entries");
    if (lat.g == 0) return {};
    const Eigen::MatrixXd r = lat.real_matrix();
    const Eigen::VectorXd target = detail::realify(v);
    const Eigen::VectorXd x = r.colPivHouseholderQr().solve(target);
    const double residual = (r * x - target).norm();
    if (residual > 1e-10 * std::max(1.0, target.norm()))
        throw NumericError("dual coordinates do not reconstruct v (residual " + std::to_string(residual) + ")");
    return std::vector<double>(x.data(), x.data() + x.size());
}

namespace detail {

/**
 * LLL (delta = 0.99) on the rows (e_i, c * y_i) of [I_N | c Y]. Integer parts are
 * kept exactly; the real part is recomputed from them. Returns the reduced
 * integer parts, shortest first.
 */
inline std::vector<std::vector<long long>> lll_relations(const std::vector<std::vector<long double>>& y, long double c) {
    const std::size_t n = y.size(), m = n ? y[0].size() : 0;
    std::vector<std::vector<long long>> q(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) q[i][i] = 1;
    auto embed = [&](const std::vector<long long>& qi) {
        std::vector<long double> v(n + m);
        for (std::size_t j = 0; j < n; ++j) v[j] = static_cast<long double>(qi[j]);
        for (std::size_t k = 0; k < m; ++k) {
            long double s = 0;
            for (std::size_t j = 0; j < n; ++j) s += static_cast<long double>(qi[j]) * y[j][k];
            v[n + k] = c * s;
        }
        return v;
    };
    auto dot = [](const std::vector<long double>& a, const std::vector<long double>& b) {
        long double s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };
    std::vector<std::vector<long double>> b(n), bs(n);
    std::vector<std::vector<long double>> mu(n, std::vector<long double>(n, 0));
    std::vector<long double> bn(n);
    auto gram_schmidt = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            b[i] = embed(q[i]);
            bs[i] = b[i];
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = bn[j] > 0 ? dot(b[i], bs[j]) / bn[j] : 0;
                for (std::size_t t = 0; t < bs[i].size(); ++t) bs[i][t] -= mu[i][j] * bs[j][t];
            }
            bn[i] = dot(bs[i], bs[i]);
        }
    };
    gram_schmidt();
    std::size_t k = 1;
    int guard = 0;
    while (k < n && guard++ < 100000) {
        for (std::size_t j = k; j-- > 0;) {
            const long double r = std::round(mu[k][j]);
            if (r != 0) {
                for (std::size_t t = 0; t < n; ++t) q[k][t] -= static_cast<long long>(r) * q[j][t];
                gram_schmidt();
            }
        }
        if (bn[k] >= (0.99L - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
            ++k;
        } else {
            std::swap(q[k], q[k - 1]);
            gram_schmidt();
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    std::sort(q.begin(), q.end(), [&](const auto& a, const auto& bb) { return dot(embed(a), embed(a)) < dot(embed(bb), embed(bb)); });
    return q;
}

inline long long max_abs(const std::vector<long long>& v) {
    long long m = 0;
    for (auto x : v) m = std::max(m, std::llabs(x));
    return m;
}

// Keep candidates that raise the rank of the collected integer vectors.
inline bool raises_rank(std::vector<IntVector>& kept, const std::vector<long long>& cand) {
    IntVector v;
    for (auto x : cand) v.push_back(Int(static_cast<long>(x)));
    kept.push_back(v);
    IntMatrix m = IntMatrix::from_rows(kept, v.size());
    if (rank(m) == kept.size()) return true;
    kept.pop_back();
    return false;
}

}  // namespace detail

struct Relation {
    IntVector q;      // integer coefficients on the coordinates
    Int q_prime;      // integer right-hand side: q . x = q_prime
    double residual;  // |q . x - q_prime|
};

/**
 * Independent integer relations q . x = q' with residual below tol and all of
 * |q_j|, |q'| at most H, read off an LLL-reduced basis of (x, 1) scaled by 1/tol.
 * Absence of a relation means none was found up to height H.
 */
inline std::vector<Relation> relation_lattice(const std::vector<double>& coords, long height, double tol) {
    detail::require(height >= 1, "height bound must be >= 1");
    detail::require(tol > 0, "tol must be positive");
    const std::size_t n = coords.size();
    std::vector<std::vector<long double>> y;
    for (double x : coords) y.push_back({static_cast<long double>(x)});
    y.push_back({1.0L});
    const auto cand = detail::lll_relations(y, 1.0L / static_cast<long double>(tol));
    std::vector<Relation> out;
    std::vector<IntVector> kept;
    for (const auto& c : cand) {
        if (detail::max_abs(c) > height) continue;
        long double s = 0;
        for (std::size_t j = 0; j < n; ++j) s += static_cast<long double>(c[j]) * coords[j];
        s += static_cast<long double>(c[n]);
        if (std::fabs(static_cast<double>(s)) >= tol) continue;
        const std::vector<long long> qpart(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n));
        if (std::all_of(qpart.begin(), qpart.end(), [](long long v) { return v == 0; })) continue;
        if (!detail::raises_rank(kept, qpart)) continue;
        // Normalize the sign so the first nonzero q_j is positive.
        long long sign = 1;
        for (auto v : qpart)
            if (v != 0) {
                sign = v > 0 ? 1 : -1;
                break;
            }
        Relation r;
        for (auto v : qpart) r.q.push_back(Int(static_cast<long>(sign * v)));
        r.q_prime = Int(static_cast<long>(-sign * c[n]));
        r.residual = std::fabs(static_cast<double>(s));
        out.push_back(std::move(r));
    }
    return out;
}

struct OrbitReport {
    std::size_t h = 0;
    std::size_t s = 0;
    std::size_t r = 0;
    std::vector<Relation> relations;
    bool dense = false;
    bool totally_real = false;
    long height_bound = 0;
    double tol = 0;
};

namespace detail {

// Rows: the C-linear forms u_q(v) = l_q(v) - i l_q(iv) on C^g.
inline Eigen::MatrixXcd complex_forms(const NumericLattice& lat, const std::vector<Relation>& rels) {
    const std::size_t g = lat.g;
    const Eigen::MatrixXd rinv = lat.real_matrix().inverse();
    Eigen::MatrixXcd u(static_cast<Eigen::Index>(rels.size()), static_cast<Eigen::Index>(g));
    for (std::size_t k = 0; k < rels.size(); ++k) {
        Eigen::RowVectorXd q(static_cast<Eigen::Index>(2 * g));
        for (std::size_t j = 0; j < 2 * g; ++j) q(static_cast<Eigen::Index>(j)) = rels[k].q[j].get_d();
        const Eigen::RowVectorXd l = q * rinv;  // l_q on (Re v, Im v)
        for (std::size_t c = 0; c < g; ++c) {
            // l(f_c) = l[c], l(i f_c) = l[g + c]
            const auto ci = static_cast<Eigen::Index>(c);
            u(static_cast<Eigen::Index>(k), ci) = cplx(l(ci), -l(static_cast<Eigen::Index>(g) + ci));
        }
        const double nrm = u.row(static_cast<Eigen::Index>(k)).norm();
        if (nrm > 0) u.row(static_cast<Eigen::Index>(k)) /= nrm;
    }
    return u;
}

// Numerical rank with an indeterminacy band of a factor 10 around tol.
template <class Sv>
std::size_t thresholded_rank(const Sv& s, double tol) {
    std::size_t rk = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        const double v = s(i);
        if (v > tol / 10 && v < tol * 10)
            throw IndeterminateRank("singular value " + std::to_string(v) + " within a factor 10 of tol " +
                                    std::to_string(tol) + "; rerun with a different tol");
        if (v >= tol * 10) ++rk;
    }
    return rk;
}

}  // namespace detail

/// Dimensions (h, s, r) of the closure of the orbit of alpha in C^g / Lambda.
inline OrbitReport orbit_dims(const NumericLattice& lat, const CVector& alpha, long height, double tol) {
    const auto x = real_dual_coords(lat, alpha);
    OrbitReport rep;
    rep.height_bound = height;
    rep.tol = tol;
    rep.relations = relation_lattice(x, height, tol);
    const std::size_t g = lat.g;
    rep.h = 2 * g - rep.relations.size();
    std::size_t rk = 0;
    if (!rep.relations.empty()) {
        const Eigen::MatrixXcd u = detail::complex_forms(lat, rep.relations);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(u);
        rk = detail::thresholded_rank(svd.singularValues(), tol);
    }
    rep.s = g - rk;
    if (2 * rep.s > rep.h) throw IndeterminateRank("complex part exceeds the real orbit dimension; rerun with a different tol");
    rep.r = rep.h - 2 * rep.s;
    rep.dense = rep.h == 2 * g;
    rep.totally_real = rep.s == 0;
    return rep;
}

struct SplitAB {
    std::vector<CVector> A_basis;  // complex basis of Pi cap i Pi
    std::vector<CVector> B_basis;  // complex basis of its H-orthogonal complement
    CVector a, b;                  // alpha = a + b
    NumericLattice A_lattice, B_lattice;
    OrbitReport A_report, B_report;
};

namespace detail {

// Real basis (columns) of {w : f w = 0} for the real row forms f.
inline Eigen::MatrixXd real_kernel(const Eigen::MatrixXd& f, std::size_t dim, double tol) {
    if (f.rows() == 0) return Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(f, Eigen::ComputeFullV);
    const std::size_t rk = thresholded_rank(svd.singularValues(), tol);
    return svd.matrixV().rightCols(static_cast<Eigen::Index>(dim - rk));
}

// A complex basis of a real subspace of R^{2g} = C^g that is closed under i.
inline std::vector<CVector> complex_basis(const Eigen::MatrixXd& real_cols, double tol) {
    std::vector<CVector> out;
    Eigen::MatrixXcd acc(real_cols.rows() / 2, 0);
    for (Eigen::Index c = 0; c < real_cols.cols() && acc.cols() < acc.rows(); ++c) {
        const CVector v = complexify(real_cols.col(c));
        Eigen::MatrixXcd next(acc.rows(), acc.cols() + 1);
        next << acc, Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(next);
        if (svd.singularValues()(svd.singularValues().size() - 1) > tol * 10) {
            acc = next;
            out.push_back(v);
        }
    }
    return out;
}

// Lattice Lambda cap W for a complex subspace W with orthonormal complex basis `w` (coordinates in W).
inline NumericLattice sublattice_in(const NumericLattice& lat, const std::vector<CVector>& w, long height, double tol) {
    const std::size_t g = lat.g, d = w.size();
    Eigen::MatrixXcd wm(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < g; ++i) wm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w[j][i];
    const Eigen::MatrixXcd proj = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(g)) - wm * wm.adjoint();
    // n in Z^{2g} with (I - P_W) sum n_j e_j = 0: real parts of the residual as columns.
    std::vector<std::vector<long double>> y(2 * g);
    for (std::size_t j = 0; j < 2 * g; ++j) {
        Eigen::VectorXcd e(static_cast<Eigen::Index>(g));
        for (std::size_t i = 0; i < g; ++i) e(static_cast<Eigen::Index>(i)) = lat.basis[j][i];
        const Eigen::VectorXcd res = proj * e;
        for (Eigen::Index i = 0; i < res.size(); ++i) {
            y[j].push_back(res(i).real());
            y[j].push_back(res(i).imag());
        }
    }
    const auto cand = lll_relations(y, 1.0L / static_cast<long double>(tol));
    NumericLattice sub;
    sub.g = d;
    std::vector<IntVector> kept;
    for (const auto& c : cand) {
        if (max_abs(c) > height || kept.size() == 2 * d) continue;
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(g));
        for (std::size_t j = 0; j < 2 * g; ++j)
            for (std::size_t i = 0; i < g; ++i) v(static_cast<Eigen::Index>(i)) += static_cast<double>(c[j]) * lat.basis[j][i];
        if ((proj * v).norm() > tol * std::max(1.0, v.norm())) continue;
        if (!raises_rank(kept, c)) continue;
        const Eigen::VectorXcd coords = wm.adjoint() * v;
        sub.basis.emplace_back(coords.data(), coords.data() + coords.size());
    }
    if (sub.basis.size() != 2 * d)
        throw NumericError("sublattice of rank " + std::to_string(2 * d) + " not found up to height " + std::to_string(height));
    return sub;
}

inline std::vector<CVector> orthonormalize(const std::vector<CVector>& vs, std::size_t g) {
    if (vs.empty()) return {};
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(vs.size()));
    for (std::size_t j = 0; j < vs.size(); ++j)
        for (std::size_t i = 0; i < g; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = vs[j][i];
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    std::vector<CVector> out;
    for (Eigen::Index j = 0; j < q.cols(); ++j) out.emplace_back(q.col(j).data(), q.col(j).data() + q.rows());
    return out;
}

}  // namespace detail

/**
 * Splits C^g = A + B with A = Pi cap i Pi and B its orthogonal complement for
 * the hermitian form of the polarization, decomposes alpha accordingly, and
 * reruns the orbit analysis on both factors: dense on A, totally real on B.
 */
inline SplitAB split_A_B(const NumericLattice& lat, const CVector& alpha, long height, double tol) {
    lat.validate();
    if (!lat.polarization) throw ContractError("split_A_B needs a polarization");
    const std::size_t g = lat.g;
    const OrbitReport rep = orbit_dims(lat, alpha, height, tol);

    // A: common kernel of the forms u_q, as a real subspace of R^{2g}.
    Eigen::MatrixXd forms(static_cast<Eigen::Index>(2 * rep.relations.size()), static_cast<Eigen::Index>(2 * g));
    if (!rep.relations.empty()) {
        const Eigen::MatrixXcd u = detail::complex_forms(lat, rep.relations);
        for (Eigen::Index k = 0; k < u.rows(); ++k)
            for (std::size_t c = 0; c < g; ++c) {
                const auto ci = static_cast<Eigen::Index>(c), gi = static_cast<Eigen::Index>(g);
                // Re u(v) and Im u(v) as real forms on (Re v, Im v).
                forms(2 * k, ci) = u(k, ci).real();
                forms(2 * k, gi + ci) = -u(k, ci).imag();
                forms(2 * k + 1, ci) = u(k, ci).imag();
                forms(2 * k + 1, gi + ci) = u(k, ci).real();
            }
    }
    const Eigen::MatrixXd a_real = detail::real_kernel(forms, 2 * g, tol);

    // E in (Re, Im) coordinates; B = E-orthogonal complement of A.
    Eigen::MatrixXd e(static_cast<Eigen::Index>(2 * g), static_cast<Eigen::Index>(2 * g));
    for (std::size_t i = 0; i < 2 * g; ++i)
        for (std::size_t j = 0; j < 2 * g; ++j)
            e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*lat.polarization)(i, j).get_d();
    const Eigen::MatrixXd rinv = lat.real_matrix().inverse();
    const Eigen::MatrixXd e_std = rinv.transpose() * e * rinv;
    Eigen::MatrixXd b_forms = a_real.transpose() * e_std;
    for (Eigen::Index r = 0; r < b_forms.rows(); ++r) b_forms.row(r).normalize();
    const Eigen::MatrixXd b_real = detail::real_kernel(b_forms, 2 * g, tol);

    SplitAB out;
    out.A_basis = detail::orthonormalize(detail::complex_basis(a_real, tol), g);
    out.B_basis = detail::orthonormalize(detail::complex_basis(b_real, tol), g);
    if (out.A_basis.size() + out.B_basis.size() != g)
        throw IndeterminateRank("dim A + dim B != g; rerun with a different tol");

    Eigen::MatrixXcd ab(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(g));
    std::size_t col = 0;
    for (const auto* set : {&out.A_basis, &out.B_basis})
        for (const auto& v : *set) {
            for (std::size_t i = 0; i < g; ++i) ab(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) = v[i];
            ++col;
        }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ab);
    if (svd.singularValues()(svd.singularValues().size() - 1) < tol * 10)
        throw IndeterminateRank("A + B does not span C^g");
    const Eigen::VectorXcd coef = ab.colPivHouseholderQr().solve(Eigen::Map<const Eigen::VectorXcd>(alpha.data(), static_cast<Eigen::Index>(g)));
    const std::size_t da = out.A_basis.size();
    out.a = CVector(g, 0.0);
    out.b = CVector(g, 0.0);
    for (std::size_t k = 0; k < g; ++k)
        for (std::size_t i = 0; i < g; ++i) (k < da ? out.a : out.b)[i] += coef(static_cast<Eigen::Index>(k)) * ab(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));

    auto coords_in = [g](const std::vector<CVector>& basis, const CVector& v) {
        CVector c;
        for (const auto& w : basis) {
            cplx s = 0;
            for (std::size_t i = 0; i < g; ++i) s += std::conj(w[i]) * v[i];
            c.push_back(s);
        }
        return c;
    };
    if (da > 0) {
        out.A_lattice = detail::sublattice_in(lat, out.A_basis, height, tol);
        out.A_report = orbit_dims(out.A_lattice, coords_in(out.A_basis, out.a), height, tol);
        if (!out.A_report.dense) throw IndeterminateRank("orbit of the A-part is not dense at this height and tol");
    }
    if (da < g) {
        out.B_lattice = detail::sublattice_in(lat, out.B_basis, height, tol);
        out.B_report = orbit_dims(out.B_lattice, coords_in(out.B_basis, out.b), height, tol);
        if (!out.B_report.totally_real) throw IndeterminateRank("orbit of the B-part is not totally real at this height and tol");
    }
    return out;
}

struct Approximant {
    long q = 1;
    std::vector<Int> numerators;  // beta = numerators / q
    double distance = 0;          // sup |beta - alpha|
    bool extends = false;         // B * beta is integral
};

/// beta = round(q alpha) / q for each denominator q, tagged with the integrality of B * beta.
inline std::vector<Approximant> finite_order_approximations(const std::vector<double>& alpha,
                                                            const std::vector<long>& denominators,
                                                            const IntMatrix& b) {
    detail::require_dims(b.rows() == 0 || b.cols() == alpha.size(), "B must have one column per coordinate");
    std::vector<Approximant> out;
    for (long q : denominators) {
        detail::require(q >= 1, "denominators must be >= 1");
        Approximant ap;
        ap.q = q;
        for (double x : alpha) {
            const double n = std::round(static_cast<double>(q) * x);
            ap.numerators.push_back(Int(n));
            ap.distance = std::max(ap.distance, std::fabs(n / static_cast<double>(q) - x));
        }
        ap.extends = true;
        for (std::size_t i = 0; i < b.rows(); ++i) {
            Int s = 0;
            for (std::size_t j = 0; j < alpha.size(); ++j) s += b(i, j) * ap.numerators[j];
            if (!mpz_divisible_ui_p(s.get_mpz_t(), static_cast<unsigned long>(q))) ap.extends = false;
        }
        out.push_back(std::move(ap));
    }
    return out;
}

}  // namespace abdyn

#endif  // ABDYN_ORBIT_HPP
