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

#ifndef ABDYN_ROOTS_HPP
#define ABDYN_ROOTS_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "int_poly.hpp"

namespace abdyn {

namespace detail {

inline std::complex<long double> horner(const IntPolynomial& p, std::complex<long double> z,
                                        std::complex<long double>* deriv, long double* scale) {
    std::complex<long double> v = 0, d = 0;
    long double s = 0;
    const long double az = std::abs(z);
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        d = d * z + v;
        const long double ci = static_cast<long double>(it->get_d());
        v = v * z + ci;
        s = s * az + std::fabs(ci);
    }
    if (deriv) *deriv = d;
    if (scale) *scale = s;
    return v;
}

}  // namespace detail

/**
 * Complex roots of a square-free integer polynomial: companion-matrix
 * eigenvalues refined by Newton steps in long double. Throws NumericError
 * when a root cannot be refined to a relative residual below 1e-12.
 */
inline std::vector<std::complex<double>> squarefree_roots(const IntPolynomial& p) {
    const int n = p.degree();
    detail::require(n >= 1, "root finding needs degree >= 1");
    std::vector<std::complex<double>> roots;
    const double lead = p.leading().get_d();
    if (n == 1) {
        roots.emplace_back(-p[0].get_d() / lead, 0.0);
        return roots;
    }
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -p[static_cast<std::size_t>(i)].get_d() / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    if (es.info() != Eigen::Success) throw NumericError("companion eigenvalue solver did not converge");
    for (int i = 0; i < n; ++i) {
        std::complex<long double> z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
        long double resid = 0;
        for (int it = 0; it < 60; ++it) {
            std::complex<long double> d;
            long double scale = 0;
            const auto v = detail::horner(p, z, &d, &scale);
            resid = std::abs(v) / std::max(scale, 1e-300L);
            if (resid < 1e-17L || std::abs(d) == 0.0L) break;
            const auto step = v / d;
            z -= step;
            if (std::abs(step) <= 1e-19L * std::max(1.0L, std::abs(z))) break;
        }
        long double scale = 0;
        resid = std::abs(detail::horner(p, z, nullptr, &scale)) / std::max(scale, 1e-300L);
        if (!(resid < 1e-12L)) {
            std::ostringstream os;
            os << "root finder did not converge for " << p.to_string() << ": relative residual "
               << static_cast<double>(resid);
            throw NumericError(os.str());
        }
        roots.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
    return roots;
}

struct ModulusGroup {
    double modulus = 0.0;
    unsigned multiplicity = 0;
    bool exact_unit = false;  // contains roots of unity detected exactly
    double spread = 0.0;      // max - min of the merged numeric moduli
};

/**
 * Root moduli of a monic polynomial with multiplicity, descending, merged when
 * they agree within `tol` (relative to max(1, modulus)). Cyclotomic factors
 * are removed first and contribute modulus exactly 1; the rest goes through a
 * square-free decomposition so repeated roots are found as simple ones.
 */
inline std::vector<ModulusGroup> eigenvalue_moduli(const IntPolynomial& p, double tol = 1e-9) {
    detail::require(p.is_monic() && p.degree() >= 1, "eigenvalue_moduli needs a monic polynomial of degree >= 1");
    detail::require(tol > 0, "eigenvalue_moduli needs tol > 0");
    const CyclotomicSplit split = cyclotomic_split(p);
    struct Entry {
        double modulus;
        unsigned mult;
        bool exact;
    };
    std::vector<Entry> entries;
    if (split.cyclotomic_part.degree() > 0)
        entries.push_back({1.0, static_cast<unsigned>(split.cyclotomic_part.degree()), true});
    for (const auto& [factor, mult] : squarefree_decomposition(split.free_part))
        for (const auto& z : squarefree_roots(factor)) entries.push_back({std::abs(z), mult, false});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.modulus > b.modulus; });

    std::vector<ModulusGroup> groups;
    double head = 0, lo = 0, hi = 0, weighted = 0;
    for (const auto& e : entries) {
        const bool joins = !groups.empty() && head - e.modulus <= tol * std::max(1.0, head);
        if (!joins) {
            groups.push_back({});
            head = e.modulus;
            lo = HUGE_VAL;
            hi = -HUGE_VAL;
            weighted = 0;
        }
        auto& g = groups.back();
        g.multiplicity += e.mult;
        g.exact_unit = g.exact_unit || e.exact;
        if (!e.exact) {
            lo = std::min(lo, e.modulus);
            hi = std::max(hi, e.modulus);
        }
        weighted += e.modulus * e.mult;
        g.modulus = g.exact_unit ? 1.0 : weighted / g.multiplicity;
        g.spread = hi > lo ? hi - lo : 0.0;
    }
    return groups;
}

/// Moduli expanded by multiplicity, descending.
inline std::vector<double> expand_moduli(const std::vector<ModulusGroup>& groups) {
    std::vector<double> out;
    for (const auto& g : groups) out.insert(out.end(), g.multiplicity, g.modulus);
    return out;
}

}  // namespace abdyn

#endif  // ABDYN_ROOTS_HPP
