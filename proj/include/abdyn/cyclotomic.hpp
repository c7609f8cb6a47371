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

#ifndef ABDYN_CYCLOTOMIC_HPP
#define ABDYN_CYCLOTOMIC_HPP

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "int_poly.hpp"

namespace abdyn {

inline std::uint64_t euler_phi(std::uint64_t m) {
    std::uint64_t result = m;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace detail {

inline int moebius(std::uint64_t m) {
    int mu = 1;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        m /= p;
        if (m % p == 0) return 0;
        mu = -mu;
    }
    if (m > 1) mu = -mu;
    return mu;
}

}  // namespace detail

/// m-th cyclotomic polynomial, from prod_{d | m} (T^d - 1)^{mu(m/d)}.
inline IntPolynomial cyclotomic_polynomial(std::uint64_t m) {
    detail::require(m >= 1, "cyclotomic index must be positive");
    IntPolynomial num = IntPolynomial::one();
    IntPolynomial den = IntPolynomial::one();
    for (std::uint64_t d = 1; d <= m; ++d) {
        if (m % d != 0) continue;
        const int mu = detail::moebius(m / d);
        if (mu == 0) continue;
        IntPolynomial f = IntPolynomial::monomial(d) - IntPolynomial::one();
        (mu > 0 ? num : den) *= f;
    }
    return *exact_quotient(num, den);
}

/// All m with phi(m) <= n, ascending. phi(m) >= sqrt(m/2) bounds the search.
inline std::vector<std::uint64_t> cyclotomic_indices_up_to_degree(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = 1; m <= 2 * n * n + 2; ++m)
        if (euler_phi(m) <= n) out.push_back(m);
    return out;
}

struct CyclotomicFactor {
    std::uint64_t index = 0;  // m in Phi_m
    unsigned multiplicity = 0;
};

/// p = cyclotomic_part * free_part, with the cyclotomic factors listed by index.
struct CyclotomicSplit {
    IntPolynomial cyclotomic_part;
    IntPolynomial free_part;
    std::vector<CyclotomicFactor> factors;

    // lcm of the indices: the order of every root of unity among the roots.
    std::uint64_t order_lcm() const {
        std::uint64_t l = 1;
        for (const auto& f : factors) l = std::lcm(l, f.index);
        return l;
    }
};

/**
 * Extracts every cyclotomic factor of a monic integer polynomial.
 *
 * Each Phi_m with phi(m) <= deg p is irreducible, so gcd(p, Phi_m) is either
 * 1 or Phi_m; the loop divides Phi_m out as long as it divides exactly.
 */
inline CyclotomicSplit cyclotomic_split(const IntPolynomial& p) {
    detail::require(!p.is_zero(), "cyclotomic_split of the zero polynomial");
    detail::require(p.is_monic(), "cyclotomic_split requires a monic polynomial, got " + p.to_string());
    CyclotomicSplit out{IntPolynomial::one(), p, {}};
    if (p.degree() < 1) return out;
    for (std::uint64_t m : cyclotomic_indices_up_to_degree(static_cast<std::uint64_t>(p.degree()))) {
        if (static_cast<int>(euler_phi(m)) > out.free_part.degree()) continue;
        const IntPolynomial phi = cyclotomic_polynomial(m);
        unsigned mult = 0;
        while (auto q = exact_quotient(out.free_part, phi)) {
            out.free_part = std::move(*q);
            out.cyclotomic_part *= phi;
            ++mult;
        }
        if (mult > 0) out.factors.push_back({m, mult});
    }
    return out;
}

inline bool is_cyclotomic_free(const IntPolynomial& p) { return cyclotomic_split(p).cyclotomic_part.is_one(); }

/**
 * True iff every root is a root of unity. For a monic integer polynomial
 * with nonzero constant term this is the same as all roots having modulus 1.
 */
inline bool kronecker_is_roots_of_unity(const IntPolynomial& p) {
    detail::require(p.is_monic(), "kronecker test requires a monic polynomial");
    detail::require(p.constant_term() != 0, "zero constant term: 0 is a root of " + p.to_string());
    return cyclotomic_split(p).free_part.is_one();
}

}  // namespace abdyn

#endif  // ABDYN_CYCLOTOMIC_HPP
