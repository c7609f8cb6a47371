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

#ifndef ABDYN_INT_POLY_HPP
#define ABDYN_INT_POLY_HPP

#include <gmpxx.h>

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace abdyn {

using Int = mpz_class;
using Rat = mpq_class;

/**
 * Dense univariate polynomial over Z, coefficients stored in ascending order.
 *
 * The representation is kept normalized: no trailing zero coefficients, so
 * the zero polynomial has an empty coefficient list and degree -1.
 */
class IntPolynomial {
   public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPolynomial(std::initializer_list<long> coeffs) {
        c_.reserve(coeffs.size());
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static IntPolynomial constant(const Int& a) { return IntPolynomial(std::vector<Int>{a}); }
    static IntPolynomial one() { return constant(1); }

    // T^d
    static IntPolynomial monomial(std::size_t d, const Int& a = 1) {
        std::vector<Int> c(d + 1, 0);
        c[d] = a;
        return IntPolynomial(std::move(c));
    }

    // T - a
    static IntPolynomial linear(const Int& a) { return IntPolynomial(std::vector<Int>{-a, 1}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    const std::vector<Int>& coeffs() const { return c_; }

    // Coefficient of T^i; zero past the degree.
    Int operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Int(0); }

    const Int& leading() const {
        detail::require(!c_.empty(), "leading coefficient of the zero polynomial");
        return c_.back();
    }

    Int constant_term() const { return (*this)[0]; }

    Int eval(const Int& x) const {
        Int acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    IntPolynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Int> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
        return IntPolynomial(std::move(d));
    }

    Int content() const {
        Int g = 0;
        for (const auto& a : c_) g = gcd(g, a);
        return g;
    }

    // Divides out the content and makes the leading coefficient positive.
    IntPolynomial primitive_part() const {
        if (is_zero()) return {};
        Int g = content();
        if (c_.back() < 0) g = -g;
        std::vector<Int> c(c_);
        for (auto& a : c) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
        return IntPolynomial(std::move(c));
    }

    IntPolynomial operator-() const {
        std::vector<Int> c(c_);
        for (auto& a : c) a = -a;
        return IntPolynomial(std::move(c));
    }

    IntPolynomial& operator+=(const IntPolynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    IntPolynomial& operator-=(const IntPolynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
    friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Int> c(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return IntPolynomial(std::move(c));
    }
    IntPolynomial& operator*=(const IntPolynomial& o) { return *this = *this * o; }

    friend IntPolynomial operator*(const Int& s, const IntPolynomial& p) {
        std::vector<Int> c(p.c_);
        for (auto& a : c) a *= s;
        return IntPolynomial(std::move(c));
    }

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

    std::string to_string(char var = 'T') const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const Int& a = c_[static_cast<std::size_t>(i)];
            if (a == 0) continue;
            Int mag = abs(a);
            if (first) {
                if (a < 0) os << "-";
            } else {
                os << (a < 0 ? " - " : " + ");
            }
            if (mag != 1 || i == 0) os << mag.get_str();
            if (i >= 1) os << var;
            if (i >= 2) os << "^" << i;
            first = false;
        }
        return os.str();
    }

   private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Int> c_;
};

inline std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) { return os << p.to_string(); }

inline IntPolynomial pow(const IntPolynomial& p, unsigned e) {
    IntPolynomial result = IntPolynomial::one();
    IntPolynomial base = p;
    while (e != 0) {
        if (e & 1U) result *= base;
        e >>= 1U;
        if (e != 0) base *= base;
    }
    return result;
}

/**
 * Quotient and remainder of `a` by `b` in Z[T].
 *
 * Returns nullopt when the division does not stay inside Z[T], i.e. when some
 * step requires dividing by a leading coefficient that does not divide the
 * current top coefficient. For monic `b` this never happens.
 */
inline std::optional<std::pair<IntPolynomial, IntPolynomial>> divmod(const IntPolynomial& a,
                                                                     const IntPolynomial& b) {
    detail::require(!b.is_zero(), "division by the zero polynomial");
    if (a.degree() < b.degree()) return std::make_pair(IntPolynomial{}, a);
    std::vector<Int> r = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    std::vector<Int> q(r.size() - db, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        const Int& top = r[k + db];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), bc.back().get_mpz_t())) return std::nullopt;
        Int f;
        mpz_divexact(f.get_mpz_t(), top.get_mpz_t(), bc.back().get_mpz_t());
        for (std::size_t j = 0; j <= db; ++j) r[k + j] -= f * bc[j];
        q[k] = f;
    }
    return std::make_pair(IntPolynomial(std::move(q)), IntPolynomial(std::move(r)));
}

// a / b when b divides a exactly in Z[T]; nullopt otherwise.
inline std::optional<IntPolynomial> exact_quotient(const IntPolynomial& a, const IntPolynomial& b) {
    auto qr = divmod(a, b);
    if (!qr || !qr->second.is_zero()) return std::nullopt;
    return std::move(qr->first);
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, computed without division.
inline IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
    detail::require(!b.is_zero(), "pseudo-remainder by the zero polynomial");
    std::vector<Int> r = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    while (r.size() > db && !r.empty()) {
        Int top = r.back();
        const std::size_t shift = r.size() - 1 - db;
        for (auto& x : r) x *= bc.back();
        for (std::size_t j = 0; j <= db; ++j) r[shift + j] -= top * bc[j];
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
    return IntPolynomial(std::move(r));
}

// Primitive gcd in Z[T] (positive leading coefficient), via the primitive PRS.
inline IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    Int cont = gcd(a.content(), b.content());
    IntPolynomial x = a.primitive_part();
    IntPolynomial y = b.primitive_part();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        IntPolynomial r = pseudo_remainder(x, y);
        x = std::move(y);
        y = r.primitive_part();
    }
    return cont * x.primitive_part();
}

/**
 * Square-free decomposition (Yun): returns pairs (f_i, i) with p equal to
 * +/- content * prod f_i^i, every f_i primitive, square-free and pairwise coprime.
 * Factors equal to 1 are omitted.
 */
inline std::vector<std::pair<IntPolynomial, unsigned>> squarefree_decomposition(const IntPolynomial& p) {
    std::vector<std::pair<IntPolynomial, unsigned>> out;
    if (p.degree() < 1) return out;
    IntPolynomial f = p.primitive_part();
    IntPolynomial a = gcd(f, f.derivative()).primitive_part();
    IntPolynomial b = *exact_quotient(f, a);
    IntPolynomial c = *exact_quotient(f.derivative(), a);
    IntPolynomial d = c - b.derivative();
    unsigned i = 1;
    while (b.degree() >= 1) {
        IntPolynomial g = gcd(b, d).primitive_part();
        if (g.degree() >= 1) out.emplace_back(g, i);
        IntPolynomial bn = *exact_quotient(b, g);
        c = *exact_quotient(d, g);
        b = bn.primitive_part();
        d = c - b.derivative();
        ++i;
    }
    return out;
}

}  // namespace abdyn

#endif  // ABDYN_INT_POLY_HPP
