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

#ifndef ABDYN_CRITERIA_HPP
#define ABDYN_CRITERIA_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "degrees.hpp"
#include "exactalg.hpp"

namespace abdyn {

/// One degenerating family: the action on H^1 of a fiber and what is known about the degeneration.
struct FamilyDescriptor {
    std::size_t g = 0;
    IntPolynomial charpoly;
    std::optional<std::size_t> r;  // torus rank of the Neron central fiber
    std::optional<std::size_t> k;  // deg_1(f_t^n) ~ n^{2k}
    bool finite_order = false;

    void validate() const {
        detail::require(charpoly.degree() == static_cast<int>(2 * g), "charpoly must have degree 2g");
        detail::require(charpoly.is_monic(), "charpoly must be monic");
        detail::require(abs(charpoly.constant_term()) == 1, "charpoly must have constant term +/-1");
        detail::require(!r || *r <= g, "torus rank r must lie in 0..g");
        detail::require(!k || g == 0 || *k + 1 <= g, "growth exponent k must lie in 0..g-1");
        detail::require(!k || g > 0 || *k == 0, "growth exponent k must be 0 when g = 0");
    }
};

enum class Status { Regularizable, NotRegularizable, Undetermined };

inline std::string to_string(Status s) {
    switch (s) {
        case Status::Regularizable: return "Regularizable";
        case Status::NotRegularizable: return "NotRegularizable";
        default: return "Undetermined";
    }
}

struct Reason {
    std::string rule;     // R1..R5, or "note"
    std::string theorem;  // citation tag
    std::string detail;
};

struct Verdict {
    Status status = Status::Undetermined;
    std::vector<Reason> reasons;
};

/// max{r, 2g - 2r - 1}: a regularizable family with lambda_1 = 1 has 2k at most this.
inline long theoremB_bound(std::size_t g, std::size_t r) {
    detail::require(r <= g, "theoremB_bound needs 0 <= r <= g");
    return std::max(static_cast<long>(r), 2 * static_cast<long>(g) - 2 * static_cast<long>(r) - 1);
}

/**
 * Rules, first match wins:
 *   R1 r = 0                                   -> Regularizable
 *   R2 finite order, or cyclotomic with k = 0  -> Regularizable
 *   R3 cyclotomic-free charpoly and r > 0      -> NotRegularizable
 *   R4 lambda_1 = 1 and 2k > max{r, 2g-2r-1}    -> NotRegularizable
 *   R5 g = 2 table
 * Every rule that fires is reported; fired rules must agree.
 */
inline Verdict decide_regularizable(const FamilyDescriptor& d) {
    d.validate();
    const CyclotomicSplit split = cyclotomic_split(d.charpoly);
    const bool unit = split.free_part.is_one();  // lambda_1 = 1
    const bool cyclo_free = split.cyclotomic_part.is_one();
    detail::require(!(d.finite_order && !unit), "finite_order contradicts a charpoly with roots off the unit circle");
    detail::require(!(d.finite_order && d.k && *d.k > 0), "finite_order forces bounded degrees (k = 0)");
    detail::require(!(d.k && !unit), "k is only defined when every eigenvalue is a root of unity");

    struct Fired {
        Status status;
        Reason reason;
    };
    std::vector<Fired> fired;
    if (d.r && *d.r == 0)
        fired.push_back({Status::Regularizable, {"R1", "Theorem A(1)", "r = 0: the family is not degenerating"}});
    if (d.finite_order)
        fired.push_back({Status::Regularizable, {"R2", "Theorem C", "f_t has finite order"}});
    else if (unit && d.k && *d.k == 0)
        fired.push_back({Status::Regularizable, {"R2", "Theorem C", "bounded degrees: an iterate of f_t is a translation"}});
    if (cyclo_free && d.g > 0 && d.r && *d.r > 0)
        fired.push_back(
            {Status::NotRegularizable, {"R3", "Theorem A(2)", "no root of unity is an eigenvalue and r > 0"}});
    if (unit && d.k && d.r && 2 * static_cast<long>(*d.k) > theoremB_bound(d.g, *d.r))
        fired.push_back({Status::NotRegularizable,
                         {"R4", "Theorem B",
                          "2k = " + std::to_string(2 * *d.k) + " > " + std::to_string(theoremB_bound(d.g, *d.r))}});
    if (d.g == 2 && d.k) {
        if (*d.k == 0)
            fired.push_back({Status::Regularizable, {"R5", "g=2 table", "k = 0: yes"}});
        else if (d.r && *d.r == 0)
            fired.push_back({Status::Regularizable, {"R5", "g=2 table", "k = 1, r = 0: yes"}});
        else if (d.r && *d.r == 1)
            fired.push_back({Status::NotRegularizable, {"R5", "g=2 table", "k = 1, r = 1: no"}});
    }

    Verdict v;
    for (const auto& f : fired) {
        if (v.reasons.empty()) v.status = f.status;
        if (f.status != v.status)
            throw std::logic_error("rules " + v.reasons.front().rule + " and " + f.reason.rule + " disagree");
        v.reasons.push_back(f.reason);
    }
    if (v.reasons.empty()) {
        v.status = Status::Undetermined;
        if (d.g == 2 && d.k && *d.k == 1 && d.r && *d.r == 2)
            v.reasons.push_back({"R5", "g=2 table", "k = 1, r = 2: open case"});
        else
            v.reasons.push_back({"none", "", "no rule applies"});
    }
    if (!d.r) v.reasons.push_back({"note", "", "provide monodromy data: r unknown, rules R1, R3, R4 skipped"});
    if (unit && !d.k && !d.finite_order)
        v.reasons.push_back({"note", "", "provide the rational representation: k unknown, rules R2, R4 skipped"});
    return v;
}

/// Characteristic polynomial of u^n, given that of u.
inline IntPolynomial charpoly_of_power(const IntPolynomial& p, unsigned n) {
    return char_poly(pow(IntMatrix::companion(p), n));
}

/**
 * k with deg_1(f_t^n) ~ n^{2k}: one less than the unipotent index of a
 * unipotent power of u_A_rat.
 */
inline std::size_t growth_exponent_k(const IntMatrix& u_A_rat) {
    detail::require_dims(u_A_rat.is_square() && u_A_rat.rows() % 2 == 0, "u_A_rat must be 2g x 2g");
    detail::require(is_unimodular(u_A_rat), "u_A_rat must have det +/-1");
    const auto q = quasi_unipotent_order(u_A_rat);
    detail::require(q.has_value(), "k undefined: lambda_1 > 1");
    const std::size_t g = u_A_rat.rows() / 2;
    const std::size_t j = unipotent_index(pow(u_A_rat, static_cast<unsigned>(*q)));
    detail::require(g == 0 || j <= g,
                    "k undefined: a Jordan block of size " + std::to_string(j) +
                        " cannot occur in the rational representation of an automorphism in dimension " +
                        std::to_string(g));
    return j == 0 ? 0 : j - 1;
}

struct InvariantSplit {
    Sublattice L0;  // roots of unity part
    Sublattice L1;  // cyclotomic-free part
    Int index;      // [Z^{2g} : L0 + L1]
};

/// Invariant saturated lattices ker P(u) and ker Q(u) for charpoly(u) = P Q, P cyclotomic, Q cyclotomic-free.
inline InvariantSplit split_invariant_subfamily(const IntMatrix& u) {
    detail::require_dims(u.is_square(), "split_invariant_subfamily needs a square matrix");
    detail::require(is_unimodular(u), "split_invariant_subfamily needs det +/-1");
    const CyclotomicSplit s = cyclotomic_split(char_poly(u));
    InvariantSplit out{kernel_lattice(s.cyclotomic_part, u), kernel_lattice(s.free_part, u), 0};
    out.index = direct_sum_index(out.L0, out.L1);
    return out;
}

}  // namespace abdyn

#endif  // ABDYN_CRITERIA_HPP
