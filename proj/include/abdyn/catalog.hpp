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

#ifndef ABDYN_CATALOG_HPP
#define ABDYN_CATALOG_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "criteria.hpp"
#include "exactalg.hpp"
#include "orbit.hpp"

namespace abdyn {

struct PellUnit {
    Int x, y;
    int norm = 1;  // x^2 - d y^2
};

inline bool is_squarefree(long d) {
    for (long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) return false;
    return true;
}

/// Fundamental unit x + y sqrt(d) of Z[sqrt(d)] from the continued fraction of sqrt(d).
inline PellUnit pell_fundamental_unit(long d) {
    detail::require(d > 1 && is_squarefree(d), "pell_fundamental_unit needs squarefree d > 1");
    const long a0 = static_cast<long>(std::sqrt(static_cast<double>(d)));
    long m = 0, q = 1, a = a0;
    Int h_prev = 1, h = a0, k_prev = 0, k = 1;
    for (;;) {
        const Int n = h * h - Int(d) * k * k;
        if (n == 1 || n == -1) return {h, k, n == 1 ? 1 : -1};
        m = q * a - m;
        q = (d - m * m) / q;
        a = (a0 + m) / q;
        const Int h_next = Int(a) * h + h_prev, k_next = Int(a) * k + k_prev;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
}

/// Minimal polynomial T^2 - 2x T + N of x + y sqrt(d).
inline IntPolynomial quadratic_unit_minpoly(const PellUnit& u) {
    return IntPolynomial(std::vector<Int>{Int(u.norm), Int(-2 * u.x), Int(1)});
}

/// Multiplication by a unit on 2 * copies coordinate blocks of the order Z[mu].
inline IntMatrix unit_multiplication_matrix(const IntPolynomial& minpoly, std::size_t copies) {
    detail::require(minpoly.is_monic(), "minpoly must be monic");
    detail::require(abs(minpoly.constant_term()) == 1, "minpoly must have constant term +/-1 (unit)");
    detail::require(copies >= 1, "copies must be >= 1");
    return IntMatrix::block_diag(std::vector<IntMatrix>(2 * copies, IntMatrix::companion(minpoly)));
}

struct TypeILattice {
    NumericLattice lattice;
    IntMatrix automorphism;
    IntPolynomial minpoly;
};

/**
 * Lattice lambda_z(O^l + O^l) for the order O = Z[mu], mu given by its real
 * embeddings. Basis order: (alpha | beta) block, then l-index, then power of mu.
 */
inline TypeILattice type_I_lattice(const std::vector<Eigen::MatrixXcd>& z, const std::vector<double>& embeddings) {
    const std::size_t e = z.size();
    detail::require_dims(e >= 1 && embeddings.size() == e, "need one period matrix per embedding");
    const auto l = static_cast<std::size_t>(z[0].rows());
    for (const auto& zj : z) {
        detail::require_dims(static_cast<std::size_t>(zj.rows()) == l && static_cast<std::size_t>(zj.cols()) == l,
                             "period matrices must all be l x l");
        detail::require((zj - zj.transpose()).norm() < 1e-12, "period matrices must be symmetric");
        Eigen::LLT<Eigen::MatrixXd> llt(zj.imag());
        if (llt.info() != Eigen::Success) throw ContractError("Im(Z_j) must be positive definite");
    }
    const std::size_t g = l * e;

    // Minimal polynomial from the embeddings, rounded to integers.
    std::vector<double> c{1.0};
    for (double mu : embeddings) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= mu * c[i];
        }
        c = next;
    }
    std::vector<Int> coeffs;
    for (double v : c) {
        const double r = std::round(v);
        if (std::fabs(v - r) > 1e-6) throw NumericError("embeddings are not conjugates of an algebraic integer");
        coeffs.emplace_back(r);
    }
    TypeILattice out;
    out.minpoly = IntPolynomial(coeffs);
    out.automorphism = unit_multiplication_matrix(out.minpoly, l);

    NumericLattice& lat = out.lattice;
    lat.g = g;
    for (std::size_t block = 0; block < 2; ++block)
        for (std::size_t s = 0; s < l; ++s)
            for (std::size_t k = 0; k < e; ++k) {
                CVector v(g, 0.0);
                for (std::size_t j = 0; j < e; ++j) {
                    const double w = std::pow(embeddings[j], static_cast<double>(k));
                    for (std::size_t i = 0; i < l; ++i)
                        v[j * l + i] = block == 0 ? w * z[j](static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)) : cplx(i == s ? w : 0.0);
                }
                lat.basis.push_back(v);
            }

    // E(v, w) = sum_j Im(v_j (Im Z_j)^{-1} conj(w_j)).
    std::vector<Eigen::MatrixXd> yinv;
    for (const auto& zj : z) yinv.push_back(zj.imag().inverse());
    IntMatrix pol(2 * g, 2 * g);
    for (std::size_t a = 0; a < 2 * g; ++a)
        for (std::size_t b = 0; b < 2 * g; ++b) {
            double s = 0;
            for (std::size_t j = 0; j < e; ++j) {
                Eigen::RowVectorXcd va(static_cast<Eigen::Index>(l)), vb(static_cast<Eigen::Index>(l));
                for (std::size_t i = 0; i < l; ++i) {
                    va(static_cast<Eigen::Index>(i)) = lat.basis[a][j * l + i];
                    vb(static_cast<Eigen::Index>(i)) = lat.basis[b][j * l + i];
                }
                s += (va * yinv[j].cast<cplx>() * vb.conjugate().transpose())(0, 0).imag();
            }
            const double r = std::round(s);
            if (std::fabs(s - r) > 1e-6) throw NumericError("polarization is not integral on the lattice basis");
            pol(a, b) = Int(r);
        }
    lat.polarization = pol;
    lat.validate();
    return out;
}

struct QuaternionAlgebra {
    Rat a, b;  // i^2 = a, j^2 = b, ij = -ji
    void validate() const { detail::require(a != 0 && b != 0, "quaternion algebra needs a, b nonzero"); }
};

struct Quaternion {
    Rat alpha, beta, gamma, delta;  // alpha + beta i + gamma j + delta ij
};

inline Rat quaternion_nrd(const QuaternionAlgebra& alg, const Quaternion& q) {
    return q.alpha * q.alpha - alg.a * q.beta * q.beta - alg.b * q.gamma * q.gamma + alg.a * alg.b * q.delta * q.delta;
}

inline Rat quaternion_trd(const Quaternion& q) { return 2 * q.alpha; }

struct NormOneElement {
    Quaternion q;
    IntPolynomial reduced_charpoly;  // T^2 - 2 alpha T + Nrd
    bool cyclotomic_free = false;
};

/// Integer quaternions with coordinates bounded by height, Nrd = +/-1 and trd outside {0, +/-1, +/-2}.
inline std::vector<NormOneElement> quaternion_norm_one_search(const QuaternionAlgebra& alg, long height) {
    alg.validate();
    std::vector<NormOneElement> out;
    if (height < 1) return out;
    for (long x = -height; x <= height; ++x) {
        const Rat trd(2 * x);
        if (abs(trd) <= 2) continue;
        for (long y = -height; y <= height; ++y)
            for (long z = -height; z <= height; ++z)
                for (long t = -height; t <= height; ++t) {
                    Quaternion q{Rat(x), Rat(y), Rat(z), Rat(t)};
                    const Rat n = quaternion_nrd(alg, q);
                    if (n != 1 && n != -1) continue;
                    NormOneElement el;
                    el.q = q;
                    el.reduced_charpoly = IntPolynomial(std::vector<Int>{n.get_num(), Int(-2 * x), Int(1)});
                    el.cyclotomic_free = is_cyclotomic_free(el.reduced_charpoly);
                    out.push_back(std::move(el));
                }
    }
    return out;
}

/// Left multiplication by q on the basis (1, i, j, ij); integral a, b and q required.
inline IntMatrix quaternion_left_multiplication(const QuaternionAlgebra& alg, const Quaternion& q) {
    for (const Rat* v : {&alg.a, &alg.b, &q.alpha, &q.beta, &q.gamma, &q.delta})
        detail::require(v->get_den() == 1, "left multiplication matrix needs integral data");
    const Int a = alg.a.get_num(), b = alg.b.get_num();
    const Int x = q.alpha.get_num(), y = q.beta.get_num(), z = q.gamma.get_num(), t = q.delta.get_num();
    return IntMatrix(4, 4,
                     {x, a * y, b * z, -a * b * t,  //
                      y, x, b * t, -b * z,          //
                      z, -a * t, x, a * y,          //
                      t, -z, y, x});
}

inline bool reduced_charpoly_relation_check(const IntMatrix& rational_rep, const IntPolynomial& reduced_charpoly,
                                            unsigned exponent) {
    detail::require(exponent >= 1, "exponent must be positive");
    if (!rational_rep.is_square()) return false;
    return char_poly(rational_rep) == pow(reduced_charpoly, exponent);
}

struct ClassificationCase {
    std::string id;
    std::size_t g = 0;
    std::string albert_type;  // "non-simple", "I" or "II"
    std::optional<std::size_t> l, e;
    std::string description;
    std::size_t m = 0;
    bool constructible = true;  // false: metadata only
};

inline const std::vector<ClassificationCase>& classification_table() {
    static const std::vector<ClassificationCase> table{
        {"2.1", 2, "non-simple", {}, {}, "X_t = E_t^2, dim(E_t) = 1; f is determined by a unit in a totally real quadratic field (i.e., a matrix in SL(2,Z))", 1, true},
        {"2.2", 2, "I", 1, 2, "generically simple with endomorphism algebra of type I, l=1, e=2; f is determined by a unit in a totally real quadratic field not in U_inf", 2, true},
        {"3.1", 3, "non-simple", {}, {}, "X_t = E_t^3, dim(E_t) = 1; f is determined by a unit in a cubic field (i.e., a matrix in SL(3,Z))", 1, true},
        {"3.2", 3, "I", 1, 3, "generically simple with endomorphism algebra of type I, l=1, e=3; f is determined by a unit in a totally real cubic field", 3, true},
        {"4.1", 4, "non-simple", {}, {}, "X_t = E_t^4, dim(E_t) = 1; f is determined by a unit in a quartic field (i.e., a matrix in SL(4,Z))", 1, true},
        {"4.2", 4, "non-simple", {}, {}, "X_t = E_t^2 x A_t, dim(E_t) = 1, dim(A_t) = 2 as in 2.2; f is determined by two units in two real quadratic fields", 2, true},
        {"4.3", 4, "non-simple", {}, {}, "X_t = A^1_t x A^2_t, dim(A^i_t) = 2 as in 2.2; f is determined by two units in two real quadratic fields", 4, true},
        {"4.4", 4, "non-simple", {}, {}, "X_t = (A_t)^2, dim(A_t) = 2 as in 2.2; f is determined by a matrix in GL(2,O_K) for some real quadratic field K", 2, true},
        {"4.5", 4, "I", 1, 4, "generically simple with endomorphism algebra of type I, l=1, e=4; f is determined by a unit in a totally real quartic field", 4, true},
        {"4.6", 4, "I", 2, 2, "generically simple with endomorphism algebra of type I, l=2, e=2; f is determined by a unit in a real quadratic field", 6, true},
        {"4.7", 4, "II", 1, 2, "generically simple with endomorphism algebra of type II, e=2, l=1; f is determined by mu in B a totally indefinite quaternion algebra over a real quadratic field with Nrd(mu) = +/-1", 2, false},
        {"4.8", 4, "II", 2, 1, "generically simple with endomorphism algebra of type II, e=1, l=2; f is determined by mu in B a totally indefinite quaternion algebra over Q with Nrd(mu) = +/-1", 3, true},
        {"5.1", 5, "non-simple", {}, {}, "X_t = E_t^5, dim(E_t) = 1; f is determined by a unit in a quintic field (i.e., a matrix in SL(5,Z))", 1, true},
        {"5.2", 5, "non-simple", {}, {}, "X_t = E_t^2 x Y_t, dim(E_t) = 1 as in 2.1, dim(Y_t) = 3 as in 3.2; f is determined by two units in the ring of integers of a totally real quadratic and cubic fields respectively", 4, true},
        {"5.3", 5, "non-simple", {}, {}, "X_t = A_t x E_t^3, dim(A_t) = 2 as in 2.2, dim(E_t) = 1 as in 3.1; f is determined by two units in the ring of integers of a real quadratic and of a cubic field", 3, true},
        {"5.4", 5, "non-simple", {}, {}, "X_t = A_t x Y_t, dim(A_t) = 2 as in 2.2, dim(Y_t) = 3 as in 3.2; f is determined by two units in the ring of integers of a totally real quadratic and cubic fields respectively", 5, true},
        {"5.5", 5, "I", 1, 5, "generically simple with endomorphism algebra of type I, l=1, e=5; f is determined by a unit in a totally real quartic field", 5, true},
    };
    return table;
}

inline std::vector<ClassificationCase> classification_cases(std::size_t g) {
    detail::require(g >= 2 && g <= 5, "classification is tabulated for 2 <= g <= 5");
    std::vector<ClassificationCase> out;
    for (const auto& c : classification_table())
        if (c.g == g) out.push_back(c);
    return out;
}

inline const ClassificationCase& classification_case(const std::string& id) {
    for (const auto& c : classification_table())
        if (c.id == id) return c;
    throw ContractError("unknown classification case " + id);
}

// Moduli dimension e l (l+1) / 2 for simple types I and II.
inline std::optional<std::size_t> moduli_dimension_formula(const ClassificationCase& c) {
    if (!c.l || !c.e || (c.albert_type != "I" && c.albert_type != "II")) return std::nullopt;
    return *c.e * *c.l * (*c.l + 1) / 2;
}

struct CatalogParams {
    long d = 2;    // first real quadratic field Q(sqrt d)
    long d2 = 3;   // second real quadratic field
    std::size_t r = 1;
    bool finite_order = false;  // case 2.1 only: replace the unit by an order-4 matrix
    long quaternion_a = 2, quaternion_b = 3, quaternion_height = 3;
};

struct CatalogFamily {
    ClassificationCase info;
    CatalogParams params;
    IntMatrix u_A_rat;
    IntPolynomial charpoly;
    bool cyclotomic_free = false;
    FamilyDescriptor descriptor;
    std::vector<std::string> notes;
};

namespace detail {

// Units fixed for the cubic, quartic and quintic fields.
inline IntPolynomial cubic_unit() { return IntPolynomial{-1, -1, 0, 1}; }                  // T^3 - T - 1
inline IntPolynomial totally_real_cubic_unit() { return IntPolynomial{1, -2, -1, 1}; }     // T^3 - T^2 - 2T + 1
inline IntPolynomial quartic_unit() { return IntPolynomial{-1, -1, 0, 0, 1}; }             // T^4 - T - 1
inline IntPolynomial totally_real_quartic_unit() { return IntPolynomial{1, 0, -10, 0, 1}; } // sqrt2 + sqrt3
inline IntPolynomial quintic_unit() { return IntPolynomial{-1, -1, 0, 0, 0, 1}; }          // T^5 - T - 1
inline IntPolynomial totally_real_quintic_unit() { return IntPolynomial{1, 3, -3, -4, 1, 1}; } // 2cos(2 pi/11)

// E^n with f a companion matrix: H^1 = Z^n (x) H^1(E).
inline IntMatrix power_of_curve(const IntPolynomial& unit) { return unit_multiplication_matrix(unit, 1); }

}  // namespace detail

/// Concrete representative for a classification case, with its descriptor for the criteria module.
inline CatalogFamily build_case(const std::string& id, const CatalogParams& p = {}) {
    CatalogFamily fam;
    fam.info = classification_case(id);
    fam.params = p;
    detail::require(p.r <= fam.info.g, "torus rank r must lie in 0..g");
    if (!fam.info.constructible)
        throw ContractError("case " + id + " is recorded as metadata only; its lattice construction is not implemented");
    if (p.finite_order && id != "2.1") throw ContractError("finite_order is only offered for case 2.1");

    const auto u1 = pell_fundamental_unit(p.d);
    const auto u2 = pell_fundamental_unit(p.d2);
    const IntPolynomial q1 = quadratic_unit_minpoly(u1), q2 = quadratic_unit_minpoly(u2);
    if (id != "4.8" && id != "2.1" && id != "3.1" && id != "4.1" && id != "5.1")
        fam.notes.push_back("quadratic units taken in the order Z[sqrt d]; constructions are isogeny invariant");

    IntMatrix m;
    unsigned exponent = 0;
    IntPolynomial reduced;
    if (id == "2.1") {
        m = p.finite_order ? IntMatrix::block_diag({IntMatrix{{0, -1}, {1, 0}}, IntMatrix{{0, -1}, {1, 0}}})
                           : detail::power_of_curve(q1);
        reduced = p.finite_order ? IntPolynomial{1, 0, 1} : q1;
        exponent = 2;
    } else if (id == "2.2") {
        m = unit_multiplication_matrix(q1, 1);
        reduced = q1;
        exponent = 2;
    } else if (id == "3.1") {
        m = detail::power_of_curve(detail::cubic_unit());
        reduced = detail::cubic_unit();
        exponent = 2;
    } else if (id == "3.2") {
        m = unit_multiplication_matrix(detail::totally_real_cubic_unit(), 1);
        reduced = detail::totally_real_cubic_unit();
        exponent = 2;
    } else if (id == "4.1") {
        m = detail::power_of_curve(detail::quartic_unit());
        reduced = detail::quartic_unit();
        exponent = 2;
    } else if (id == "4.2") {
        m = IntMatrix::block_diag({detail::power_of_curve(q1), unit_multiplication_matrix(q2, 1)});
    } else if (id == "4.3") {
        m = IntMatrix::block_diag({unit_multiplication_matrix(q1, 1), unit_multiplication_matrix(q2, 1)});
    } else if (id == "4.4") {
        // [[mu, 1], [1, 0]] in GL(2, O_K) on O_K^2, on both coordinate blocks.
        const IntMatrix c = IntMatrix::companion(q1), id2 = IntMatrix::identity(2), z2(2, 2);
        IntMatrix blk(4, 4);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                blk(i, j) = c(i, j);
                blk(i, j + 2) = id2(i, j);
                blk(i + 2, j) = id2(i, j);
                blk(i + 2, j + 2) = z2(i, j);
            }
        m = IntMatrix::block_diag({blk, blk});
    } else if (id == "4.5") {
        m = unit_multiplication_matrix(detail::totally_real_quartic_unit(), 1);
        reduced = detail::totally_real_quartic_unit();
        exponent = 2;
    } else if (id == "4.6") {
        m = unit_multiplication_matrix(q1, 2);
        reduced = q1;
        exponent = 4;
    } else if (id == "4.8") {
        const QuaternionAlgebra alg{Rat(p.quaternion_a), Rat(p.quaternion_b)};
        const auto found = quaternion_norm_one_search(alg, p.quaternion_height);
        const NormOneElement* pick = nullptr;
        for (const auto& el : found)
            if (el.cyclotomic_free) {
                pick = &el;
                break;
            }
        if (!pick) throw ContractError("no cyclotomic-free norm-one quaternion up to the given height");
        const IntMatrix lm = quaternion_left_multiplication(alg, pick->q);
        m = IntMatrix::block_diag({lm, lm});
        reduced = pick->reduced_charpoly;
        exponent = 4;
        fam.notes.push_back("mu = " + pick->q.alpha.get_str() + " + " + pick->q.beta.get_str() + " i + " +
                            pick->q.gamma.get_str() + " j + " + pick->q.delta.get_str() + " ij in (" +
                            alg.a.get_str() + ", " + alg.b.get_str() + ")_Q; the algebra is taken as given, not certified indefinite");
    } else if (id == "5.1") {
        m = detail::power_of_curve(detail::quintic_unit());
        reduced = detail::quintic_unit();
        exponent = 2;
    } else if (id == "5.2") {
        m = IntMatrix::block_diag({detail::power_of_curve(q1), unit_multiplication_matrix(detail::totally_real_cubic_unit(), 1)});
    } else if (id == "5.3") {
        m = IntMatrix::block_diag({unit_multiplication_matrix(q1, 1), detail::power_of_curve(detail::cubic_unit())});
    } else if (id == "5.4") {
        m = IntMatrix::block_diag({unit_multiplication_matrix(q1, 1), unit_multiplication_matrix(detail::totally_real_cubic_unit(), 1)});
    } else if (id == "5.5") {
        m = unit_multiplication_matrix(detail::totally_real_quintic_unit(), 1);
        reduced = detail::totally_real_quintic_unit();
        exponent = 2;
    }
    fam.u_A_rat = m;
    fam.charpoly = char_poly(m);
    if (exponent > 0 && !reduced_charpoly_relation_check(m, reduced, exponent))
        throw std::logic_error("catalog matrix for case " + id + " fails its reduced charpoly relation");
    fam.cyclotomic_free = is_cyclotomic_free(fam.charpoly);
    fam.descriptor.g = fam.info.g;
    fam.descriptor.charpoly = fam.charpoly;
    fam.descriptor.r = p.r;
    fam.descriptor.finite_order = p.finite_order;
    if (p.finite_order) fam.descriptor.k = 0;
    return fam;
}

}  // namespace abdyn

#endif  // ABDYN_CATALOG_HPP
