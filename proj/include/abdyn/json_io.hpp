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

#ifndef ABDYN_JSON_IO_HPP
#define ABDYN_JSON_IO_HPP

// JSON encoding of the library types. Integers are decimal strings on output;
// on input both strings and JSON integers are accepted. Needs nlohmann/json (vendor/json.hpp).

#include <json.hpp>

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "criteria.hpp"
#include "degrees.hpp"
#include "exactalg.hpp"
#include "orbit.hpp"
#include "toroidal.hpp"

namespace abdyn::io {

using json = nlohmann::json;

[[noreturn]] inline void schema_fail(const std::string& path, const std::string& what) {
    throw SchemaError(path + ": " + what);
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) schema_fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema_fail(path, "missing field '" + key + "'");
    return *it;
}

inline const json* optional_field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) schema_fail(path, "expected an object");
    auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

// Integers.

inline json to_json(const Int& v) { return v.get_str(); }

inline Int int_from_json(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Int(j.dump());
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        Int v;
        if (s.empty() || v.set_str(s, 10) != 0) schema_fail(path, "not a decimal integer: '" + s + "'");
        return v;
    }
    schema_fail(path, "expected an integer or decimal string");
}

inline std::size_t size_from_json(const json& j, const std::string& path) {
    const Int v = int_from_json(j, path);
    if (v < 0 || !v.fits_ulong_p()) schema_fail(path, "expected a nonnegative integer");
    return v.get_ui();
}

inline long long_from_json(const json& j, const std::string& path) {
    const Int v = int_from_json(j, path);
    if (!v.fits_slong_p()) schema_fail(path, "integer out of range");
    return v.get_si();
}

inline double double_from_json(const json& j, const std::string& path) {
    if (!j.is_number()) schema_fail(path, "expected a number");
    return j.get<double>();
}

inline bool bool_from_json(const json& j, const std::string& path) {
    if (!j.is_boolean()) schema_fail(path, "expected a boolean");
    return j.get<bool>();
}

inline json to_json(const IntVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline IntVector vector_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) schema_fail(path, "expected an array of integers");
    IntVector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(int_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

inline json to_json(const IntMatrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
    return a;
}

inline IntMatrix matrix_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) schema_fail(path, "expected an array of rows");
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(vector_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].size() != cols) schema_fail(path + "[" + std::to_string(i) + "]", "ragged matrix");
    return IntMatrix::from_rows(rows, cols);
}

// Polynomials: coefficient list, constant term first.
inline json to_json(const IntPolynomial& p) { return to_json(IntVector(p.coeffs())); }

inline IntPolynomial polynomial_from_json(const json& j, const std::string& path) {
    return IntPolynomial(vector_from_json(j, path));
}

inline json to_json(const CyclotomicSplit& s) {
    json f = json::array();
    for (const auto& c : s.factors) f.push_back({{"index", c.index}, {"multiplicity", c.multiplicity}});
    return {{"cyclotomic_part", to_json(s.cyclotomic_part)}, {"free_part", to_json(s.free_part)}, {"factors", f}};
}

// Degrees.

inline SemiAbelianAut aut_from_json(const json& j, const std::string& path) {
    const json* t = optional_field(j, "u_T", path);
    const json* a = optional_field(j, "u_A_rat", path);
    if (!t && !a) schema_fail(path, "need at least one of 'u_T', 'u_A_rat'");
    IntMatrix ut = t ? matrix_from_json(*t, path + ".u_T") : IntMatrix(0, 0);
    IntMatrix ua = a ? matrix_from_json(*a, path + ".u_A_rat") : IntMatrix(0, 0);
    return SemiAbelianAut(std::move(ut), std::move(ua));
}

inline json to_json(const SemiAbelianAut& a) { return {{"u_T", to_json(a.u_T)}, {"u_A_rat", to_json(a.u_A_rat)}}; }

inline json to_json(const DegreeProfile& p) {
    json d = json::array();
    for (const auto& e : p.growth_exponents) d.push_back(e ? json(*e) : json(nullptr));
    return {{"lambdas", p.lambdas}, {"growth_exponents", d}, {"moduli_collision", p.moduli_collision}};
}

inline json to_json(const FirstDegree& f) {
    return {{"lambda1", f.lambda1}, {"d", f.d ? json(*f.d) : json(nullptr)}};
}

// Criteria.

inline FamilyDescriptor descriptor_from_json(const json& j, const std::string& path) {
    FamilyDescriptor d;
    d.g = size_from_json(field(j, "g", path), path + ".g");
    d.charpoly = polynomial_from_json(field(j, "charpoly", path), path + ".charpoly");
    if (const json* r = optional_field(j, "r", path)) d.r = size_from_json(*r, path + ".r");
    if (const json* k = optional_field(j, "k", path)) d.k = size_from_json(*k, path + ".k");
    if (const json* f = optional_field(j, "finite_order", path)) d.finite_order = bool_from_json(*f, path + ".finite_order");
    return d;
}

inline json to_json(const FamilyDescriptor& d) {
    json j{{"g", d.g}, {"charpoly", to_json(d.charpoly)}, {"finite_order", d.finite_order}};
    j["r"] = d.r ? json(*d.r) : json(nullptr);
    j["k"] = d.k ? json(*d.k) : json(nullptr);
    return j;
}

inline json to_json(const Verdict& v) {
    json rs = json::array();
    for (const auto& r : v.reasons) rs.push_back({{"rule", r.rule}, {"theorem", r.theorem}, {"detail", r.detail}});
    return {{"status", to_string(v.status)}, {"reasons", rs}};
}

inline json to_json(const Sublattice& s) {
    return {{"ambient_rank", s.ambient_rank}, {"rank", s.rank()}, {"basis", to_json(s.basis)}, {"saturated", s.saturated}};
}

inline json to_json(const InvariantSplit& s) { return {{"L0", to_json(s.L0)}, {"L1", to_json(s.L1)}, {"index", to_json(s.index)}}; }

// Toroidal.

inline json to_json(const GammaData& g) { return {{"g_prime", g.g_prime}, {"Bprime", to_json(g.Bprime)}}; }

inline GammaData gamma_from_json(const json& j, const std::string& path) {
    GammaData g(size_from_json(field(j, "g_prime", path), path + ".g_prime"),
                matrix_from_json(field(j, "Bprime", path), path + ".Bprime"));
    return g;
}

inline json to_json(const Fan& f) {
    json cones = json::array();
    for (const auto& c : f.cones) {
        json gens = json::array();
        for (const auto& v : c.generators) gens.push_back(to_json(v));
        cones.push_back(gens);
    }
    json j{{"gamma", to_json(f.gamma)}, {"period", to_json(f.period)}, {"cones", cones}, {"metric", to_json(f.metric)},
           {"attempts", f.attempts}};
    j["seed"] = f.seed ? json(*f.seed) : json(nullptr);
    return j;
}

inline Fan fan_from_json(const json& j, const std::string& path) {
    Fan f;
    f.gamma = gamma_from_json(field(j, "gamma", path), path + ".gamma");
    f.period = matrix_from_json(field(j, "period", path), path + ".period");
    f.metric = matrix_from_json(field(j, "metric", path), path + ".metric");
    const json& cones = field(j, "cones", path);
    if (!cones.is_array()) schema_fail(path + ".cones", "expected an array of cones");
    for (std::size_t i = 0; i < cones.size(); ++i) {
        const std::string p = path + ".cones[" + std::to_string(i) + "]";
        if (!cones[i].is_array()) schema_fail(p, "expected an array of generators");
        Cone c;
        for (std::size_t k = 0; k < cones[i].size(); ++k)
            c.generators.push_back(vector_from_json(cones[i][k], p + "[" + std::to_string(k) + "]"));
        f.cones.push_back(std::move(c));
    }
    if (const json* s = optional_field(j, "seed", path)) f.seed = size_from_json(*s, path + ".seed");
    if (const json* a = optional_field(j, "attempts", path)) f.attempts = static_cast<unsigned>(size_from_json(*a, path + ".attempts"));
    return f;
}

inline json to_json(const FanReport& r) {
    return {{"ok", r.ok()}, {"violations", r.violations}, {"non_regular", r.non_regular}};
}

inline json to_json(const MonodromyData& m) {
    return {{"B", to_json(m.B)}, {"basis_change", to_json(m.basis_change)}, {"gamma", to_json(m.gamma)}};
}

inline json to_json(const TranslationPower& t) {
    json j{{"beta", to_json(t.beta)}, {"diagnostic", t.diagnostic}};
    j["N"] = t.N ? to_json(*t.N) : json(nullptr);
    return j;
}

// Orbit. Complex numbers are [re, im] pairs.

inline json to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) schema_fail(path, "expected [re, im]");
    return {double_from_json(j[0], path + "[0]"), double_from_json(j[1], path + "[1]")};
}

inline json to_json(const CVector& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(to_json(z));
    return a;
}

inline CVector cvector_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) schema_fail(path, "expected an array of complex numbers");
    CVector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(complex_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

inline json to_json(const NumericLattice& l) {
    json b = json::array();
    for (const auto& v : l.basis) b.push_back(to_json(v));
    json j{{"g", l.g}, {"basis", b}};
    j["polarization"] = l.polarization ? to_json(*l.polarization) : json(nullptr);
    return j;
}

inline NumericLattice lattice_from_json(const json& j, const std::string& path) {
    NumericLattice l;
    l.g = size_from_json(field(j, "g", path), path + ".g");
    const json& b = field(j, "basis", path);
    if (!b.is_array()) schema_fail(path + ".basis", "expected an array of vectors");
    for (std::size_t i = 0; i < b.size(); ++i) l.basis.push_back(cvector_from_json(b[i], path + ".basis[" + std::to_string(i) + "]"));
    if (const json* p = optional_field(j, "polarization", path)) l.polarization = matrix_from_json(*p, path + ".polarization");
    return l;
}

inline json to_json(const OrbitReport& r) {
    json rel = json::array();
    for (const auto& x : r.relations) rel.push_back({{"q", to_json(x.q)}, {"q_prime", to_json(x.q_prime)}, {"residual", x.residual}});
    return {{"h", r.h}, {"s", r.s}, {"r", r.r}, {"relations", rel}, {"dense", r.dense}, {"totally_real", r.totally_real},
            {"height_bound", r.height_bound}, {"tol", r.tol}};
}

inline json to_json(const SplitAB& s) {
    json a = json::array(), b = json::array();
    for (const auto& v : s.A_basis) a.push_back(to_json(v));
    for (const auto& v : s.B_basis) b.push_back(to_json(v));
    json j{{"A_basis", a}, {"B_basis", b}, {"a", to_json(s.a)}, {"b", to_json(s.b)}};
    j["A_report"] = s.A_basis.empty() ? json(nullptr) : to_json(s.A_report);
    j["B_report"] = s.B_basis.empty() ? json(nullptr) : to_json(s.B_report);
    return j;
}

inline json to_json(const Approximant& a) {
    json n = json::array();
    for (const auto& x : a.numerators) n.push_back(to_json(x));
    return {{"q", a.q}, {"numerators", n}, {"distance", a.distance}, {"extends", a.extends}};
}

// Catalog.

inline json to_json(const ClassificationCase& c) {
    json j{{"id", c.id}, {"g", c.g}, {"albert_type", c.albert_type}, {"description", c.description}, {"m", c.m},
           {"constructible", c.constructible}};
    j["l"] = c.l ? json(*c.l) : json(nullptr);
    j["e"] = c.e ? json(*c.e) : json(nullptr);
    return j;
}

inline json to_json(const CatalogParams& p) {
    return {{"d", p.d}, {"d2", p.d2}, {"r", p.r}, {"finite_order", p.finite_order},
            {"quaternion_a", p.quaternion_a}, {"quaternion_b", p.quaternion_b}, {"quaternion_height", p.quaternion_height}};
}

inline json to_json(const CatalogFamily& f) {
    return {{"case", to_json(f.info)}, {"params", to_json(f.params)}, {"u_A_rat", to_json(f.u_A_rat)},
            {"charpoly", to_json(f.charpoly)}, {"cyclotomic_free", f.cyclotomic_free},
            {"descriptor", to_json(f.descriptor)}, {"notes", f.notes}};
}

inline json to_json(const PellUnit& u) { return {{"x", to_json(u.x)}, {"y", to_json(u.y)}, {"norm", u.norm}}; }

}  // namespace abdyn::io

#endif  // ABDYN_JSON_IO_HPP
