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

// abdyn: JSON-driven command line front end.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "abdyn/json_io.hpp"

using namespace abdyn;
using io::json;
using io::to_json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
    double tol = 1e-9;
    long height = 50;
    std::uint64_t seed = 0;
    std::size_t n_max = 25;
    std::string in = "-";
    std::string out = "-";
};

int log_level() {
    const char* v = std::getenv("ABDYN_LOG");
    if (!v) return 0;
    const std::string s(v);
    if (s == "debug" || s == "2") return 2;
    if (s == "info" || s == "1") return 1;
    return 0;
}

void log(int level, const std::string& msg) {
    if (log_level() >= level) std::cerr << "[abdyn] " << msg << '\n';
}

json read_payload(const Options& o) {
    std::string text;
    if (o.in == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream f(o.in);
        if (!f) throw SchemaError("cannot read input file " + o.in);
        text.assign(std::istreambuf_iterator<char>(f), {});
    }
    log(2, "read " + std::to_string(text.size()) + " bytes from " + (o.in == "-" ? "stdin" : o.in));
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
}

json options_json(const Options& o) {
    return {{"tol", o.tol}, {"height", o.height}, {"seed", o.seed}, {"n_max", o.n_max}};
}

void write_result(const Options& o, const std::string& command, const json& input, const json& result) {
    const json doc{{"command", command}, {"abdyn_version", kVersion}, {"options", options_json(o)}, {"input", input},
                   {"result", result}};
    const std::string text = doc.dump(2) + "\n";
    if (o.out == "-") {
        std::cout << text;
    } else {
        std::ofstream f(o.out);
        if (!f) throw ContractError("cannot write output file " + o.out);
        f << text;
    }
}

json analyze(const SemiAbelianAut& aut, const Options& o, bool fit) {
    aut.validate(o.tol);
    json r;
    json parts = json::object();
    for (const auto& [name, m] : {std::pair<std::string, const IntMatrix*>{"u_T", &aut.u_T}, {"u_A_rat", &aut.u_A_rat}}) {
        if (m->rows() == 0) continue;
        const auto cp = char_poly(*m);
        parts[name] = {{"charpoly", to_json(cp)}, {"cyclotomic_split", to_json(cyclotomic_split(cp))}};
    }
    r["parts"] = parts;
    r["degrees"] = to_json(semiabelian_degrees(aut, o.tol));
    r["first_degree"] = to_json(first_degree_data(aut, o.tol));
    if (fit) {
        json g = json::array();
        for (std::size_t k = 0; k <= aut.dim(); ++k) {
            const auto gr = fit_growth(aut, k, o.n_max, o.tol);
            g.push_back({{"k", k}, {"log_rate", gr.log_rate}, {"exponent", gr.exponent}});
        }
        r["fitted_growth"] = g;
    }
    return r;
}

json build_fan(const GammaData& gd, const std::optional<IntMatrix>& metric, const Options& o, bool random_metric) {
    const Fan fan = delaunay_fan(gd, metric, o.seed, random_metric);
    const auto report = validate_fan(fan);
    const auto [rays, maxcones] = central_fiber_combinatorics(fan);
    return {{"fan", to_json(fan)}, {"report", to_json(report)},
            {"central_fiber", {{"components", rays}, {"maximal_cones", maxcones}}}};
}

json end_to_end(const std::string& id, const CatalogParams& p, const Options& o, bool with_fan) {
    const auto fam = build_case(id, p);
    log(1, "built case " + id + " (" + std::to_string(fam.u_A_rat.rows()) + "x" + std::to_string(fam.u_A_rat.cols()) + ")");
    json bundle{{"family", to_json(fam)}};
    bundle["analysis"] = analyze(SemiAbelianAut(IntMatrix(0, 0), fam.u_A_rat), o, false);
    bundle["verdict"] = to_json(decide_regularizable(fam.descriptor));
    if (with_fan) {
        detail::require(p.r >= 1 && p.r <= 3, "--with-fan needs 1 <= r <= 3");
        // Degeneration data chosen as B' = I_r.
        const GammaData gd(fam.info.g - p.r, IntMatrix::identity(p.r));
        bundle["fan"] = build_fan(gd, std::nullopt, o, false);
        bundle["fan"]["note"] = "degeneration data chosen as B' = I_r";
    }
    return bundle;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"abdyn: dynamics of automorphisms on degenerating abelian families"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--tol", o.tol, "numeric tolerance")->capture_default_str();
    app.add_option("--height", o.height, "height bound for relation searches")->capture_default_str();
    app.add_option("--seed", o.seed, "random seed")->capture_default_str();
    app.add_option("--n-max", o.n_max, "largest iterate used by numeric oracles")->capture_default_str();
    app.add_option("--in", o.in, "input JSON file ('-' for stdin)")->capture_default_str();
    app.add_option("--out", o.out, "output JSON file ('-' for stdout)")->capture_default_str();
    app.fallthrough();

    bool fit = false;
    auto* c_analyze = app.add_subcommand("analyze", "char polys, cyclotomic split and degree profile of an automorphism");
    c_analyze->add_flag("--fit", fit, "also recover growth rates from exact power recurrences");

    auto* c_decide = app.add_subcommand("decide", "regularizability verdict for a family descriptor");
    auto* c_split = app.add_subcommand("split", "invariant splitting into cyclotomic and cyclotomic-free parts");

    auto* c_fan = app.add_subcommand("fan", "toroidal fans");
    c_fan->require_subcommand(1);
    bool random_metric = false;
    auto* c_fan_build = c_fan->add_subcommand("build", "Delaunay fan from monodromy, B or Gamma data");
    c_fan_build->add_flag("--random-metric", random_metric, "perturb the metric with the seed");
    auto* c_fan_validate = c_fan->add_subcommand("validate", "check a fan");
    auto* c_fan_extends = c_fan->add_subcommand("extends", "extension of a section through a fan");

    auto* c_orbit = app.add_subcommand("orbit", "orbit closures of translations");
    c_orbit->require_subcommand(1);
    bool do_split = false;
    auto* c_orbit_analyze = c_orbit->add_subcommand("analyze", "(h, s, r) of the orbit closure");
    c_orbit_analyze->add_flag("--split", do_split, "also split into dense and totally real parts");
    auto* c_orbit_approx = c_orbit->add_subcommand("approx", "finite-order approximations of a translation");

    auto* c_catalog = app.add_subcommand("catalog", "low-dimensional classification");
    c_catalog->require_subcommand(1);
    std::size_t list_g = 0;
    auto* c_cat_list = c_catalog->add_subcommand("list", "cases for a dimension");
    c_cat_list->add_option("--g", list_g, "dimension 2..5")->required();
    CatalogParams cp;
    std::string case_id;
    bool with_fan = false;
    auto add_case_opts = [&](CLI::App* c) {
        c->add_option("--case", case_id, "case id, e.g. 2.2")->required();
        c->add_option("--d", cp.d, "real quadratic field Q(sqrt d)")->capture_default_str();
        c->add_option("--d2", cp.d2, "second real quadratic field")->capture_default_str();
        c->add_option("--r", cp.r, "torus rank of the central fiber")->capture_default_str();
        c->add_flag("--finite-order", cp.finite_order, "case 2.1 with a finite-order matrix");
        c->add_option("--quaternion-a", cp.quaternion_a)->capture_default_str();
        c->add_option("--quaternion-b", cp.quaternion_b)->capture_default_str();
        c->add_option("--quaternion-height", cp.quaternion_height)->capture_default_str();
    };
    auto* c_cat_build = c_catalog->add_subcommand("build", "representative family for a case");
    add_case_opts(c_cat_build);
    long pell_d = 2;
    auto* c_cat_pell = c_catalog->add_subcommand("pell", "fundamental unit of Z[sqrt d]");
    c_cat_pell->add_option("--d", pell_d, "squarefree d > 1")->required();

    auto* c_e2e = app.add_subcommand("end-to-end", "catalog -> matrices -> degrees -> verdict (-> fan)");
    add_case_opts(c_e2e);
    c_e2e->add_flag("--with-fan", with_fan, "also build a fan for B' = I_r");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto fail = [](int code, const std::string& kind, const std::string& msg) {
        std::cerr << json{{"error", {{"kind", kind}, {"message", msg}}}}.dump() << '\n';
        return code;
    };
    try {
        if (*c_analyze) {
            const json in = read_payload(o);
            write_result(o, "analyze", in, analyze(io::aut_from_json(in, "$"), o, fit));
        } else if (*c_decide) {
            const json in = read_payload(o);
            write_result(o, "decide", in, to_json(decide_regularizable(io::descriptor_from_json(in, "$"))));
        } else if (*c_split) {
            const json in = read_payload(o);
            const IntMatrix m = io::matrix_from_json(io::field(in, "matrix", "$"), "$.matrix");
            const auto s = split_invariant_subfamily(m);
            json r = to_json(s);
            r["L0"]["charpoly"] = s.L0.rank() ? to_json(char_poly(restriction(s.L0, m))) : json::array({"1"});
            r["L1"]["charpoly"] = s.L1.rank() ? to_json(char_poly(restriction(s.L1, m))) : json::array({"1"});
            write_result(o, "split", in, r);
        } else if (*c_fan_build) {
            const json in = read_payload(o);
            GammaData gd;
            json extra = json::object();
            if (const json* m = io::optional_field(in, "monodromy", "$")) {
                const auto md = monodromy_to_B(io::matrix_from_json(*m, "$.monodromy"));
                gd = md.gamma;
                extra = to_json(md);
            } else if (const json* b = io::optional_field(in, "B", "$")) {
                const IntMatrix bm = io::matrix_from_json(*b, "$.B");
                detail::require_dims(bm.is_square(), "B must be square");
                const std::size_t g = bm.rows();
                IntMatrix mono = IntMatrix::identity(2 * g);
                for (std::size_t i = 0; i < g; ++i)
                    for (std::size_t j = 0; j < g; ++j) mono(i, g + j) = bm(i, j);
                const auto md = monodromy_to_B(mono);
                gd = md.gamma;
                extra = to_json(md);
            } else {
                gd = io::gamma_from_json(io::field(in, "gamma", "$"), "$.gamma");
            }
            std::optional<IntMatrix> metric;
            if (const json* m = io::optional_field(in, "metric", "$")) metric = io::matrix_from_json(*m, "$.metric");
            json r = build_fan(gd, metric, o, random_metric);
            if (!extra.empty()) r["monodromy"] = extra;
            write_result(o, "fan build", in, r);
        } else if (*c_fan_validate) {
            const json in = read_payload(o);
            const json& f = in.contains("fan") ? in["fan"] : in;
            write_result(o, "fan validate", in, to_json(validate_fan(io::fan_from_json(f, "$"))));
        } else if (*c_fan_extends) {
            const json in = read_payload(o);
            const Fan fan = io::fan_from_json(io::field(in, "fan", "$"), "$.fan");
            const IntVector n_phi = io::vector_from_json(io::field(in, "n_phi", "$"), "$.n_phi");
            write_result(o, "fan extends", in,
                         {{"extends", section_extends(n_phi, fan)},
                          {"translation", to_json(translation_regularizable(n_phi, fan.gamma))}});
        } else if (*c_orbit_analyze) {
            const json in = read_payload(o);
            const auto lat = io::lattice_from_json(io::field(in, "lattice", "$"), "$.lattice");
            const auto alpha = io::cvector_from_json(io::field(in, "alpha", "$"), "$.alpha");
            json r = to_json(orbit_dims(lat, alpha, o.height, o.tol));
            if (do_split) r["split"] = to_json(split_A_B(lat, alpha, o.height, o.tol));
            write_result(o, "orbit analyze", in, r);
        } else if (*c_orbit_approx) {
            const json in = read_payload(o);
            const json& a = io::field(in, "alpha", "$");
            if (!a.is_array()) io::schema_fail("$.alpha", "expected an array of reals");
            std::vector<double> alpha;
            for (std::size_t i = 0; i < a.size(); ++i) alpha.push_back(io::double_from_json(a[i], "$.alpha[" + std::to_string(i) + "]"));
            const json& dj = io::field(in, "denominators", "$");
            if (!dj.is_array()) io::schema_fail("$.denominators", "expected an array of integers");
            std::vector<long> dens;
            for (std::size_t i = 0; i < dj.size(); ++i) dens.push_back(io::long_from_json(dj[i], "$.denominators[" + std::to_string(i) + "]"));
            IntMatrix b(0, alpha.size());
            if (const json* bj = io::optional_field(in, "B", "$")) b = io::matrix_from_json(*bj, "$.B");
            json r = json::array();
            for (const auto& ap : finite_order_approximations(alpha, dens, b)) r.push_back(to_json(ap));
            write_result(o, "orbit approx", in, r);
        } else if (*c_cat_list) {
            json r = json::array();
            for (const auto& c : classification_cases(list_g)) r.push_back(to_json(c));
            write_result(o, "catalog list", {{"g", list_g}}, r);
        } else if (*c_cat_build) {
            const auto fam = build_case(case_id, cp);
            write_result(o, "catalog build", {{"case", case_id}, {"params", to_json(cp)}}, to_json(fam));
        } else if (*c_cat_pell) {
            write_result(o, "catalog pell", {{"d", pell_d}}, to_json(pell_fundamental_unit(pell_d)));
        } else if (*c_e2e) {
            write_result(o, "end-to-end", {{"case", case_id}, {"params", to_json(cp)}, {"with_fan", with_fan}},
                         end_to_end(case_id, cp, o, with_fan));
        }
    } catch (const SchemaError& e) {
        return fail(2, "schema", e.what());
    } catch (const json::exception& e) {
        return fail(2, "schema", e.what());
    } catch (const ContractError& e) {
        return fail(3, "contract", e.what());
    } catch (const NumericError& e) {
        return fail(4, "numeric", e.what());
    }
    log(1, "done in " + std::to_string(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()) + " s");
    return 0;
}
