// Batch driver: parse a JSON config, run one library operation, emit CSV.
#include "genpow/calculus.hpp"
#include "genpow/csv.hpp"
#include "genpow/errors.hpp"
#include "genpow/power_table.hpp"
#include "genpow/spps.hpp"
#include "genpow/susy.hpp"
#include "genpow/trig.hpp"
#include "genpow/verify.hpp"
#include "genpow/volterra.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

using json = nlohmann::json;
using namespace genpow;

namespace {

void reject_unknown_keys(const json& obj, const std::vector<std::string>& allowed,
                         const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
}

cplx parse_complex(const json& v, const std::string& where) {
    if (v.is_number()) return cplx{v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return cplx{v[0].get<double>(), v[1].get<double>()};
    throw ConfigError(where + " must be a number or [re, im] pair");
}

FuncSpec parse_func_spec(const json& j, const std::string& where) {
    reject_unknown_keys(j, {"kind", "value", "coefficients", "path"}, where);
    if (!j.contains("kind")) throw ConfigError(where + " needs a 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") {
        return FuncSpec::make_constant(
            j.contains("value") ? parse_complex(j.at("value"), where + ".value") : cplx{1.0, 0.0});
    }
    if (kind == "polynomial") {
        std::vector<cplx> coeffs;
        for (const auto& c : j.at("coefficients"))
            coeffs.push_back(parse_complex(c, where + ".coefficients"));
        return FuncSpec::make_polynomial(std::move(coeffs));
    }
    if (kind == "shifted_square") return FuncSpec::shifted_square();
    if (kind == "sqrt_cosh") return FuncSpec::sqrt_cosh();
    if (kind == "gaussian_ground") return FuncSpec::gaussian_ground();
    if (kind == "gaussian") return FuncSpec::gaussian();
    if (kind == "cosh") return FuncSpec::cosh_spec();
    if (kind == "table") return FuncSpec::from_table_csv(j.at("path").get<std::string>());
    throw ConfigError(where + ": unknown function kind '" + kind + "'");
}

struct CommonConfig {
    Grid grid;
    PhiSpec phi_spec;
};

CommonConfig parse_common(const json& cfg) {
    reject_unknown_keys(cfg,
                        {"interval", "grid_size", "x0", "phi", "powers", "trig", "taylor",
                         "solve", "eigen", "susy", "volterra", "verify"},
                        "config");
    const json& iv = cfg.at("interval");
    reject_unknown_keys(iv, {"a", "b"}, "interval");
    const double a = iv.at("a").get<double>();
    const double b = iv.at("b").get<double>();
    const std::size_t m = cfg.at("grid_size").get<std::size_t>();
    const double x0 = cfg.contains("x0") ? cfg.at("x0").get<double>() : a;

    Grid probe = Grid::uniform(a, b, m, 0);
    std::size_t x0_index = m;
    for (std::size_t i = 0; i < m; ++i)
        if (std::abs(probe.node(i) - x0) <= 1e-12 * std::max(1.0, std::abs(x0))) {
            x0_index = i;
            break;
        }
    if (x0_index == m) throw ConfigError("x0 is not a grid node");
    Grid grid = Grid::uniform(a, b, m, x0_index);
    PhiSpec phi = cfg.contains("phi") ? parse_func_spec(cfg.at("phi"), "phi")
                                      : FuncSpec::make_constant(cplx{1.0, 0.0});
    return CommonConfig{std::move(grid), std::move(phi)};
}

std::string out_path(const std::string& out_dir, const std::string& name) {
    if (out_dir.empty()) return name;
    return out_dir + "/" + name;
}

int cmd_powers(const json& cfg, const CommonConfig& common, const std::string& out_dir) {
    const json& j = cfg.value("powers", json::object());
    reject_unknown_keys(j, {"order", "output"}, "powers");
    const std::size_t order = j.value("order", std::size_t{8});
    SampledFunction phi = materialize_phi(common.phi_spec, common.grid);
    PowerTable t = build_power_table(phi, common.grid.x0_index(), order);

    CsvWriter w(out_path(out_dir, j.value("output", std::string("powers.csv"))));
    std::vector<std::string> names{"node"};
    for (std::size_t n = 0; n <= order; ++n) {
        names.push_back("X" + std::to_string(n) + "_re");
        names.push_back("X" + std::to_string(n) + "_im");
    }
    for (std::size_t n = 0; n <= order; ++n) {
        names.push_back("Xt" + std::to_string(n) + "_re");
        names.push_back("Xt" + std::to_string(n) + "_im");
    }
    w.header(names);
    for (std::size_t i = 0; i < common.grid.size(); ++i) {
        cvec vals;
        for (std::size_t n = 0; n <= order; ++n) vals.push_back(t.X[n][i]);
        for (std::size_t n = 0; n <= order; ++n) vals.push_back(t.Xt[n][i]);
        w.row({common.grid.node(i)}, vals);
    }
    return 0;
}

int cmd_trig(const json& cfg, const CommonConfig& common, const std::string& out_dir) {
    const json& j = cfg.value("trig", json::object());
    reject_unknown_keys(j, {"epsilon", "output", "phase_output"}, "trig");
    const double eps = j.value("epsilon", 1e-10);
    SampledFunction phi = materialize_phi(common.phi_spec, common.grid);
    PowerTable probe = build_power_table(phi, common.grid.x0_index(), 1);
    const std::size_t K =
        auto_truncation(probe.c_bound, 1.0 + common.grid.length() * probe.max_inv_phi, eps);
    PowerTable t = build_power_table(phi, common.grid.x0_index(), 2 * K + 1);
    PhiTrigSet trig = build_trig(t, eps);

    CsvWriter w(out_path(out_dir, j.value("output", std::string("trig.csv"))));
    w.header({"node", "C_re", "C_im", "Ct_re", "Ct_im", "S_re", "S_im", "St_re", "St_im",
              "Ch_re", "Ch_im", "Cht_re", "Cht_im", "Sh_re", "Sh_im", "Sht_re", "Sht_im"});
    for (std::size_t i = 0; i < common.grid.size(); ++i)
        w.row({common.grid.node(i)},
              {trig.C[i], trig.Ct[i], trig.S[i], trig.St[i], trig.Ch[i], trig.Cht[i],
               trig.Sh[i], trig.Sht[i]});

    // phase-space pairs for the identity curves: (C*Ct, S*St), (Ch*Cht, Sh*Sht)
    CsvWriter pw(out_path(out_dir, j.value("phase_output", std::string("trig_phase.csv"))));
    pw.header({"node", "CCt_re", "CCt_im", "SSt_re", "SSt_im", "ChCht_re", "ChCht_im",
               "ShSht_re", "ShSht_im"});
    for (std::size_t i = 0; i < common.grid.size(); ++i)
        pw.row({common.grid.node(i)},
               {trig.C[i] * trig.Ct[i], trig.S[i] * trig.St[i], trig.Ch[i] * trig.Cht[i],
                trig.Sh[i] * trig.Sht[i]});
    return 0;
}

SampledFunction named_function(const std::string& name, const Grid& grid, std::size_t orders) {
    const std::size_t m = grid.size();
    cvec vals(m);
    std::vector<cvec> ders(orders, cvec(m));
    for (std::size_t i = 0; i < m; ++i) {
        const double x = grid.node(i);
        if (name == "exp") {
            vals[i] = std::exp(x);
            for (std::size_t k = 0; k < orders; ++k) ders[k][i] = std::exp(x);
        } else if (name == "sin") {
            const double table[4] = {std::sin(x), std::cos(x), -std::sin(x), -std::cos(x)};
            vals[i] = table[0];
            for (std::size_t k = 0; k < orders; ++k) ders[k][i] = table[(k + 1) % 4];
        } else {
            throw ConfigError("unknown taylor function '" + name + "' (use exp or sin)");
        }
    }
    return SampledFunction(grid, std::move(vals), std::move(ders));
}

int cmd_taylor(const json& cfg, const CommonConfig& common, const std::string& out_dir) {
    const json& j = cfg.value("taylor", json::object());
    reject_unknown_keys(j, {"function", "order", "output"}, "taylor");
    const std::size_t n = j.value("order", std::size_t{4});
    const std::string fname = j.value("function", std::string("exp"));
    SampledFunction phi = materialize_phi(common.phi_spec, common.grid);
    PowerTable t = build_power_table(phi, common.grid.x0_index(), n + 1);
    SampledFunction f = named_function(fname, common.grid, n + 2);
    TaylorExpansion te = taylor_expand(f, t, n);

    CsvWriter w(out_path(out_dir, j.value("output", std::string("taylor.csv"))));
    w.header({"node", "f_re", "f_im", "partial_re", "partial_im", "remainder_re",
              "remainder_im"});
    for (std::size_t i = 0; i < common.grid.size(); ++i)
        w.row({common.grid.node(i)}, {f.values[i], te.partial_sum[i], te.remainder[i]});
    CsvWriter cw(out_path(out_dir, "taylor_coefficients.csv"));
    cw.header({"k", "coefficient_re", "coefficient_im"});
    for (std::size_t k = 0; k <= n; ++k) cw.row({double(k)}, {te.coefficients[k]});
    return 0;
}

SturmLiouvilleProblem problem_from_config(const json& j, const CommonConfig& common,
                                          const std::string& where) {
    SampledFunction u0 =
        j.contains("u0") ? materialize(parse_func_spec(j.at("u0"), where + ".u0"), common.grid)
                         : materialize(FuncSpec::make_constant(cplx{1.0, 0.0}), common.grid);
    SampledFunction V =
        j.contains("potential")
            ? materialize(parse_func_spec(j.at("potential"), where + ".potential"), common.grid)
            : materialize(FuncSpec::make_constant(cplx{0.0, 0.0}), common.grid);
    return schrodinger_problem(V, u0, common.grid.x0_index());
}

int cmd_solve(const json& cfg, const CommonConfig& common, const std::string& out_dir) {
    const json& j = cfg.value("solve", json::object());
    reject_unknown_keys(j, {"lambda", "c1", "c2", "K", "u0", "potential", "output"}, "solve");
    const cplx lambda = j.contains("lambda") ? parse_complex(j.at("lambda"), "solve.lambda")
                                             : cplx{0.0, 0.0};
    const cplx c1 = j.contains("c1") ? parse_complex(j.at("c1"), "solve.c1") : cplx{1.0, 0.0};
    const cplx c2 = j.contains("c2") ? parse_complex(j.at("c2"), "solve.c2") : cplx{0.0, 0.0};
    const std::size_t K = j.value("K", std::size_t{30});
    SturmLiouvilleProblem prob = problem_from_config(j, common, "solve");
    SppsSeries series = build_spps(prob, K);
    SampledFunction u = evaluate_solution(series, lambda, c1, c2);

    CsvWriter w(out_path(out_dir, j.value("output", std::string("solution.csv"))));
    w.header({"node", "u_re", "u_im"});
    for (std::size_t i = 0; i < common.grid.size(); ++i)
        w.row({common.grid.node(i)}, {u.values[i]});
    return 0;
}

int cmd_eigen(const json& cfg, const CommonConfig& common, const std::string& out_dir) {
    const json& j = cfg.value("eigen", json::object());
    reject_unknown_keys(j,
                        {"K", "lambda_min", "lambda_max", "count", "segments", "u0", "potential",
                         "output"},
                        "eigen");
    const std::size_t K = j.value("K", std::size_t{30});
    const double lo = j.value("lambda_min", 0.0);
    const double hi = j.value("lambda_max", 30.0);
    const std::size_t count = j.value("count", std::size_t{5});
    const std::size_t segments = j.value("segments", std::size_t{0});
    SturmLiouvilleProblem prob = problem_from_config(j, common, "eigen");
    EigenResult r = dirichlet_eigenvalues_segmented(prob, K, segments, lo, hi, count);

    CsvWriter w(out_path(out_dir, j.value("output", std::string("eigenvalues.csv"))));
    w.header({"index", "lambda", "residual"});
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
        w.row({double(i), r.eigenvalues[i], r.residuals[i]});
    return 0;
}

int cmd_susy(const json& cfg, const CommonConfig& common, const std::string& out_dir) {
    const json& j = cfg.value("susy", json::object());
    reject_unknown_keys(j, {"psi0", "levels", "K", "lambda_min", "lambda_max", "output"},
                        "susy");
    SampledFunction psi0 =
        j.contains("psi0") ? materialize(parse_func_spec(j.at("psi0"), "susy.psi0"), common.grid)
                           : materialize(FuncSpec::gaussian(), common.grid);
    SusyPair pair = build_susy_pair(psi0);
    const std::size_t levels = j.value("levels", std::size_t{3});
    PartnerSpectrumReport rep =
        partner_spectrum_check(pair, levels, j.value("K", std::size_t{30}),
                               j.value("lambda_min", -0.5), j.value("lambda_max", 8.0));

    CsvWriter w(out_path(out_dir, j.value("output", std::string("susy_spectrum.csv"))));
    w.header({"level", "E1", "E2_shifted", "difference"});
    for (std::size_t n = 0; n < levels; ++n) {
        if (n >= rep.e2.size() || n + 1 >= rep.e1.size()) break;
        w.row({double(n), rep.e1[n + 1], rep.e2[n], rep.e2[n] - rep.e1[n + 1]});
    }
    CsvWriter pw(out_path(out_dir, "susy_potentials.csv"));
    pw.header({"node", "W_re", "W_im", "V1_re", "V1_im", "V2_re", "V2_im"});
    for (std::size_t i = 0; i < common.grid.size(); ++i)
        pw.row({common.grid.node(i)},
               {pair.W.values[i], pair.V1.values[i], pair.V2.values[i]});
    return 0;
}

int cmd_volterra(const json& cfg, const CommonConfig& common, const std::string& out_dir) {
    const json& j = cfg.value("volterra", json::object());
    reject_unknown_keys(j, {"psi0", "lambda", "series_tol", "output"}, "volterra");
    SampledFunction psi0 =
        j.contains("psi0")
            ? materialize(parse_func_spec(j.at("psi0"), "volterra.psi0"), common.grid)
            : materialize(FuncSpec::make_constant(cplx{1.0, 0.0}), common.grid);
    const cplx lambda = j.contains("lambda") ? parse_complex(j.at("lambda"), "volterra.lambda")
                                             : cplx{1.0, 0.0};
    ResolventSolution sol = resolvent_solution(psi0, lambda, common.grid.x0_index(),
                                               j.value("series_tol", 1e-12));

    CsvWriter w(out_path(out_dir, j.value("output", std::string("resolvent.csv"))));
    w.header({"node", "u1_re", "u1_im", "u2_re", "u2_im"});
    for (std::size_t i = 0; i < common.grid.size(); ++i)
        w.row({common.grid.node(i)}, {sol.u1_part[i], sol.u2_part[i]});
    return 0;
}

int cmd_verify(const json& cfg, const CommonConfig& common, const std::string& out_dir) {
    const json& j = cfg.value("verify", json::object());
    reject_unknown_keys(j, {"output"}, "verify");
    std::vector<CheckResult> results = run_verification(common.phi_spec, common.grid);

    std::ofstream out(out_path(out_dir, j.value("output", std::string("verify_report.csv"))));
    out << "check,residual,tolerance,passed\n";
    bool all_ok = true;
    for (const CheckResult& r : results) {
        out << r.name << ',' << format_double(r.residual) << ',' << format_double(r.tolerance)
            << ',' << (r.passed() ? 1 : 0) << '\n';
        std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << " residual=" << r.residual
                  << " tol=" << r.tolerance << '\n';
        all_ok = all_ok && r.passed();
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized-power-function toolkit"};
    app.require_subcommand(1);
    std::string config_path, out_dir;

    const std::vector<std::string> names{"powers", "trig",  "taylor",   "solve",
                                         "eigen",  "susy", "volterra", "verify"};
    std::vector<CLI::App*> subs;
    for (const std::string& n : names) {
        CLI::App* s = app.add_subcommand(n);
        s->add_option("--config", config_path, "JSON config path")->required();
        s->add_option("--out", out_dir, "output directory");
        subs.push_back(s);
    }
    CLI11_PARSE(app, argc, argv);

    try {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot open config: " + config_path);
        json cfg;
        try {
            cfg = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config parse error: ") + e.what());
        }
        CommonConfig common = parse_common(cfg);

        const std::string sub = app.get_subcommands().front()->get_name();
        if (sub == "powers") return cmd_powers(cfg, common, out_dir);
        if (sub == "trig") return cmd_trig(cfg, common, out_dir);
        if (sub == "taylor") return cmd_taylor(cfg, common, out_dir);
        if (sub == "solve") return cmd_solve(cfg, common, out_dir);
        if (sub == "eigen") return cmd_eigen(cfg, common, out_dir);
        if (sub == "susy") return cmd_susy(cfg, common, out_dir);
        if (sub == "volterra") return cmd_volterra(cfg, common, out_dir);
        if (sub == "verify") return cmd_verify(cfg, common, out_dir);
        throw ConfigError("unknown subcommand");
    } catch (const ConfigError& e) {
        std::cerr << "ConfigError: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "Error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "ConfigError: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
