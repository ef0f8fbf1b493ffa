// Command-line front end: config ingestion, orchestration, machine-readable
// reports and plot-data emission.
//
// Exit codes: 0 success (certified where a verdict applies), 2 all verdicts
// inconclusive, 3 invalid input / infeasible parameters / resource errors.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fsio/config.hpp"
#include "fsio/errors.hpp"

namespace {

using fsio::Json;

constexpr const char* kVersion = "0.1.0";

struct CommonOut {
    std::string out_path;
    bool timing = false;
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Json make_report(const std::string& command, Json inputs, Json outputs,
                 const fsio::QuadratureOptions* qopt, const CommonOut& common,
                 double seconds) {
    Json determinism{{"summation", "lexicographic-neumaier"}};
    if (qopt) {
        determinism["seed"] = qopt->calibration_seed;
        determinism["threads"] = qopt->threads;
    }
    Json j{{"command", command},
           {"version", kVersion},
           {"inputs", std::move(inputs)},
           {"outputs", std::move(outputs)},
           {"determinism", determinism}};
    if (common.timing) j["timing"] = Json{{"seconds", seconds}};
    return j;
}

void emit(const Json& report, const CommonOut& common) {
    if (common.out_path.empty())
        std::cout << report.dump(2) << "\n";
    else
        fsio::write_json_file(common.out_path, report);
}

fsio::Region parse_region(const Json& j) {
    if (j.is_null()) return fsio::Region::whole();
    const std::string type = j.at("type").get<std::string>();
    if (type == "whole") return fsio::Region::whole();
    if (type == "complement")
        return fsio::Region::complement_of(fsio::parse_word(j.at("word")));
    if (type == "annulus")
        return fsio::Region::annulus(fsio::parse_word(j.at("word")), j.at("k").get<int>());
    throw fsio::input_error("config: unknown region type '" + type + "'");
}

int run_check_unbounded(const std::string& config_path, const CommonOut& common) {
    const auto t0 = std::chrono::steady_clock::now();
    const Json cfg = fsio::load_json_file(config_path);
    const fsio::IfsConfig ic = fsio::parse_ifs(cfg.at("ifs"));
    const fsio::KernelSpec spec = fsio::parse_kernel(cfg.at("kernel"), ic.ifs.space);
    const fsio::SelfSimilarMeasure mu = fsio::make_natural_measure(ic.ifs, ic.dimension);
    fsio::QuadratureOptions qopt = fsio::parse_quadrature_options(
        cfg.contains("quadrature") ? cfg["quadrature"] : Json());
    const int sep_depth = cfg.contains("separation_depth")
                              ? cfg["separation_depth"].get<int>()
                              : 4;
    const int eta_terms = cfg.contains("eta_terms") ? cfg["eta_terms"].get<int>() : 3;
    std::vector<fsio::Word> words;
    for (const Json& w : cfg.at("words")) words.push_back(fsio::parse_word(w));

    const fsio::SeparationReport separation = fsio::separation_report(ic.ifs, sep_depth);
    const std::vector<fsio::CriterionReport> reports =
        fsio::check_unboundedness(ic.ifs, mu, spec, words, separation, qopt, eta_terms);

    bool any = false;
    Json out_words = Json::array();
    for (const fsio::CriterionReport& rep : reports) {
        any = any || rep.any_certified();
        out_words.push_back(fsio::criterion_to_json(rep));
    }
    Json inputs{{"config", cfg},
                {"kernel", fsio::kernel_to_json(spec)},
                {"dimension", ic.dimension},
                {"quadrature", fsio::quadrature_options_to_json(qopt)}};
    Json outputs{{"separation", fsio::separation_to_json(separation)},
                 {"words", out_words},
                 {"any_certified", any}};
    emit(make_report("check-unbounded", inputs, outputs, &qopt, common, seconds_since(t0)),
         common);
    return any ? 0 : 2;
}

int run_cantor_hn(int n, int N, const std::string& target_a, int resolution, double budget,
                  double c_q, double phi_tol, int threads, bool dry_run, bool include_grid,
                  const CommonOut& common) {
    const auto t0 = std::chrono::steady_clock::now();
    fsio::PipelineOptions popt;
    popt.resolution = resolution;
    popt.phi_tol = phi_tol;
    popt.c_Q = c_q;
    popt.node_budget = static_cast<std::uint64_t>(budget);
    popt.threads = threads;
    if (target_a != "auto") popt.target_a = std::stod(target_a);

    Json inputs{{"n", n},          {"N", N},
                {"target_a", target_a}, {"resolution", resolution},
                {"budget", popt.node_budget}, {"phi_tol", phi_tol},
                {"threads", threads}};
    if (dry_run) {
        Json outputs{{"stages",
                      Json::array({"parameters", "similarities", "separation", "phi",
                                   "sign-certificate", "criterion"})},
                     {"dry_run", true}};
        emit(make_report("cantor-hn", inputs, outputs, nullptr, common, seconds_since(t0)),
             common);
        return 0;
    }
    const fsio::PipelineReport report = fsio::removability_pipeline(n, N, popt);
    emit(make_report("cantor-hn", inputs, fsio::pipeline_to_json(report, include_grid),
                     nullptr, common, seconds_since(t0)),
         common);
    if (!report.dimension.feasible) return 3;
    return report.criterion_certified ? 0 : 2;
}

int run_integrate(const std::string& config_path, const CommonOut& common) {
    const auto t0 = std::chrono::steady_clock::now();
    const Json cfg = fsio::load_json_file(config_path);
    const fsio::IfsConfig ic = fsio::parse_ifs(cfg.at("ifs"));
    const fsio::KernelSpec spec = fsio::parse_kernel(cfg.at("kernel"), ic.ifs.space);
    const fsio::SelfSimilarMeasure mu = fsio::make_natural_measure(ic.ifs, ic.dimension);
    fsio::QuadratureOptions qopt = fsio::parse_quadrature_options(
        cfg.contains("quadrature") ? cfg["quadrature"] : Json());
    const fsio::Point x = cfg.at("x").get<std::vector<double>>();
    const fsio::Region region =
        parse_region(cfg.contains("region") ? cfg["region"] : Json());
    const fsio::IntegralEstimate est =
        fsio::integrate_region(ic.ifs, mu, spec, x, region, qopt);
    Json inputs{{"config", cfg},
                {"dimension", ic.dimension},
                {"quadrature", fsio::quadrature_options_to_json(qopt)}};
    emit(make_report("integrate", inputs, fsio::estimate_to_json(est), &qopt, common,
                     seconds_since(t0)),
         common);
    return 0;
}

int run_telescope(const std::string& config_path, const CommonOut& common) {
    const auto t0 = std::chrono::steady_clock::now();
    const Json cfg = fsio::load_json_file(config_path);
    const fsio::IfsConfig ic = fsio::parse_ifs(cfg.at("ifs"));
    const fsio::KernelSpec spec = fsio::parse_kernel(cfg.at("kernel"), ic.ifs.space);
    const fsio::SelfSimilarMeasure mu = fsio::make_natural_measure(ic.ifs, ic.dimension);
    fsio::QuadratureOptions qopt = fsio::parse_quadrature_options(
        cfg.contains("quadrature") ? cfg["quadrature"] : Json());
    const fsio::Word w = fsio::parse_word(cfg.at("word"));
    const int k_max = cfg.contains("k_max") ? cfg["k_max"].get<int>() : 3;
    const auto etas = fsio::telescope_eta(ic.ifs, mu, spec, w, k_max, qopt);
    Json rows = Json::array();
    for (const std::vector<double>& eta : etas) {
        Json row = Json::array();
        for (double v : eta) row.push_back(fsio::json_real(v));
        rows.push_back(row);
    }
    Json inputs{{"config", cfg},
                {"dimension", ic.dimension},
                {"quadrature", fsio::quadrature_options_to_json(qopt)}};
    emit(make_report("telescope", inputs, Json{{"eta", rows}}, &qopt, common,
                     seconds_since(t0)),
         common);
    return 0;
}

int run_maximal(const std::string& config_path, const CommonOut& common) {
    const auto t0 = std::chrono::steady_clock::now();
    const Json cfg = fsio::load_json_file(config_path);
    const fsio::IfsConfig ic = fsio::parse_ifs(cfg.at("ifs"));
    const fsio::KernelSpec spec = fsio::parse_kernel(cfg.at("kernel"), ic.ifs.space);
    const fsio::SelfSimilarMeasure mu = fsio::make_natural_measure(ic.ifs, ic.dimension);
    fsio::QuadratureOptions qopt = fsio::parse_quadrature_options(
        cfg.contains("quadrature") ? cfg["quadrature"] : Json());
    const fsio::Point p = cfg.at("point").get<std::vector<double>>();
    const std::vector<double> grid = cfg.at("eps_grid").get<std::vector<double>>();
    const fsio::MaximalEstimate est =
        fsio::maximal_operator_estimate(ic.ifs, mu, spec, p, grid, qopt);
    Json per = Json::array();
    for (double v : est.per_eps_norm) per.push_back(fsio::json_real(v));
    Json inputs{{"config", cfg},
                {"dimension", ic.dimension},
                {"quadrature", fsio::quadrature_options_to_json(qopt)}};
    emit(make_report("maximal", inputs,
                     Json{{"estimate", fsio::json_real(est.estimate)}, {"per_eps", per}},
                     &qopt, common, seconds_since(t0)),
         common);
    return 0;
}

int run_phi_solve(int n, int N, const std::string& r_arg, int resolution, double tol,
                  bool include_grid, const CommonOut& common) {
    const auto t0 = std::chrono::steady_clock::now();
    double r = 0.0;
    if (r_arg == "auto") {
        const fsio::DimensionSolve solve = fsio::solve_r_for_dimension(n, N, 2.0 * n + 1.0);
        if (!solve.feasible) {
            std::cerr << "phi-solve: parameters infeasible for dimension 2n+1\n";
            return 3;
        }
        r = solve.r;
    } else {
        r = std::stod(r_arg);
    }
    const fsio::CantorParams params{n, N, r};
    const fsio::PhiProblem problem = fsio::make_phi_problem(params);
    const fsio::PhiField field = fsio::solve_phi(problem, resolution, tol);
    const fsio::PhiVerifyReport verify = fsio::verify_phi(field, problem, tol);
    Json inputs{{"n", n}, {"N", N}, {"r", r}, {"resolution", resolution}, {"tol", tol}};
    Json outputs{{"phi", fsio::phi_field_to_json(field, include_grid)},
                 {"verify", fsio::phi_verify_to_json(verify)}};
    emit(make_report("phi-solve", inputs, outputs, nullptr, common, seconds_since(t0)),
         common);
    return verify.pass ? 0 : 2;
}

int run_dim_solve(const std::string& ratios_arg, int n, int N, const std::string& target_a,
                  const CommonOut& common) {
    const auto t0 = std::chrono::steady_clock::now();
    Json inputs, outputs;
    if (!ratios_arg.empty()) {
        std::vector<double> ratios;
        std::stringstream ss(ratios_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) ratios.push_back(std::stod(tok));
        const double s = fsio::similarity_dimension(ratios);
        inputs = Json{{"ratios", ratios}};
        outputs = Json{{"dimension", s}};
    } else {
        const double a = target_a == "auto" ? 2.0 * n + 1.0 : std::stod(target_a);
        const fsio::DimensionSolve solve = fsio::solve_r_for_dimension(n, N, a);
        Json checks = Json::array();
        for (const fsio::FeasibilityCheck& c : solve.checks)
            checks.push_back(Json{{"name", c.name},
                                  {"lhs", fsio::json_real(c.lhs)},
                                  {"rhs", fsio::json_real(c.rhs)},
                                  {"pass", c.pass}});
        inputs = Json{{"n", n}, {"N", N}, {"target_a", a}};
        outputs = Json{{"r", solve.r}, {"feasible", solve.feasible}, {"checks", checks}};
    }
    emit(make_report("dim-solve", inputs, outputs, nullptr, common, seconds_since(t0)),
         common);
    return 0;
}

int run_emit_plotdata(const std::string& config_path, const std::string& plot,
                      const std::string& out_dir) {
    const Json cfg = fsio::load_json_file(config_path);
    std::filesystem::create_directories(out_dir);
    const std::string path = out_dir + "/" + plot + ".csv";
    std::ofstream csv(path);
    if (!csv) throw fsio::input_error("cannot write " + path);
    csv.precision(17);

    if (plot == "eta") {
        const fsio::IfsConfig ic = fsio::parse_ifs(cfg.at("ifs"));
        const fsio::KernelSpec spec = fsio::parse_kernel(cfg.at("kernel"), ic.ifs.space);
        const fsio::SelfSimilarMeasure mu = fsio::make_natural_measure(ic.ifs, ic.dimension);
        const fsio::QuadratureOptions qopt = fsio::parse_quadrature_options(
            cfg.contains("quadrature") ? cfg["quadrature"] : Json());
        const fsio::Word w = fsio::parse_word(cfg.at("word"));
        const int k_max = cfg.contains("k_max") ? cfg["k_max"].get<int>() : 3;
        const auto etas = fsio::telescope_eta(ic.ifs, mu, spec, w, k_max, qopt);
        csv << "k";
        for (std::size_t c = 0; c < etas[0].size(); ++c) csv << ",component_" << c;
        csv << "\n";
        for (std::size_t k = 0; k < etas.size(); ++k) {
            csv << k;
            for (double v : etas[k]) csv << "," << v;
            csv << "\n";
        }
    } else if (plot == "eps-sweep") {
        const fsio::IfsConfig ic = fsio::parse_ifs(cfg.at("ifs"));
        const fsio::KernelSpec spec = fsio::parse_kernel(cfg.at("kernel"), ic.ifs.space);
        const fsio::SelfSimilarMeasure mu = fsio::make_natural_measure(ic.ifs, ic.dimension);
        const fsio::QuadratureOptions qopt = fsio::parse_quadrature_options(
            cfg.contains("quadrature") ? cfg["quadrature"] : Json());
        const fsio::Point p = cfg.at("point").get<std::vector<double>>();
        const std::vector<double> grid = cfg.at("eps_grid").get<std::vector<double>>();
        const fsio::MaximalEstimate est =
            fsio::maximal_operator_estimate(ic.ifs, mu, spec, p, grid, qopt);
        csv << "eps,truncated_norm\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
            csv << grid[i] << "," << est.per_eps_norm[i] << "\n";
    } else if (plot == "phi-grid") {
        const int n = cfg.at("n").get<int>();
        const int N = cfg.at("N").get<int>();
        double r;
        if (cfg.contains("r"))
            r = cfg["r"].get<double>();
        else {
            const fsio::DimensionSolve solve =
                fsio::solve_r_for_dimension(n, N, 2.0 * n + 1.0);
            if (!solve.feasible) throw fsio::input_error("phi-grid: infeasible parameters");
            r = solve.r;
        }
        const int resolution = cfg.contains("resolution") ? cfg["resolution"].get<int>() : 64;
        const double tol = cfg.contains("tol") ? cfg["tol"].get<double>() : 1e-10;
        const fsio::CantorParams params{n, N, r};
        const fsio::PhiField field =
            fsio::solve_phi(fsio::make_phi_problem(params), resolution, tol);
        csv << "index";
        for (int axis = 0; axis < 2 * n; ++axis) csv << ",w_" << axis;
        csv << ",phi\n";
        std::vector<double> w(2 * n);
        for (std::size_t idx = 0; idx < field.values.size(); ++idx) {
            std::size_t digits = idx;
            for (int axis = 0; axis < 2 * n; ++axis) {
                w[axis] = static_cast<double>(digits % resolution) / (resolution - 1);
                digits /= resolution;
            }
            csv << idx;
            for (int axis = 0; axis < 2 * n; ++axis) csv << "," << w[axis];
            csv << "," << field.values[idx] << "\n";
        }
    } else if (plot == "depth-convergence") {
        const fsio::IfsConfig ic = fsio::parse_ifs(cfg.at("ifs"));
        const fsio::KernelSpec spec = fsio::parse_kernel(cfg.at("kernel"), ic.ifs.space);
        const fsio::SelfSimilarMeasure mu = fsio::make_natural_measure(ic.ifs, ic.dimension);
        fsio::QuadratureOptions qopt = fsio::parse_quadrature_options(
            cfg.contains("quadrature") ? cfg["quadrature"] : Json());
        const fsio::Point x = cfg.at("x").get<std::vector<double>>();
        const fsio::Region region =
            parse_region(cfg.contains("region") ? cfg["region"] : Json());
        const int max_depth = cfg.contains("max_depth") ? cfg["max_depth"].get<int>() : 6;
        csv << "depth,nodes";
        const int comps = spec.num_components();
        for (int c = 0; c < comps; ++c) csv << ",component_" << c;
        csv << ",error_indicator\n";
        for (int depth = 1; depth <= max_depth; ++depth) {
            qopt.depth = depth;
            qopt.mass_cutoff = 0.0;
            const fsio::IntegralEstimate est =
                fsio::integrate_region(ic.ifs, mu, spec, x, region, qopt);
            csv << depth << "," << est.nodes;
            for (double v : est.value) csv << "," << v;
            csv << "," << (est.error_indicator.empty() ? 0.0 : est.error_indicator[0]) << "\n";
        }
    } else {
        throw fsio::input_error("unknown plot kind '" + plot + "'");
    }
    std::cout << path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractal-sio: singular integrals of homogeneous kernels over self-similar "
                 "sets in Heisenberg and Euclidean groups"};
    app.require_subcommand(1);
    CommonOut common;

    // check-unbounded
    auto* cmd_check = app.add_subcommand(
        "check-unbounded", "certify the nonzero-integral unboundedness criterion");
    std::string check_config;
    cmd_check->add_option("--config", check_config, "JSON config with ifs/kernel/words")
        ->required();
    cmd_check->add_option("--out", common.out_path, "report JSON path (default stdout)");
    cmd_check->add_flag("--timing", common.timing, "include wall-clock timing in the report");

    // cantor-hn
    auto* cmd_cantor =
        app.add_subcommand("cantor-hn", "run the removability-evidence pipeline");
    int cn = 1, cN = 18, cres = 64, cthreads = 1;
    double cbudget = 1e6, cc_q = 0.0, ctol = 1e-10;
    std::string ctarget = "auto";
    bool cdry = false, cgrid = false;
    cmd_cantor->add_option("--n", cn, "Heisenberg index")->check(CLI::PositiveNumber);
    cmd_cantor->add_option("--N", cN, "grid count (even)")->check(CLI::PositiveNumber);
    cmd_cantor->add_option("--target-a", ctarget, "dimension target or 'auto' (=2n+1)");
    cmd_cantor->add_option("--resolution", cres, "phi grid points per axis");
    cmd_cantor->add_option("--budget", cbudget, "node budget for the antichain");
    cmd_cantor->add_option("--c-q", cc_q, "kernel constant c_Q (default 2-Q)");
    cmd_cantor->add_option("--phi-tol", ctol, "phi residual tolerance");
    cmd_cantor->add_option("--threads", cthreads, "worker threads for the quadrature");
    cmd_cantor->add_flag("--dry-run", cdry, "list stages and exit");
    cmd_cantor->add_flag("--include-grid", cgrid, "embed the phi grid in the report");
    cmd_cantor->add_option("--out", common.out_path, "report JSON path (default stdout)");
    cmd_cantor->add_flag("--timing", common.timing, "include wall-clock timing");

    // integrate / telescope / maximal
    auto* cmd_integrate = app.add_subcommand("integrate", "kernel quadrature over a region");
    std::string integrate_config;
    cmd_integrate->add_option("--config", integrate_config, "JSON config")->required();
    cmd_integrate->add_option("--out", common.out_path, "report JSON path");
    cmd_integrate->add_flag("--timing", common.timing, "include timing");

    auto* cmd_telescope =
        app.add_subcommand("telescope", "annular integrals eta_k along a word");
    std::string telescope_config;
    cmd_telescope->add_option("--config", telescope_config, "JSON config")->required();
    cmd_telescope->add_option("--out", common.out_path, "report JSON path");
    cmd_telescope->add_flag("--timing", common.timing, "include timing");

    auto* cmd_maximal =
        app.add_subcommand("maximal", "maximal truncated operator over an eps grid");
    std::string maximal_config;
    cmd_maximal->add_option("--config", maximal_config, "JSON config")->required();
    cmd_maximal->add_option("--out", common.out_path, "report JSON path");
    cmd_maximal->add_flag("--timing", common.timing, "include timing");

    // phi-solve
    auto* cmd_phi = app.add_subcommand("phi-solve", "solve the separating-function equation");
    int pn = 1, pN = 18, pres = 64;
    double ptol = 1e-10;
    std::string pr = "auto";
    bool pgrid = false;
    cmd_phi->add_option("--n", pn, "Heisenberg index");
    cmd_phi->add_option("--N", pN, "grid count (even)");
    cmd_phi->add_option("--r", pr, "ratio or 'auto' (solve for dimension 2n+1)");
    cmd_phi->add_option("--resolution", pres, "grid points per axis");
    cmd_phi->add_option("--tol", ptol, "residual tolerance");
    cmd_phi->add_flag("--include-grid", pgrid, "embed grid values in the report");
    cmd_phi->add_option("--out", common.out_path, "report JSON path");
    cmd_phi->add_flag("--timing", common.timing, "include timing");

    // dim-solve
    auto* cmd_dim = app.add_subcommand("dim-solve", "similarity dimension / ratio solving");
    std::string dratios;
    int dn = 1, dN = 18;
    std::string dtarget = "auto";
    cmd_dim->add_option("--ratios", dratios, "comma-separated ratios for the Moran equation");
    cmd_dim->add_option("--n", dn, "Heisenberg index (family mode)");
    cmd_dim->add_option("--N", dN, "grid count (family mode)");
    cmd_dim->add_option("--target-a", dtarget, "dimension target or 'auto'");
    cmd_dim->add_option("--out", common.out_path, "report JSON path");
    cmd_dim->add_flag("--timing", common.timing, "include timing");

    // emit-plotdata
    auto* cmd_plot = app.add_subcommand("emit-plotdata", "CSV series for plotting");
    std::string plot_config, plot_kind, plot_dir = ".";
    cmd_plot->add_option("--config", plot_config, "JSON config")->required();
    cmd_plot
        ->add_option("--plot", plot_kind,
                     "one of: eta, eps-sweep, phi-grid, depth-convergence")
        ->required();
    cmd_plot->add_option("--out-dir", plot_dir, "output directory");

    try {
        app.parse(argc, argv);
        if (cmd_check->parsed()) return run_check_unbounded(check_config, common);
        if (cmd_cantor->parsed())
            return run_cantor_hn(cn, cN, ctarget, cres, cbudget, cc_q, ctol, cthreads, cdry,
                                 cgrid, common);
        if (cmd_integrate->parsed()) return run_integrate(integrate_config, common);
        if (cmd_telescope->parsed()) return run_telescope(telescope_config, common);
        if (cmd_maximal->parsed()) return run_maximal(maximal_config, common);
        if (cmd_phi->parsed()) return run_phi_solve(pn, pN, pr, pres, ptol, pgrid, common);
        if (cmd_dim->parsed()) return run_dim_solve(dratios, dn, dN, dtarget, common);
        if (cmd_plot->parsed()) return run_emit_plotdata(plot_config, plot_kind, plot_dir);
        return 3;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    } catch (const fsio::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const fsio::budget_error& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
