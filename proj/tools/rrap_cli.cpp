// Command-line front end: run experiments, tabulate metrics, factorial gaps,
// lattice oracle fronts and plot data.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "rrap/errors.hpp"
#include "rrap/harness.hpp"
#include "rrap/metrics.hpp"
#include "rrap/oracle.hpp"
#include "rrap/problem_io.hpp"

namespace fs = std::filesystem;
using namespace rrap;

namespace {

int env_workers() {
    if (const char* s = std::getenv("RRAP_WORKERS")) {
        try {
            return std::stoi(s);
        } catch (const std::exception&) {
            throw ConfigError(std::string("RRAP_WORKERS is not an integer: ") + s);
        }
    }
    return 1;
}

nlohmann::json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    return nlohmann::json::parse(in);
}

void write_front_csv(const fs::path& path, const OracleResult& res) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "f_r,f_c,genes\n";
    for (std::size_t i = 0; i < res.front.points.size(); ++i) {
        out << format_double(res.front.points[i].f_r) << ',' << format_double(res.front.points[i].f_c) << ',';
        const auto& g = res.front_solutions[i].genes;
        for (std::size_t j = 0; j < g.size(); ++j) out << (j ? ";" : "") << format_double(g[j]);
        out << '\n';
    }
}

struct RunArgs {
    fs::path config_file;
    std::vector<int> problems;
    std::vector<std::string> algorithms;
    std::optional<int> runs, sol, gen, rep, workers;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out, formula_mode;
    std::optional<double> r_lb;
    bool fixed_cg = false;
};

int cmd_run(const RunArgs& a) {
    ExperimentConfig c;
    if (!a.config_file.empty()) c = ExperimentConfig::from_json(read_json(a.config_file));
    c.workers = env_workers();
    if (!a.problems.empty()) c.problems = a.problems;
    if (!a.algorithms.empty()) c.algorithms = a.algorithms;
    if (c.algorithms.empty()) c.algorithms = algorithm_names();
    if (a.runs) c.n_run = *a.runs;
    if (a.sol) c.n_sol = *a.sol;
    if (a.gen) c.n_gen = *a.gen;
    if (a.rep) c.n_rep = *a.rep;
    if (a.seed) c.base_seed = *a.seed;
    if (a.out) c.output_dir = *a.out;
    if (a.workers) c.workers = *a.workers;
    if (a.r_lb) c.r_lb = *a.r_lb;
    if (a.formula_mode) c.formula_mode = parse_formula_mode(*a.formula_mode);
    if (a.fixed_cg) c.adaptive_cg = false;
    const auto manifest = run_experiment(c);
    std::cout << "wrote " << manifest.artifacts.size() << " files under " << c.output_dir.string() << '\n';
    return 0;
}

TabulateOptions tab_options(const std::string& mode, bool normalize) {
    TabulateOptions t;
    if (mode == "pooled") t.mode = MetricsMode::pooled;
    else if (mode == "per_run_mean") t.mode = MetricsMode::per_run_mean;
    else throw ConfigError("unknown metrics mode '" + mode + "'");
    t.distance.normalize = normalize;
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bi-objective reliability-redundancy allocation solvers"};
    app.require_subcommand(1);

    RunArgs ra;
    auto* run = app.add_subcommand("run", "Run seeded experiments and write per-run records");
    run->add_option("--config", ra.config_file, "JSON experiment configuration")->check(CLI::ExistingFile);
    run->add_option("--problem", ra.problems, "Benchmark ids (1-4)");
    run->add_option("--algo", ra.algorithms, "Algorithms (MOSSO-xyz, nsga2, mopso)");
    run->add_option("--runs", ra.runs);
    run->add_option("--sol", ra.sol, "Population size");
    run->add_option("--gen", ra.gen, "Generations");
    run->add_option("--rep", ra.rep, "Repository capacity");
    run->add_option("--seed", ra.seed, "Base seed");
    run->add_option("--out", ra.out, "Output directory");
    run->add_option("--workers", ra.workers, "Worker threads (default RRAP_WORKERS or 1)");
    run->add_option("--r-lb", ra.r_lb, "Lower reliability bound and penalty floor");
    run->add_option("--formula-mode", ra.formula_mode, "standard_active or literal");
    run->add_flag("--fixed-cg", ra.fixed_cg, "Disable the adaptive gBest band");

    fs::path results, out_dir;
    std::string mode = "pooled";
    bool normalize = false;
    auto* metrics = app.add_subcommand("metrics", "Tabulate N_lns, N_gns, N_inf, GD and SP");
    metrics->add_option("--results", results)->required();
    metrics->add_option("--out", out_dir)->required();
    metrics->add_option("--mode", mode, "pooled or per_run_mean");
    metrics->add_flag("--normalize", normalize, "Range-normalise objectives before distances");

    std::string denominator = "larger_level";
    bool sp_lower = false;
    auto* factorial = app.add_subcommand("factorial", "Two-level factor gaps over the eight MOSSO variants");
    factorial->add_option("--results", results)->required();
    factorial->add_option("--out", out_dir)->required();
    factorial->add_option("--mode", mode);
    factorial->add_option("--denominator", denominator, "larger_level or better_level");
    factorial->add_flag("--sp-lower-is-better", sp_lower);

    int problem_id = 1;
    fs::path problem_file, front_out, dump_out;
    std::vector<int> n_values{1, 2, 3};
    std::vector<double> r_values{0.75, 0.8, 0.85, 0.9, 0.95};
    std::uint64_t ceiling = 10'000'000;
    auto* oracle = app.add_subcommand("oracle", "Brute-force lattice reference front");
    oracle->add_option("--problem", problem_id);
    oracle->add_option("--problem-file", problem_file)->check(CLI::ExistingFile);
    oracle->add_option("--n-values", n_values);
    oracle->add_option("--r-values", r_values);
    oracle->add_option("--ceiling", ceiling);
    oracle->add_option("--out", front_out)->required();
    oracle->add_option("--dump", dump_out, "CSV of every lattice point");

    auto* plot = app.add_subcommand("plot-data", "Per-algorithm scatter CSVs plus the reference front");
    plot->add_option("--results", results)->required();
    plot->add_option("--out", out_dir)->required();

    auto* verify = app.add_subcommand("verify", "Check record digests against manifest.json");
    verify->add_option("--results", results)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(ra);

        if (*metrics) {
            const auto rows = write_metrics(results, out_dir, tab_options(mode, normalize));
            std::cout << "wrote " << (out_dir / "metrics.csv").string() << '\n';
            return rows.empty() ? 1 : 0;
        }

        if (*factorial) {
            GapOptions g;
            g.sp_higher_is_better = !sp_lower;
            if (denominator == "larger_level") g.denominator = GapDenominator::larger_level;
            else if (denominator == "better_level") g.denominator = GapDenominator::better_level;
            else throw ConfigError("unknown denominator '" + denominator + "'");
            const auto by_problem = write_metrics(results, out_dir, tab_options(mode, false));
            nlohmann::json doc = nlohmann::json::array();
            for (const auto& [pid, rows] : by_problem) {
                doc.push_back(gap_table_json(factorial_gap(rows, g), g, pid));
            }
            std::ofstream out(out_dir / "factorial_gaps.json", std::ios::binary);
            out << doc.dump(1) << '\n';
            std::cout << "wrote " << (out_dir / "factorial_gaps.json").string() << '\n';
            return 0;
        }

        if (*oracle) {
            const auto problem = problem_file.empty() ? builtin_problem(problem_id) : load_problem(problem_file);
            auto lattice = LatticeSpec::uniform(problem.n_sub(), n_values, r_values);
            lattice.ceiling = ceiling;
            const auto res = oracle_front(problem, lattice, !dump_out.empty());
            write_front_csv(front_out, res);
            if (!dump_out.empty()) {
                std::ofstream d(dump_out, std::ios::binary);
                d << "index,f_r,f_c,r_s,g_v,g_c,g_w,feasible\n";
                for (const auto& p : res.dump) {
                    const auto& e = p.evaluation;
                    d << p.index << ',' << format_double(e.f_r) << ',' << format_double(e.f_c) << ','
                      << format_double(e.r_s) << ',' << format_double(e.g_v) << ',' << format_double(e.g_c) << ','
                      << format_double(e.g_w) << ',' << (e.feasible ? 1 : 0) << '\n';
                }
            }
            std::cout << res.evaluated << " points, " << res.feasible << " feasible, " << res.front.points.size()
                      << " on the front\n";
            return 0;
        }

        if (*plot) {
            for (const auto& [pid, groups] : load_results(results)) {
                std::vector<RunRecord> pooled;
                for (const auto& g : groups) pooled.insert(pooled.end(), g.records.begin(), g.records.end());
                std::optional<ReferenceFront> ref;
                try {
                    ref = build_simulated_front(pooled);
                } catch (const EmptyFrontError&) {
                }
                emit_plot_data(groups, ref, out_dir / ("problem_" + std::to_string(pid)));
            }
            return 0;
        }

        if (*verify) {
            const auto bad = verify_manifest(results);
            for (const auto& p : bad) std::cerr << "digest mismatch: " << p << '\n';
            return bad.empty() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
