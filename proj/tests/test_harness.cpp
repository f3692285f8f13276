#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "rrap/errors.hpp"
#include "rrap/harness.hpp"

using namespace rrap;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("rrap_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    return dir;
}

ExperimentConfig small_config(const fs::path& out) {
    ExperimentConfig c;
    c.problems = {1, 4};
    c.algorithms = {"MOSSO-011", "mopso", "nsga2"};
    c.n_run = 3;
    c.n_sol = 12;
    c.n_gen = 8;
    c.output_dir = out;
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(Names, CanonicalOrder) {
    const auto& names = algorithm_names();
    ASSERT_EQ(names.size(), 10u);
    EXPECT_EQ(names.front(), "MOSSO-000");
    EXPECT_EQ(names[7], "MOSSO-111");
    EXPECT_EQ(names[8], "mopso");
    EXPECT_EQ(names[9], "nsga2");
    EXPECT_EQ(algorithm_index("nsga2"), 9u);
    EXPECT_FALSE(is_algorithm_name("spea2"));
    EXPECT_THROW(algorithm_index("spea2"), ConfigError);
}

TEST(Seeds, DeterministicAndInjective) {
    EXPECT_EQ(derive_seed(1, 1, "nsga2", 0), derive_seed(1, 1, "nsga2", 0));
    std::set<std::uint64_t> seen;
    for (int p = 1; p <= 4; ++p)
        for (const auto& a : algorithm_names())
            for (int r = 0; r < 60; ++r) EXPECT_TRUE(seen.insert(derive_seed(20240101, p, a, r)).second);
    EXPECT_NE(derive_seed(1, 1, "nsga2", 0), derive_seed(2, 1, "nsga2", 0));
    EXPECT_THROW(derive_seed(1, 1, "nsga2", -1), ConfigError);
}

TEST(Config, JsonRoundTripAndValidation) {
    ExperimentConfig c;
    c.algorithms = {"MOSSO-001", "nsga2"};
    c.n_rep = 40;
    c.formula_mode = FormulaMode::literal;
    c.problem_overrides = {{"n_ub", 3}};
    const auto d = ExperimentConfig::from_json(c.to_json());
    EXPECT_EQ(d.algorithms, c.algorithms);
    EXPECT_EQ(d.repository_size(), 40);
    EXPECT_EQ(d.formula_mode, FormulaMode::literal);
    EXPECT_EQ(d.problem_overrides, c.problem_overrides);
    EXPECT_NO_THROW(d.validate());

    auto bad = c;
    bad.algorithms = {"spea2"};
    EXPECT_THROW(bad.validate(), ConfigError);
    bad = c;
    bad.problems = {5};
    EXPECT_THROW(bad.validate(), ConfigError);
    bad = c;
    bad.n_gen = 0;
    EXPECT_THROW(bad.validate(), ConfigError);
    bad = c;
    bad.workers = 0;
    EXPECT_THROW(bad.validate(), ConfigError);
    ExperimentConfig empty;
    EXPECT_THROW(empty.validate(), ConfigError);
}

TEST(Config, ProblemSetup) {
    ExperimentConfig c;
    c.r_lb = 0.7;
    c.problem_overrides = {{"n_ub", 3}, {"r_ub", 0.95}};
    const auto p = configured_problem(c, 2);
    EXPECT_EQ(p.r_lb, 0.7);
    EXPECT_EQ(p.reliability_floor, 0.7);
    EXPECT_EQ(p.n_ub, 3);
    EXPECT_EQ(p.r_ub, 0.95);
    EXPECT_EQ(p.structure, SystemStructure::series_parallel);
}

TEST(Records, CsvRoundTripIsExact) {
    const auto dir = scratch("records");
    fs::create_directories(dir);
    ExperimentConfig c = small_config(dir);
    const auto p = configured_problem(c, 1);
    auto rec = run_algorithm(p, "MOSSO-000", c, 42);
    rec.run_index = 7;
    const auto [csv, json] = save_record(rec, dir / "r");
    const auto back = load_record(csv, json);
    EXPECT_EQ(back.algorithm, rec.algorithm);
    EXPECT_EQ(back.run_index, 7);
    EXPECT_EQ(back.seed, 42u);
    EXPECT_EQ(back.trace, rec.trace);
    ASSERT_EQ(back.entries.size(), rec.entries.size());
    for (std::size_t k = 0; k < rec.entries.size(); ++k) {
        EXPECT_EQ(back.entries[k].evaluation, rec.entries[k].evaluation);
    }
    fs::remove_all(dir);
}

TEST(Experiment, WritesVerifiableManifest) {
    const auto dir = scratch("manifest");
    const auto m = run_experiment(small_config(dir));
    EXPECT_EQ(m.artifacts.size(), 2u * 3 * 3 * 2);
    EXPECT_TRUE(fs::exists(dir / "manifest.json"));
    EXPECT_TRUE(fs::exists(dir / "timings.csv"));
    EXPECT_TRUE(fs::exists(dir / "problem_4" / "nsga2" / "run_002.csv"));
    EXPECT_TRUE(verify_manifest(dir).empty());

    std::ofstream(dir / "problem_1" / "mopso" / "run_000.csv", std::ios::app) << "tampered\n";
    EXPECT_EQ(verify_manifest(dir), (std::vector<std::string>{"problem_1/mopso/run_000.csv"}));
    fs::remove_all(dir);
}

TEST(Experiment, OutputsIndependentOfWorkerCount) {
    const auto a = scratch("w1"), b = scratch("w4");
    auto ca = small_config(a);
    auto cb = small_config(b);
    cb.workers = 4;
    const auto ma = run_experiment(ca);
    const auto mb = run_experiment(cb);
    ASSERT_EQ(ma.artifacts.size(), mb.artifacts.size());
    for (std::size_t k = 0; k < ma.artifacts.size(); ++k) {
        EXPECT_EQ(ma.artifacts[k].path, mb.artifacts[k].path);
        EXPECT_EQ(ma.artifacts[k].sha256, mb.artifacts[k].sha256);
    }
    EXPECT_EQ(slurp(a / "manifest.json"), slurp(b / "manifest.json"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Experiment, LoadMetricsAndPlotData) {
    const auto dir = scratch("load");
    auto config = small_config(dir);
    config.n_sol = 30;
    config.n_gen = 40;
    run_experiment(config);
    const auto res = load_results(dir);
    ASSERT_EQ(res.size(), 2u);
    const auto& groups = res.at(1);
    ASSERT_EQ(groups.size(), 3u);
    EXPECT_EQ(groups[0].algorithm, "MOSSO-011");
    EXPECT_EQ(groups[1].algorithm, "mopso");
    EXPECT_EQ(groups[2].algorithm, "nsga2");
    for (const auto& g : groups) {
        ASSERT_EQ(g.records.size(), 3u);
        for (int r = 0; r < 3; ++r) EXPECT_EQ(g.records[r].run_index, r);
    }

    const auto rows = write_metrics(dir, dir / "metrics");
    const auto csv = slurp(dir / "metrics" / "metrics.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "problem,algorithm,runs,n_lns,n_gns,n_inf,gd,sp");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 6);
    for (const auto& [pid, rs] : rows) {
        for (std::size_t k = 0; k < rs.size(); ++k) {
            std::size_t total = 0;
            for (const auto& rec : res.at(pid)[k].records) total += rec.entries.size();
            EXPECT_EQ(rs[k].n_lns + rs[k].n_inf, total);
        }
    }

    const auto ref = build_simulated_front([&] {
        std::vector<RunRecord> all;
        for (const auto& g : groups) all.insert(all.end(), g.records.begin(), g.records.end());
        return all;
    }());
    const auto files = emit_plot_data(groups, ref, dir / "plot");
    EXPECT_EQ(files.size(), 4u);
    const auto text = slurp(dir / "plot" / "nsga2.csv");
    EXPECT_EQ(text.substr(0, text.find('\n')), "f_r,f_c,r_s,g_c,run_id");
    EXPECT_TRUE(fs::exists(dir / "plot" / "reference.csv"));
    fs::remove_all(dir);
}

TEST(Experiment, MissingDirectoryIsAnError) {
    EXPECT_ANY_THROW(load_results("/nonexistent/rrap/results"));
    EXPECT_ANY_THROW(verify_manifest("/nonexistent/rrap/results"));
}

TEST(Digest, KnownVector) {
    const auto dir = scratch("sha");
    fs::create_directories(dir);
    std::ofstream(dir / "abc.txt", std::ios::binary) << "abc";
    EXPECT_EQ(sha256_file(dir / "abc.txt"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    fs::remove_all(dir);
}
