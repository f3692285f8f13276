#pragma once

// Experiment runner: configuration, seed derivation, parallel execution,
// persistence with a digest manifest, result loading and plot-data emission.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rrap/metrics.hpp"
#include "rrap/model.hpp"
#include "rrap/run_record.hpp"

namespace rrap {

/// Canonical algorithm order: MOSSO-000 ... MOSSO-111, mopso, nsga2.
const std::vector<std::string>& algorithm_names();
bool is_algorithm_name(std::string_view name);
std::size_t algorithm_index(std::string_view name);

struct ExperimentConfig {
    std::vector<int> problems{1};
    std::vector<std::string> algorithms;
    int n_run = 50;
    int n_sol = 100;
    int n_gen = 1000;
    std::optional<int> n_rep;  ///< defaults to n_sol
    double r_lb = 0.75;
    FormulaMode formula_mode = FormulaMode::standard_active;
    bool adaptive_cg = true;
    std::uint64_t base_seed = 20240101;
    std::filesystem::path output_dir = "results";
    int workers = 1;
    /// Fields merged over every built-in problem (e.g. {"n_ub": 3}).
    nlohmann::json problem_overrides = nlohmann::json::object();

    [[nodiscard]] int repository_size() const { return n_rep.value_or(n_sol); }
    /// Throws ConfigError.
    void validate() const;
    [[nodiscard]] nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
};

/// Bijective mix of the packed (problem, algorithm, run) tuple under a base seed.
std::uint64_t derive_seed(std::uint64_t base_seed, int problem_id, std::string_view algorithm, int run_index);

RrapProblem configured_problem(const ExperimentConfig& config, int problem_id);

/// Runs one algorithm once. The record's run_index is set by the caller.
RunRecord run_algorithm(const RrapProblem& problem, std::string_view algorithm, const ExperimentConfig& config,
                        std::uint64_t seed);

std::filesystem::path record_stem(const std::filesystem::path& root, int problem_id, std::string_view algorithm,
                                  int run_index);

std::string sha256_file(const std::filesystem::path& path);

struct ManifestArtifact {
    std::string path;  ///< relative to the output directory
    std::string sha256;
};

struct Manifest {
    nlohmann::json config;
    std::vector<ManifestArtifact> artifacts;
};

/// Executes every (problem, algorithm, run) task on config.workers threads and
/// writes the records plus manifest.json and timings.csv under output_dir.
/// Outputs do not depend on the worker count; timings.csv is the only
/// nondeterministic file and is not digested.
Manifest run_experiment(const ExperimentConfig& config);

/// Paths (relative) whose digest no longer matches manifest.json.
std::vector<std::string> verify_manifest(const std::filesystem::path& output_dir);

/// Records under a results directory, grouped per problem and ordered by the
/// canonical algorithm order, then run index.
std::map<int, std::vector<AlgorithmRecords>> load_results(const std::filesystem::path& output_dir);

/// Writes <dir>/<algorithm>.csv (f_r,f_c,r_s,g_c,run_id over feasible entries)
/// for each group, plus <dir>/reference.csv. Returns the files written.
std::vector<std::filesystem::path> emit_plot_data(std::span<const AlgorithmRecords> groups,
                                                  const std::optional<ReferenceFront>& reference,
                                                  const std::filesystem::path& dir);

/// Simulated front per problem and metrics.csv in output_dir; returns the rows by problem.
std::map<int, std::vector<MetricsRow>> write_metrics(const std::filesystem::path& results_dir,
                                                     const std::filesystem::path& output_dir,
                                                     const TabulateOptions& options = {});

}  // namespace rrap
