#pragma once

// Multi-objective simplified swarm optimization over the mixed encoding, in the
// eight replacement / update-scope / pBest combinations.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rrap/model.hpp"
#include "rrap/pareto.hpp"
#include "rrap/random.hpp"
#include "rrap/run_record.hpp"

namespace rrap {

enum class Replacement { compulsory, survival_of_fittest };
enum class UpdateScope { all_variable, one_variable };
enum class PBestUse { with_pbest, without_pbest };

struct VariantFlags {
    Replacement replacement = Replacement::compulsory;
    UpdateScope update_scope = UpdateScope::all_variable;
    PBestUse pbest = PBestUse::with_pbest;

    /// "MOSSO-xyz", one digit per factor level.
    [[nodiscard]] std::string name() const;
    static VariantFlags parse(std::string_view name);
    /// All eight variants in name order MOSSO-000 ... MOSSO-111.
    static std::vector<VariantFlags> all();

    [[nodiscard]] bool uses_pbest() const noexcept { return pbest == PBestUse::with_pbest; }

    friend bool operator==(const VariantFlags&, const VariantFlags&) = default;
};

struct SsoParams {
    double c_g = 0.5;  ///< fixed-mode gBest threshold
    double c_p = 0.75;
    double c_w = 0.9;
    bool adaptive_cg = true;
    double adaptive_scale = 0.8;

    /// Fixed thresholds C_g = 0.5 / C_p = 0.75 / C_w = 0.9 with pBest, C_g = 0.7 / C_w = 0.9 without.
    static SsoParams defaults_for(const VariantFlags& flags, bool adaptive = true);
    /// Throws ConfigError on unordered thresholds.
    void validate(const VariantFlags& flags) const;
};

/// Band edges of the stepwise update: [0,t_g) gBest, [t_g,t_p) pBest,
/// [t_p,t_w) keep, [t_w,1] random. Without pBest t_p == t_g.
struct Thresholds {
    double t_g = 0.0;
    double t_p = 0.0;
    double t_w = 0.0;
};

/// scale * cbrt(n_lns / n_rep). Throws std::domain_error when n_rep == 0.
double adaptive_cg(std::size_t n_lns, std::size_t n_rep, double scale = 0.8);

/// Thresholds for one generation given the archive size at its start.
Thresholds generation_thresholds(const SsoParams& params, const VariantFlags& flags,
                                 std::size_t archive_size, std::size_t n_rep);

/// Stepwise choice for one gene. random_draw is invoked only in the random band.
template <class Draw>
double update_gene(double x, std::optional<double> p, double g, const Thresholds& t, double rho,
                   Draw&& random_draw) {
    if (rho < t.t_g) return g;
    if (p && rho < t.t_p) return *p;
    if (rho < t.t_w) return x;
    return random_draw();
}

struct SwarmState {
    std::vector<MixedSolution> solutions;
    std::vector<Evaluation> evaluations;
    std::vector<MixedSolution> pbests;  ///< empty without pBest
    std::vector<Evaluation> pbest_evaluations;
    ParetoArchive archive{1};
    int generation = 0;
};

/// Builds the candidate for solution i. Draw order: gBest index, then (one-variable
/// only) the gene index, then per updated gene one rho and, in the random band,
/// the two draws of random_gene.
MixedSolution update_solution(const RrapProblem& problem, const SwarmState& state, std::size_t i,
                              const VariantFlags& flags, const Thresholds& thresholds,
                              RandomSource& rng);

struct AcceptResult {
    bool replaced = false;      ///< X_i took the candidate
    bool pbest_updated = false;
    bool offered = false;       ///< passed the qualification gate
    bool inserted = false;      ///< archive accepted it
};

/// Replacement rule, pBest policy and archive offer for an evaluated candidate.
AcceptResult accept_candidate(SwarmState& state, std::size_t i, const MixedSolution& candidate,
                              const Evaluation& candidate_eval, const VariantFlags& flags);

struct RunSizes {
    int n_sol = 100;
    int n_gen = 1000;
    int n_rep = 100;
};

struct MossoOptions {
    /// Called after every generation's truncation (and once after initialisation).
    std::function<void(const SwarmState&)> on_generation;
};

/// Runs one seeded MOSSO search. n_gen = 0 returns the seeded initial archive.
RunRecord run_mosso(const RrapProblem& problem, const VariantFlags& flags, const SsoParams& params,
                    const RunSizes& sizes, std::uint64_t seed, const MossoOptions& options = {});

}  // namespace rrap
