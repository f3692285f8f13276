#pragma once

// NSGA-II and MOPSO baselines on the same evaluation pipeline and archive.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rrap/model.hpp"
#include "rrap/mosso.hpp"
#include "rrap/pareto.hpp"
#include "rrap/random.hpp"
#include "rrap/run_record.hpp"

namespace rrap {

// ---------------------------------------------------------------- NSGA-II

struct Nsga2Params {
    double crossover_rate = 0.6;
    double mutation_rate = 0.4;

    /// Number of crossover children per generation; the rest are mutants.
    [[nodiscard]] int crossover_children(int n_sol) const;
    void validate() const;
};

/// Child = a[0, cut) followed by b[cut, end).
MixedSolution one_cut_crossover(const MixedSolution& a, const MixedSolution& b, std::size_t cut);

/// Survivor indices (ascending) of environmental selection: whole layers first,
/// then the boundary layer reduced by crowding distance.
std::vector<std::size_t> nsga2_select(std::span<const ObjectivePair> pool, std::size_t n_keep);

struct Nsga2Options {
    /// Called with the parent+offspring pool each generation, before selection.
    std::function<void(std::span<const ObjectivePair>)> on_pool;
    /// Called with each new population's size.
    std::function<void(std::size_t)> on_population;
};

RunRecord run_nsga2(const RrapProblem& problem, const Nsga2Params& params, int n_sol, int n_gen,
                    std::uint64_t seed, const Nsga2Options& options = {});

// ---------------------------------------------------------------- MOPSO

struct MopsoParams {
    double inertia = 0.5;
    double c1 = 0.5;
    double c2 = 0.5;
    double v_n_min = -0.5;
    double v_n_max = 0.5;
    double v_r_min = -0.5;
    double v_r_max = 0.5;
    double n_min = 1.0;
    double n_max = 10.0;
    double r_min = 0.5;
    double r_max = 1.0;

    void validate() const;
};

/// Clamped velocity step for one coordinate.
double mopso_velocity(double v, double x, double pbest, double gbest, double rho1, double rho2,
                      double inertia, double c1, double c2, double v_min, double v_max);
/// Clamped position step for one coordinate.
double mopso_position(double x, double v, double x_min, double x_max);

/// Particle with real carriers for both parts; n is rounded only for evaluation.
struct Particle {
    std::vector<double> n_pos;
    std::vector<double> r_pos;
    std::vector<double> v_n;
    std::vector<double> v_r;

    [[nodiscard]] std::vector<int> redundancies() const;
    /// Reliabilities as evaluated (clamped below 1).
    [[nodiscard]] std::vector<double> reliabilities() const;
    [[nodiscard]] MixedSolution to_solution() const;
};

struct MopsoOptions {
    /// Repository reduction once it exceeds its capacity. Defaults to crowding truncation.
    std::function<void(ParetoArchive&)> truncate;
    std::function<void(const ParetoArchive&)> on_generation;
};

RunRecord run_mopso(const RrapProblem& problem, const MopsoParams& params, int n_sol, int n_gen,
                    int n_rep, std::uint64_t seed, const MopsoOptions& options = {});

}  // namespace rrap
