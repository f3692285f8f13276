#include <algorithm>
#include <cmath>

#include "rrap/baselines.hpp"
#include "rrap/errors.hpp"

namespace rrap {

int Nsga2Params::crossover_children(int n_sol) const {
    return static_cast<int>(std::lround(crossover_rate * n_sol));
}

void Nsga2Params::validate() const {
    if (crossover_rate < 0 || mutation_rate < 0 || std::abs(crossover_rate + mutation_rate - 1.0) > 1e-9) {
        throw ConfigError("NSGA-II crossover and mutation rates must be nonnegative and sum to 1");
    }
}

MixedSolution one_cut_crossover(const MixedSolution& a, const MixedSolution& b, std::size_t cut) {
    MixedSolution child = a;
    for (std::size_t j = cut; j < child.genes.size() && j < b.genes.size(); ++j) child.genes[j] = b.genes[j];
    return child;
}

std::vector<std::size_t> nsga2_select(std::span<const ObjectivePair> pool, std::size_t n_keep) {
    std::vector<std::size_t> chosen;
    for (const auto& layer : nondominated_sort(pool)) {
        if (chosen.size() + layer.size() <= n_keep) {
            chosen.insert(chosen.end(), layer.begin(), layer.end());
            if (chosen.size() == n_keep) break;
            continue;
        }
        std::vector<ObjectivePair> sub;
        sub.reserve(layer.size());
        for (auto idx : layer) sub.push_back(pool[idx]);
        for (auto k : select_by_crowding(sub, n_keep - chosen.size())) chosen.push_back(layer[k]);
        break;
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

RunRecord run_nsga2(const RrapProblem& problem, const Nsga2Params& params, int n_sol, int n_gen,
                    std::uint64_t seed, const Nsga2Options& options) {
    if (n_sol < 1 || n_gen < 0) throw ConfigError("NSGA-II needs n_sol >= 1 and n_gen >= 0");
    params.validate();
    problem.validate();

    Rng rng(seed);
    const auto n = static_cast<std::size_t>(n_sol);
    const auto n_cross = static_cast<std::size_t>(params.crossover_children(n_sol));
    const std::size_t len = problem.n_sub();

    std::vector<MixedSolution> pop;
    std::vector<Evaluation> evals;
    for (std::size_t i = 0; i < n; ++i) {
        pop.push_back(random_solution(problem, rng));
        evals.push_back(evaluate(problem, pop.back()));
    }

    RunRecord record;
    record.algorithm = "nsga2";
    record.problem_id = problem.id;
    record.seed = seed;
    record.config = {{"n_sol", n_sol},
                     {"n_gen", n_gen},
                     {"crossover_rate", params.crossover_rate},
                     {"mutation_rate", params.mutation_rate},
                     {"crossover_children", n_cross},
                     {"mutation_children", n - n_cross}};

    std::vector<ObjectivePair> objs;
    for (int t = 1; t <= n_gen; ++t) {
        TraceRow row;
        row.generation = t;
        for (std::size_t k = 0; k < n; ++k) {
            MixedSolution child;
            if (k < n_cross) {
                const auto& a = pop[rng.below(n)];
                const auto& b = pop[rng.below(n)];
                const std::size_t cut = len > 1 ? 1 + rng.below(len - 1) : len;
                child = one_cut_crossover(a, b, cut);
            } else {
                child = pop[rng.below(n)];
                const auto j = rng.below(len);
                child.genes[j] = random_gene(problem, rng);
            }
            evals.push_back(evaluate(problem, child));
            pop.push_back(std::move(child));
            row.qualified_offers += evals.back().qualified;
        }

        objs.clear();
        for (const auto& e : evals) objs.push_back(objectives_of(e));
        if (options.on_pool) options.on_pool(objs);
        const auto keep = nsga2_select(objs, n);

        std::vector<MixedSolution> next_pop;
        std::vector<Evaluation> next_evals;
        next_pop.reserve(n);
        next_evals.reserve(n);
        for (auto idx : keep) {
            next_pop.push_back(std::move(pop[idx]));
            next_evals.push_back(evals[idx]);
        }
        pop = std::move(next_pop);
        evals = std::move(next_evals);
        if (options.on_population) options.on_population(pop.size());

        objs.clear();
        for (const auto& e : evals) objs.push_back(objectives_of(e));
        row.archive_size = nondominated_filter(objs).size();
        record.trace.push_back(row);
    }

    // Qualification applies only to what gets reported.
    std::vector<std::size_t> qualified;
    objs.clear();
    for (std::size_t i = 0; i < pop.size(); ++i) {
        if (evals[i].qualified) {
            qualified.push_back(i);
            objs.push_back(objectives_of(evals[i]));
        }
    }
    std::uint64_t serial = 0;
    for (auto k : nondominated_filter(objs)) {
        ArchiveEntry e{pop[qualified[k]], evals[qualified[k]]};
        e.serial = serial++;
        record.entries.push_back(std::move(e));
    }
    return record;
}

}  // namespace rrap
