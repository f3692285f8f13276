#include <algorithm>
#include <cmath>

#include "rrap/baselines.hpp"
#include "rrap/errors.hpp"

namespace rrap {

void MopsoParams::validate() const {
    if (!(v_n_min < v_n_max && v_r_min < v_r_max && n_min < n_max && r_min < r_max)) {
        throw ConfigError("MOPSO clamps must satisfy min < max");
    }
    if (!(r_min > 0 && r_max <= 1)) throw ConfigError("MOPSO reliability clamp must lie in (0, 1]");
    if (!(n_min >= 1)) throw ConfigError("MOPSO redundancy clamp must start at 1 or above");
}

double mopso_velocity(double v, double x, double pbest, double gbest, double rho1, double rho2,
                      double inertia, double c1, double c2, double v_min, double v_max) {
    const double raw = inertia * v + c1 * rho1 * (pbest - x) + c2 * rho2 * (gbest - x);
    return std::min(std::max(raw, v_min), v_max);
}

double mopso_position(double x, double v, double x_min, double x_max) {
    return std::min(std::max(x + v, x_min), x_max);
}

std::vector<int> Particle::redundancies() const {
    std::vector<int> out;
    out.reserve(n_pos.size());
    for (double v : n_pos) out.push_back(static_cast<int>(std::lround(v)));
    return out;
}

std::vector<double> Particle::reliabilities() const {
    std::vector<double> out;
    out.reserve(r_pos.size());
    for (double v : r_pos) out.push_back(std::min(v, kReliabilityClampHi));
    return out;
}

MixedSolution Particle::to_solution() const { return encode(redundancies(), reliabilities()); }

namespace {

struct Guide {
    std::vector<double> n;
    std::vector<double> r;
};

Guide guide_from(const MixedSolution& sol) {
    Guide g;
    for (double x : sol.genes) {
        const double whole = std::floor(x);
        g.n.push_back(whole);
        g.r.push_back(x - whole);
    }
    return g;
}

}  // namespace

RunRecord run_mopso(const RrapProblem& problem, const MopsoParams& params, int n_sol, int n_gen,
                    int n_rep, std::uint64_t seed, const MopsoOptions& options) {
    if (n_sol < 1 || n_rep < 1 || n_gen < 0) throw ConfigError("MOPSO needs n_sol >= 1, n_rep >= 1, n_gen >= 0");
    params.validate();
    problem.validate();

    Rng rng(seed);
    const auto n = static_cast<std::size_t>(n_sol);
    const std::size_t len = problem.n_sub();
    auto truncate = options.truncate ? options.truncate : [](ParetoArchive& a) { a.truncate(); };

    std::vector<Particle> swarm(n);
    std::vector<Evaluation> evals(n);
    std::vector<Guide> pbest(n);
    std::vector<Evaluation> pbest_evals(n);
    ParetoArchive repo(static_cast<std::size_t>(n_rep));

    for (std::size_t i = 0; i < n; ++i) {
        const auto sol = random_solution(problem, rng);
        const auto g = guide_from(sol);
        swarm[i].n_pos = g.n;
        swarm[i].r_pos = g.r;
        swarm[i].v_n.assign(len, 0.0);
        swarm[i].v_r.assign(len, 0.0);
        evals[i] = evaluate_components(problem, swarm[i].redundancies(), swarm[i].reliabilities());
        pbest[i] = g;
        pbest_evals[i] = evals[i];
    }
    for (std::size_t i = 0; i < n; ++i) repo.insert({swarm[i].to_solution(), evals[i]});
    truncate(repo);

    RunRecord record;
    record.algorithm = "mopso";
    record.problem_id = problem.id;
    record.seed = seed;
    record.config = {{"n_sol", n_sol},       {"n_gen", n_gen},       {"n_rep", n_rep},
                     {"inertia", params.inertia}, {"c1", params.c1},  {"c2", params.c2},
                     {"v_n_max", params.v_n_max}, {"v_r_max", params.v_r_max},
                     {"n_min", params.n_min}, {"n_max", params.n_max}, {"r_min", params.r_min},
                     {"r_max", params.r_max}, {"initial_velocity", 0.0}};

    for (int t = 1; t <= n_gen; ++t) {
        TraceRow row;
        row.generation = t;
        for (std::size_t i = 0; i < n; ++i) {
            const auto gbest = guide_from(repo.entries()[rng.below(repo.size())].solution);
            auto& p = swarm[i];
            for (std::size_t j = 0; j < len; ++j) {
                const double a1 = rng.uniform01(), a2 = rng.uniform01();
                p.v_n[j] = mopso_velocity(p.v_n[j], p.n_pos[j], pbest[i].n[j], gbest.n[j], a1, a2,
                                          params.inertia, params.c1, params.c2, params.v_n_min, params.v_n_max);
                p.n_pos[j] = mopso_position(p.n_pos[j], p.v_n[j], params.n_min, params.n_max);
                const double b1 = rng.uniform01(), b2 = rng.uniform01();
                p.v_r[j] = mopso_velocity(p.v_r[j], p.r_pos[j], pbest[i].r[j], gbest.r[j], b1, b2,
                                          params.inertia, params.c1, params.c2, params.v_r_min, params.v_r_max);
                p.r_pos[j] = mopso_position(p.r_pos[j], p.v_r[j], params.r_min, params.r_max);
            }
            evals[i] = evaluate_components(problem, p.redundancies(), p.reliabilities());

            const auto x = objectives_of(evals[i]);
            const auto pb = objectives_of(pbest_evals[i]);
            bool x_is_new_pbest = false;
            if (dominates(pb, x)) {
                x_is_new_pbest = false;
            } else if (dominates(x, pb)) {
                x_is_new_pbest = true;
            } else {
                x_is_new_pbest = rng.below(2) == 0;
            }
            if (!x_is_new_pbest) continue;

            pbest[i] = {p.n_pos, p.r_pos};
            pbest_evals[i] = evals[i];
            ++row.qualified_offers;
            if (repo.insert({p.to_solution(), evals[i]}) == InsertOutcome::accepted) {
                ++row.accepted_inserts;
                if (repo.size() > repo.capacity()) truncate(repo);
            }
        }
        row.archive_size = repo.size();
        record.trace.push_back(row);
        if (options.on_generation) options.on_generation(repo);
    }

    record.entries.assign(repo.entries().begin(), repo.entries().end());
    return record;
}

}  // namespace rrap
