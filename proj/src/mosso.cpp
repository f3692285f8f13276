#include "rrap/mosso.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rrap/errors.hpp"

namespace rrap {

std::string VariantFlags::name() const {
    std::string s = "MOSSO-";
    s += replacement == Replacement::compulsory ? '0' : '1';
    s += update_scope == UpdateScope::all_variable ? '0' : '1';
    s += pbest == PBestUse::with_pbest ? '0' : '1';
    return s;
}

VariantFlags VariantFlags::parse(std::string_view name) {
    constexpr std::string_view prefix = "MOSSO-";
    if (name.size() != prefix.size() + 3 || name.substr(0, prefix.size()) != prefix) {
        throw ConfigError("not a MOSSO variant name: '" + std::string(name) + "'");
    }
    auto bit = [&](std::size_t k) {
        const char c = name[prefix.size() + k];
        if (c != '0' && c != '1') throw ConfigError("not a MOSSO variant name: '" + std::string(name) + "'");
        return c == '1';
    };
    VariantFlags f;
    f.replacement = bit(0) ? Replacement::survival_of_fittest : Replacement::compulsory;
    f.update_scope = bit(1) ? UpdateScope::one_variable : UpdateScope::all_variable;
    f.pbest = bit(2) ? PBestUse::without_pbest : PBestUse::with_pbest;
    return f;
}

std::vector<VariantFlags> VariantFlags::all() {
    std::vector<VariantFlags> out;
    for (int code = 0; code < 8; ++code) {
        VariantFlags f;
        f.replacement = (code & 4) ? Replacement::survival_of_fittest : Replacement::compulsory;
        f.update_scope = (code & 2) ? UpdateScope::one_variable : UpdateScope::all_variable;
        f.pbest = (code & 1) ? PBestUse::without_pbest : PBestUse::with_pbest;
        out.push_back(f);
    }
    return out;
}

SsoParams SsoParams::defaults_for(const VariantFlags& flags, bool adaptive) {
    SsoParams p;
    p.adaptive_cg = adaptive;
    p.c_g = flags.uses_pbest() ? 0.5 : 0.7;
    p.c_p = 0.75;
    p.c_w = 0.9;
    return p;
}

void SsoParams::validate(const VariantFlags& flags) const {
    const bool ordered = flags.uses_pbest() ? (0 <= c_g && c_g <= c_p && c_p <= c_w && c_w <= 1)
                                            : (0 <= c_g && c_g <= c_w && c_w <= 1);
    if (!ordered) throw ConfigError("SSO thresholds must satisfy 0 <= c_g <= c_p <= c_w <= 1");
    if (adaptive_cg && !(adaptive_scale >= 0 && adaptive_scale <= c_w)) {
        throw ConfigError("adaptive scale must lie in [0, c_w]");
    }
}

double adaptive_cg(std::size_t n_lns, std::size_t n_rep, double scale) {
    if (n_rep == 0) throw std::domain_error("adaptive_cg: repository capacity is zero");
    const double x = static_cast<double>(n_lns) / static_cast<double>(n_rep);
    if (x == 0.0) return 0.0;
    // libm cbrt is not correctly rounded (cbrt(0.125) != 0.5); one Newton step
    // in extended precision lands exact cubes on their exact roots.
    long double y = std::cbrt(static_cast<long double>(x));
    y -= (y * y * y - x) / (3 * y * y);
    return scale * static_cast<double>(y);
}

Thresholds generation_thresholds(const SsoParams& params, const VariantFlags& flags,
                                 std::size_t archive_size, std::size_t n_rep) {
    Thresholds t;
    t.t_g = params.adaptive_cg
                ? adaptive_cg(std::min(archive_size, n_rep), n_rep, params.adaptive_scale)
                : params.c_g;
    // The adaptive band can outgrow C_p (0.8 > 0.75); the pBest band then vanishes.
    t.t_p = flags.uses_pbest() ? std::max(t.t_g, params.c_p) : t.t_g;
    t.t_w = std::max(t.t_p, params.c_w);
    return t;
}

MixedSolution update_solution(const RrapProblem& problem, const SwarmState& state, std::size_t i,
                              const VariantFlags& flags, const Thresholds& thresholds,
                              RandomSource& rng) {
    const MixedSolution& guide = state.archive.empty()
                                     ? state.solutions[rng.below(state.solutions.size())]
                                     : state.archive.entries()[rng.below(state.archive.size())].solution;
    const MixedSolution& self = state.solutions[i];
    const MixedSolution* pbest = flags.uses_pbest() ? &state.pbests[i] : nullptr;

    auto step = [&](std::size_t j) {
        const double rho = rng.uniform01();
        const std::optional<double> p = pbest ? std::optional<double>(pbest->genes[j]) : std::nullopt;
        return update_gene(self.genes[j], p, guide.genes[j], thresholds, rho,
                           [&] { return random_gene(problem, rng); });
    };

    MixedSolution cand = self;
    if (flags.update_scope == UpdateScope::one_variable) {
        const auto j = static_cast<std::size_t>(rng.below(cand.genes.size()));
        cand.genes[j] = step(j);
    } else {
        for (std::size_t j = 0; j < cand.genes.size(); ++j) cand.genes[j] = step(j);
    }
    return cand;
}

AcceptResult accept_candidate(SwarmState& state, std::size_t i, const MixedSolution& candidate,
                              const Evaluation& candidate_eval, const VariantFlags& flags) {
    AcceptResult res;
    const auto cand = objectives_of(candidate_eval);

    if (flags.replacement == Replacement::compulsory ||
        !dominates(objectives_of(state.evaluations[i]), cand)) {
        state.solutions[i] = candidate;
        state.evaluations[i] = candidate_eval;
        res.replaced = true;
    }

    if (flags.uses_pbest() && !dominates(objectives_of(state.pbest_evaluations[i]), cand)) {
        state.pbests[i] = candidate;
        state.pbest_evaluations[i] = candidate_eval;
        res.pbest_updated = true;
    }

    if (candidate_eval.qualified) {
        res.offered = true;
        res.inserted = state.archive.insert({candidate, candidate_eval}) == InsertOutcome::accepted;
    }
    return res;
}

RunRecord run_mosso(const RrapProblem& problem, const VariantFlags& flags, const SsoParams& params,
                    const RunSizes& sizes, std::uint64_t seed, const MossoOptions& options) {
    if (sizes.n_sol < 1 || sizes.n_rep < 1 || sizes.n_gen < 0) {
        throw ConfigError("MOSSO needs n_sol >= 1, n_rep >= 1, n_gen >= 0");
    }
    params.validate(flags);
    problem.validate();

    Rng rng(seed);
    const auto n_sol = static_cast<std::size_t>(sizes.n_sol);
    const auto n_rep = static_cast<std::size_t>(sizes.n_rep);

    SwarmState state;
    state.archive = ParetoArchive(n_rep);
    for (std::size_t i = 0; i < n_sol; ++i) {
        state.solutions.push_back(random_solution(problem, rng));
        state.evaluations.push_back(evaluate(problem, state.solutions.back()));
    }
    if (flags.uses_pbest()) {
        state.pbests = state.solutions;
        state.pbest_evaluations = state.evaluations;
    }
    for (std::size_t i = 0; i < n_sol; ++i) {
        if (state.evaluations[i].qualified) state.archive.insert({state.solutions[i], state.evaluations[i]});
    }
    state.archive.truncate();
    if (options.on_generation) options.on_generation(state);

    RunRecord record;
    record.algorithm = flags.name();
    record.problem_id = problem.id;
    record.seed = seed;
    record.config = {{"n_sol", sizes.n_sol},
                     {"n_gen", sizes.n_gen},
                     {"n_rep", sizes.n_rep},
                     {"c_g", params.c_g},
                     {"c_p", params.c_p},
                     {"c_w", params.c_w},
                     {"adaptive_cg", params.adaptive_cg},
                     {"adaptive_scale", params.adaptive_scale}};

    for (int t = 1; t <= sizes.n_gen; ++t) {
        state.generation = t;
        const auto thresholds = generation_thresholds(params, flags, state.archive.size(), n_rep);
        TraceRow row;
        row.generation = t;
        row.c_g = thresholds.t_g;
        for (std::size_t i = 0; i < n_sol; ++i) {
            auto cand = update_solution(problem, state, i, flags, thresholds, rng);
            const auto eval = evaluate(problem, cand);
            const auto res = accept_candidate(state, i, cand, eval, flags);
            row.qualified_offers += res.offered;
            row.accepted_inserts += res.inserted;
        }
        state.archive.truncate();
        row.archive_size = state.archive.size();
        record.trace.push_back(row);
        if (options.on_generation) options.on_generation(state);
    }

    record.entries.assign(state.archive.entries().begin(), state.archive.entries().end());
    return record;
}

}  // namespace rrap
