// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>

#include "rrap/harness.hpp"
#include "rrap/metrics.hpp"
#include "rrap/mosso.hpp"
#include "rrap/oracle.hpp"
#include "rrap/pareto.hpp"

using namespace rrap;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("rrap_accept_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

bool quad_dominates(const ObjectivePair& a, const ObjectivePair& b) {
    return !(a.f_r < b.f_r) && !(a.f_c > b.f_c) && (a.f_r > b.f_r || a.f_c < b.f_c);
}

// 1. MOSSO-001 against the exact lattice front of a restricted benchmark 1.
Verdict oracle_recovery() {
    ExperimentConfig c;
    c.problem_overrides = {{"n_ub", 3}, {"r_ub", 0.95}};
    c.n_sol = 50;
    c.n_gen = 200;
    const auto problem = configured_problem(c, 1);
    const auto lattice = LatticeSpec::uniform(5, {1, 2, 3}, {0.75, 0.80, 0.85, 0.90, 0.95});
    const auto oracle = oracle_front(problem, lattice);

    int within = 0;
    double slowest = 0.0;
    std::string gds, normalized;
    for (int run = 0; run < 5; ++run) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto rec = run_algorithm(problem, "MOSSO-001", c, derive_seed(c.base_seed, 1, "MOSSO-001", run));
        slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        const auto pts = feasible_objectives(std::span(&rec, 1));
        if (pts.empty()) {
            gds += " none";
            continue;
        }
        const double g = gd(pts, oracle.front);
        within += g <= 0.01;
        gds += " " + fmt(g, 3);
        normalized += " " + fmt(gd(pts, oracle.front, {true}), 3);
    }
    return {within >= 4 && slowest <= 60.0,
            std::to_string(within) + "/5 seeds with GD <= 0.01 (GD:" + gds + "; range-normalised:" + normalized +
                "; oracle front " + std::to_string(oracle.front.points.size()) + " points); slowest run " +
                fmt(slowest, 3) + " s"};
}

// 2. Metric and crowding fixtures.
Verdict metric_fixtures() {
    const ReferenceFront ref{{{0.9, 100}, {0.95, 120}, {0.99, 150}}, FrontProvenance::oracle};
    const std::vector<ObjectivePair> subset{{0.95, 120}, {0.99, 150}};
    const auto crowd = crowding_distance(std::vector<ObjectivePair>{{0, 1}, {0.5, 0.5}, {1, 0}});
    const double checks[] = {gd(subset, ref),
                             gd_from_distances(std::vector<double>{3, 4}) - 2.5,
                             sp_from_distances(std::vector<double>{0.25, 0.25, 0.25}),
                             sp_from_distances(std::vector<double>{0, 2}) - std::sqrt(2.0),
                             crowd[1] - 1.0};
    double worst = 0.0;
    for (double v : checks) worst = std::max(worst, std::abs(v));
    const bool ends = std::isinf(crowd[0]) && std::isinf(crowd[2]);
    return {worst <= 1e-12 && ends, "max deviation " + fmt(worst, 3)};
}

// 3. Randomised archive sequences against an all-pairs filter.
Verdict archive_properties() {
    Rng rng(31337);
    int bad = 0;
    for (int seq = 0; seq < 10000; ++seq) {
        const std::size_t cap = 1 + rng.below(15);
        ParetoArchive archive(cap);
        std::vector<ObjectivePair> offered;
        const bool coarse = seq % 2 == 0;
        const int steps = 2 + static_cast<int>(rng.below(30));
        for (int s = 0; s < steps; ++s) {
            const ObjectivePair p = coarse ? ObjectivePair{double(rng.below(6)), double(rng.below(6))}
                                           : ObjectivePair{rng.uniform01(), 100 * rng.uniform01()};
            ArchiveEntry e;
            e.evaluation.f_r = p.f_r;
            e.evaluation.f_c = p.f_c;
            archive.insert(e);
            offered.push_back(p);
            if (rng.below(4) == 0) {
                archive.truncate();
                if (archive.size() > cap) ++bad;
                offered = archive.objectives();
            }
            const auto objs = archive.objectives();
            std::multiset<std::pair<double, double>> want, got;
            for (std::size_t i = 0; i < offered.size(); ++i) {
                bool dominated = false;
                for (std::size_t j = 0; j < offered.size() && !dominated; ++j)
                    dominated = quad_dominates(offered[j], offered[i]);
                if (!dominated) want.insert({offered[i].f_r, offered[i].f_c});
            }
            for (const auto& o : objs) got.insert({o.f_r, o.f_c});
            for (const auto& a : objs)
                for (const auto& b : objs) bad += quad_dominates(a, b);
            bad += want != got;
        }
        archive.truncate();
        bad += archive.size() > cap;
    }
    return {bad == 0, "10000 sequences, " + std::to_string(bad) + " violations"};
}

// 4. Penalty direction on random points of every benchmark.
Verdict penalty_direction() {
    int bad = 0, shrunk = 0;
    for (int id = 1; id <= 4; ++id) {
        const auto p = builtin_problem(id);
        Rng rng(4000 + id);
        for (int k = 0; k < 10000; ++k) {
            std::vector<int> n(p.n_sub());
            std::vector<double> r(p.n_sub());
            for (std::size_t i = 0; i < p.n_sub(); ++i) {
                n[i] = rng.uniform_int(p.n_lb, p.n_ub);
                r[i] = rng.uniform_real(p.r_lb, p.r_clamp_hi());
            }
            const double rs = system_reliability(p, n, r);
            const auto g = constraints(p, n, r);
            const auto pen = penalize(p, rs, g, p.reliability_floor);
            if (pen.factor < 1) {
                ++shrunk;
                bad += !(pen.f_r < rs && pen.f_c > g.g_c);
            } else {
                bad += !(pen.f_r >= rs && pen.f_c <= g.g_c);
            }
        }
    }
    return {bad == 0, "40000 points (" + std::to_string(shrunk) + " with m < 1), " + std::to_string(bad) +
                          " violations"};
}

// 5. Self-adaptive gBest band.
Verdict adaptive_band() {
    const bool exact = adaptive_cg(100, 100) == 0.8 && adaptive_cg(1, 8) == 0.4 &&
                 adaptive_cg(12, 96) == 0.4;
    int checked = 0, bad = 0;
    for (const auto& flags : VariantFlags::all()) {
        const auto rec = run_mosso(builtin_problem(2), flags, SsoParams::defaults_for(flags), {40, 60, 40}, 5);
        for (std::size_t t = 2; t < rec.trace.size(); ++t) {
            // band of generation t uses the size left by generation t - 1
            if (rec.trace[t - 1].archive_size >= rec.trace[t - 2].archive_size) {
                ++checked;
                bad += *rec.trace[t].c_g < *rec.trace[t - 1].c_g;
            }
        }
    }
    return {exact && bad == 0, std::string("closed forms ") + (exact ? "exact" : "inexact") + ", " +
                                   std::to_string(checked) + " nondecreasing-size steps, " + std::to_string(bad) +
                                   " decreases"};
}

// 6. Byte-identical outputs across invocations and worker counts.
Verdict determinism() {
    const auto a = scratch("det_a"), b = scratch("det_b"), c = scratch("det_c");
    ExperimentConfig cfg;
    cfg.problems = {1, 2};
    cfg.algorithms = {"MOSSO-000", "MOSSO-111", "mopso", "nsga2"};
    cfg.n_run = 4;
    cfg.n_sol = 30;
    cfg.n_gen = 40;
    auto run = [&](const fs::path& out, int workers) {
        auto x = cfg;
        x.output_dir = out;
        x.workers = workers;
        run_experiment(x);
        write_metrics(out, out / "metrics");
    };
    run(a, 1);
    run(b, 8);
    run(c, 1);
    std::size_t compared = 0, differ = 0;
    for (const auto& e : fs::recursive_directory_iterator(a)) {
        if (!e.is_regular_file() || e.path().filename() == "timings.csv") continue;
        const auto rel = fs::relative(e.path(), a);
        ++compared;
        const auto text = slurp(e.path());
        differ += text != slurp(b / rel);
        differ += text != slurp(c / rel);
    }
    for (const auto& d : {a, b, c}) fs::remove_all(d);
    return {compared > 0 && differ == 0,
            std::to_string(compared) + " files x 3 invocations (workers 1, 8, 1), " + std::to_string(differ) +
                " mismatches"};
}

// 7. Spacing and front-width trend of MOSSO-001 versus NSGA-II on benchmark 1.
// Each comparison is one ten-run experiment under its own base seed, with
// pooled SP taken against the simulated front of that experiment's 20 records.
Verdict trend_check() {
    ExperimentConfig cfg;
    cfg.n_run = 10;
    cfg.n_sol = 100;
    cfg.n_gen = 300;
    const auto problem = configured_problem(cfg, 1);

    auto fc_span = [](const std::vector<RunRecord>& recs) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto& p : feasible_objectives(recs)) {
            lo = std::min(lo, p.f_c);
            hi = std::max(hi, p.f_c);
        }
        return std::pair{lo, hi};
    };

    int wins = 0, narrower = 0, run_wins = 0, run_ties = 0;
    double lo_m = std::numeric_limits<double>::infinity(), hi_m = -lo_m, lo_n = lo_m, hi_n = -lo_m;
    std::string sps;
    for (int rep = 0; rep < 10; ++rep) {
        const std::uint64_t base = cfg.base_seed + static_cast<std::uint64_t>(rep);
        std::vector<RunRecord> mosso, nsga;
        for (int r = 0; r < cfg.n_run; ++r) {
            mosso.push_back(run_algorithm(problem, "MOSSO-001", cfg, derive_seed(base, 1, "MOSSO-001", r)));
            nsga.push_back(run_algorithm(problem, "nsga2", cfg, derive_seed(base, 1, "nsga2", r)));
        }
        auto all = mosso;
        all.insert(all.end(), nsga.begin(), nsga.end());
        const auto ref = build_simulated_front(all);
        const auto rows = tabulate(std::vector<AlgorithmRecords>{{"MOSSO-001", mosso}, {"nsga2", nsga}}, ref);
        const bool win = rows[0].sp && rows[1].sp && *rows[0].sp > *rows[1].sp;
        wins += win;
        sps += " " + fmt(rows[0].sp.value_or(NAN), 3) + "/" + fmt(rows[1].sp.value_or(NAN), 3);

        const auto [a, b] = fc_span(mosso);
        const auto [c, d] = fc_span(nsga);
        narrower += (d - c) < (b - a);
        lo_m = std::min(lo_m, a);
        hi_m = std::max(hi_m, b);
        lo_n = std::min(lo_n, c);
        hi_n = std::max(hi_n, d);

        // single-run spacing, reported for comparison only
        for (int r = 0; r < cfg.n_run; ++r) {
            const auto pm = feasible_objectives(std::span(&mosso[r], 1));
            const auto pn = feasible_objectives(std::span(&nsga[r], 1));
            if (pm.size() < 2 || pn.size() < 2) continue;
            const double sm = sp(pm, ref), sn = sp(pn, ref);
            run_wins += sm > sn;
            run_ties += sm == sn;
        }
    }
    const double ratio = (hi_n - lo_n) / (hi_m - lo_m);
    return {wins >= 8 && ratio < 1,
            "pooled SP MOSSO-001 > NSGA-II in " + std::to_string(wins) + "/10 paired experiments (SP m/n:" + sps +
                "); f_c range ratio NSGA-II/MOSSO-001 = " + fmt(ratio, 3) + " (narrower in " +
                std::to_string(narrower) + "/10); single-run SP wins " + std::to_string(run_wins) + "/100 with " +
                std::to_string(run_ties) + " ties"};
}

// 8. n_lns + n_inf accounts for every repository slot.
Verdict accounting() {
    const auto dir = scratch("acct");
    ExperimentConfig cfg;
    cfg.problems = {1, 4};
    cfg.algorithms = {"MOSSO-001", "MOSSO-110", "mopso"};
    cfg.n_run = 5;
    cfg.n_sol = 40;
    cfg.n_gen = 100;
    cfg.output_dir = dir;
    run_experiment(cfg);
    const auto rows = write_metrics(dir, dir / "metrics");
    const auto results = load_results(dir);
    int bad = 0, full = 0, groups = 0;
    for (const auto& [pid, rs] : rows) {
        for (std::size_t k = 0; k < rs.size(); ++k) {
            ++groups;
            std::size_t total = 0;
            bool all_full = true;
            for (const auto& rec : results.at(pid)[k].records) {
                total += rec.entries.size();
                all_full = all_full && rec.entries.size() == static_cast<std::size_t>(cfg.repository_size());
            }
            bad += rs[k].n_lns + rs[k].n_inf != total;
            if (all_full) {
                ++full;
                bad += rs[k].n_lns + rs[k].n_inf != static_cast<std::size_t>(cfg.n_run * cfg.repository_size());
            }
        }
    }
    fs::remove_all(dir);
    return {bad == 0 && groups == 6, std::to_string(groups) + " groups (" + std::to_string(full) +
                                         " with full repositories), " + std::to_string(bad) + " mismatches"};
}

// 9. Factor-level gap worked example.
Verdict gap_example() {
    const auto cell = level_gap(4954.0, 4956.0, true, GapDenominator::larger_level);
    const auto alt = level_gap(4954.0, 4956.0, true, GapDenominator::better_level);
    const double g = *cell.gap_percent;
    const bool ok = std::round(g * 100) / 100 == 0.04 && std::abs(g - 200.0 / 4956.0) <= 1e-12 &&
                    *alt.gap_percent == g && *cell.better_level == 1;
    return {ok, "gap = " + fmt(g, 6) + "% (better level 1)"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"oracle-front recovery", oracle_recovery}, {"metric fixtures", metric_fixtures},
        {"archive properties", archive_properties}, {"penalty direction", penalty_direction},
        {"self-adaptive c_g", adaptive_band},        {"determinism", determinism},
        {"MOSSO-001 vs NSGA-II trend", trend_check}, {"accounting identity", accounting},
        {"factorial gap example", gap_example}};
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Verdict v;
        try {
            v = criteria[k].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("%s criterion %zu (%s): %s\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                    v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
