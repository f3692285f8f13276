#include "rrap/harness.hpp"

#include <openssl/evp.h>
#include <time.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "rrap/baselines.hpp"
#include "rrap/errors.hpp"
#include "rrap/mosso.hpp"
#include "rrap/problem_io.hpp"

namespace fs = std::filesystem;

namespace rrap {

const std::vector<std::string>& algorithm_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& f : VariantFlags::all()) v.push_back(f.name());
        v.emplace_back("mopso");
        v.emplace_back("nsga2");
        return v;
    }();
    return names;
}

bool is_algorithm_name(std::string_view name) {
    const auto& names = algorithm_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::size_t algorithm_index(std::string_view name) {
    const auto& names = algorithm_names();
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ConfigError("unknown algorithm '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - names.begin());
}

void ExperimentConfig::validate() const {
    if (problems.empty()) throw ConfigError("no problems selected");
    for (int id : problems) {
        if (id < 1 || id > 4) throw ConfigError("problem id must be 1..4, got " + std::to_string(id));
    }
    if (algorithms.empty()) throw ConfigError("no algorithms selected");
    for (const auto& a : algorithms) {
        if (!is_algorithm_name(a)) throw ConfigError("unknown algorithm '" + a + "'");
    }
    if (n_run < 1 || n_sol < 1 || n_gen < 1 || repository_size() < 1) {
        throw ConfigError("runs, solutions, generations and repository size must all be >= 1");
    }
    if (n_run > (1 << 24)) throw ConfigError("too many runs");
    if (workers < 1) throw ConfigError("worker count must be >= 1");
    if (!(r_lb > 0 && r_lb < 1)) throw ConfigError("r_lb must lie in (0, 1)");
    if (!problem_overrides.is_object()) throw ConfigError("problem_overrides must be a JSON object");
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j = {{"problems", problems},
                        {"algorithms", algorithms},
                        {"n_run", n_run},
                        {"n_sol", n_sol},
                        {"n_gen", n_gen},
                        {"n_rep", repository_size()},
                        {"r_lb", r_lb},
                        {"formula_mode", to_string(formula_mode)},
                        {"adaptive_cg", adaptive_cg},
                        {"base_seed", base_seed},
                        {"problem_overrides", problem_overrides}};
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    if (j.contains("problems")) c.problems = j.at("problems").get<std::vector<int>>();
    if (j.contains("algorithms")) c.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    c.n_run = j.value("n_run", c.n_run);
    c.n_sol = j.value("n_sol", c.n_sol);
    c.n_gen = j.value("n_gen", c.n_gen);
    if (j.contains("n_rep")) c.n_rep = j.at("n_rep").get<int>();
    c.r_lb = j.value("r_lb", c.r_lb);
    if (j.contains("formula_mode")) c.formula_mode = parse_formula_mode(j.at("formula_mode").get<std::string>());
    c.adaptive_cg = j.value("adaptive_cg", c.adaptive_cg);
    c.base_seed = j.value("base_seed", c.base_seed);
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    c.workers = j.value("workers", c.workers);
    if (j.contains("problem_overrides")) c.problem_overrides = j.at("problem_overrides");
    return c;
}

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double thread_cpu_seconds() {
    timespec ts{};
    clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
    return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base_seed, int problem_id, std::string_view algorithm, int run_index) {
    if (problem_id < 0 || problem_id > 0xFFFF || run_index < 0) throw ConfigError("seed tuple out of range");
    // 16 bits problem | 8 bits algorithm | 40 bits run; mix64 is a bijection,
    // so distinct tuples always get distinct seeds.
    const std::uint64_t packed = (static_cast<std::uint64_t>(problem_id) << 48) |
                                 (static_cast<std::uint64_t>(algorithm_index(algorithm)) << 40) |
                                 static_cast<std::uint64_t>(run_index);
    return mix64(mix64(base_seed) ^ packed);
}

RrapProblem configured_problem(const ExperimentConfig& config, int problem_id) {
    nlohmann::json j = {{"id", problem_id},
                        {"r_lb", config.r_lb},
                        {"reliability_floor", config.r_lb},
                        {"formula_mode", to_string(config.formula_mode)}};
    j.update(config.problem_overrides);
    j["id"] = problem_id;
    j.erase("subsystems");
    return problem_from_json(j);
}

RunRecord run_algorithm(const RrapProblem& problem, std::string_view algorithm, const ExperimentConfig& config,
                        std::uint64_t seed) {
    if (algorithm == "nsga2") return run_nsga2(problem, Nsga2Params{}, config.n_sol, config.n_gen, seed);
    if (algorithm == "mopso") {
        MopsoParams mp;
        mp.n_min = problem.n_lb;
        mp.n_max = problem.n_ub;
        return run_mopso(problem, mp, config.n_sol, config.n_gen, config.repository_size(), seed);
    }
    const auto flags = VariantFlags::parse(algorithm);
    const auto params = SsoParams::defaults_for(flags, config.adaptive_cg);
    return run_mosso(problem, flags, params, {config.n_sol, config.n_gen, config.repository_size()}, seed);
}

fs::path record_stem(const fs::path& root, int problem_id, std::string_view algorithm, int run_index) {
    std::ostringstream name;
    name << "run_" << std::setw(3) << std::setfill('0') << run_index;
    return root / ("problem_" + std::to_string(problem_id)) / std::string(algorithm) / name.str();
}

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
    char buf[1 << 15];
    while (in) {
        in.read(buf, sizeof buf);
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md, &len);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return hex.str();
}

Manifest run_experiment(const ExperimentConfig& config) {
    config.validate();
    struct Task {
        int problem;
        std::string algorithm;
        int run;
    };
    std::vector<Task> tasks;
    std::map<int, RrapProblem> problems;
    for (int p : config.problems) {
        problems.emplace(p, configured_problem(config, p));
        for (const auto& a : config.algorithms) {
            for (int r = 0; r < config.n_run; ++r) tasks.push_back({p, a, r});
        }
    }

    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec || !fs::is_directory(config.output_dir)) {
        throw std::runtime_error("cannot create output directory " + config.output_dir.string());
    }

    struct Outcome {
        std::vector<ManifestArtifact> files;
        std::uint64_t seed = 0;
        double wall = 0.0;
        double cpu = 0.0;
        std::string error;
    };
    std::vector<Outcome> outcomes(tasks.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t k = next++; k < tasks.size(); k = next++) {
            const auto& t = tasks[k];
            auto& out = outcomes[k];
            try {
                out.seed = derive_seed(config.base_seed, t.problem, t.algorithm, t.run);
                const auto wall0 = std::chrono::steady_clock::now();
                const double cpu0 = thread_cpu_seconds();
                auto record = run_algorithm(problems.at(t.problem), t.algorithm, config, out.seed);
                out.cpu = thread_cpu_seconds() - cpu0;
                out.wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
                record.run_index = t.run;

                const auto stem = record_stem(config.output_dir, t.problem, t.algorithm, t.run);
                fs::create_directories(stem.parent_path());
                const auto [csv, json] = save_record(record, stem);
                for (const auto& f : {csv, json}) {
                    out.files.push_back({fs::relative(f, config.output_dir).generic_string(), sha256_file(f)});
                }
            } catch (const std::exception& e) {
                out.error = e.what();
            }
        }
    };

    const auto n_workers = static_cast<std::size_t>(std::min<int>(config.workers, static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    for (const auto& o : outcomes) {
        if (!o.error.empty()) throw std::runtime_error("run failed: " + o.error);
    }

    Manifest manifest;
    manifest.config = config.to_json();
    nlohmann::json runs = nlohmann::json::array();
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        nlohmann::json files = nlohmann::json::array();
        for (const auto& f : outcomes[k].files) {
            manifest.artifacts.push_back(f);
            files.push_back({{"path", f.path}, {"sha256", f.sha256}});
        }
        runs.push_back({{"problem", tasks[k].problem},
                        {"algorithm", tasks[k].algorithm},
                        {"run", tasks[k].run},
                        {"seed", outcomes[k].seed},
                        {"files", files}});
    }
    {
        std::ofstream out(config.output_dir / "manifest.json", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write manifest");
        out << nlohmann::json{{"config", manifest.config}, {"runs", runs}, {"timings", "timings.csv"}}.dump(1)
            << '\n';
    }
    {
        std::ofstream out(config.output_dir / "timings.csv", std::ios::binary);
        out << "problem,algorithm,run,wall_seconds,cpu_seconds\n";
        for (std::size_t k = 0; k < tasks.size(); ++k) {
            out << tasks[k].problem << ',' << tasks[k].algorithm << ',' << tasks[k].run << ','
                << format_double(outcomes[k].wall) << ',' << format_double(outcomes[k].cpu) << '\n';
        }
    }
    return manifest;
}

std::vector<std::string> verify_manifest(const fs::path& output_dir) {
    std::ifstream in(output_dir / "manifest.json");
    if (!in) throw std::runtime_error("no manifest.json in " + output_dir.string());
    const auto j = nlohmann::json::parse(in);
    std::vector<std::string> bad;
    for (const auto& run : j.at("runs")) {
        for (const auto& f : run.at("files")) {
            const auto rel = f.at("path").get<std::string>();
            const auto path = output_dir / rel;
            if (!fs::exists(path) || sha256_file(path) != f.at("sha256").get<std::string>()) bad.push_back(rel);
        }
    }
    return bad;
}

std::map<int, std::vector<AlgorithmRecords>> load_results(const fs::path& output_dir) {
    if (!fs::is_directory(output_dir)) throw std::runtime_error("no results directory " + output_dir.string());
    std::vector<RunRecord> all;
    for (const auto& entry : fs::recursive_directory_iterator(output_dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
        if (entry.path().filename() == "manifest.json") continue;
        auto csv = entry.path();
        csv.replace_extension(".csv");
        if (!fs::exists(csv)) continue;
        all.push_back(load_record(csv, entry.path()));
    }
    std::sort(all.begin(), all.end(), [](const RunRecord& a, const RunRecord& b) {
        const auto ka = std::make_tuple(a.problem_id, algorithm_index(a.algorithm), a.run_index);
        const auto kb = std::make_tuple(b.problem_id, algorithm_index(b.algorithm), b.run_index);
        return ka < kb;
    });
    std::map<int, std::vector<AlgorithmRecords>> out;
    for (auto& rec : all) {
        auto& groups = out[rec.problem_id];
        if (groups.empty() || groups.back().algorithm != rec.algorithm) groups.push_back({rec.algorithm, {}});
        groups.back().records.push_back(std::move(rec));
    }
    return out;
}

std::vector<fs::path> emit_plot_data(std::span<const AlgorithmRecords> groups,
                                     const std::optional<ReferenceFront>& reference, const fs::path& dir) {
    fs::create_directories(dir);
    std::vector<fs::path> written;
    for (const auto& g : groups) {
        const auto path = dir / (g.algorithm + ".csv");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << "f_r,f_c,r_s,g_c,run_id\n";
        for (const auto& rec : g.records) {
            for (const auto& e : rec.entries) {
                if (!e.evaluation.feasible) continue;
                const auto& ev = e.evaluation;
                out << format_double(ev.f_r) << ',' << format_double(ev.f_c) << ',' << format_double(ev.r_s) << ','
                    << format_double(ev.g_c) << ',' << rec.run_index << '\n';
            }
        }
        written.push_back(path);
    }
    const auto ref_path = dir / "reference.csv";
    std::ofstream out(ref_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + ref_path.string());
    out << "f_r,f_c\n";
    if (reference) {
        for (const auto& p : reference->points) out << format_double(p.f_r) << ',' << format_double(p.f_c) << '\n';
    }
    written.push_back(ref_path);
    return written;
}

std::map<int, std::vector<MetricsRow>> write_metrics(const fs::path& results_dir, const fs::path& output_dir,
                                                     const TabulateOptions& options) {
    const auto results = load_results(results_dir);
    fs::create_directories(output_dir);
    std::map<int, std::vector<MetricsRow>> rows_by_problem;
    std::ofstream out(output_dir / "metrics.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write metrics.csv");
    bool header = true;
    for (const auto& [problem, groups] : results) {
        std::vector<RunRecord> pooled;
        for (const auto& g : groups) pooled.insert(pooled.end(), g.records.begin(), g.records.end());
        // a problem where nothing is feasible still gets its counts
        ReferenceFront ref;
        try {
            ref = build_simulated_front(pooled);
        } catch (const EmptyFrontError&) {
        }
        auto rows = tabulate(groups, ref, options);
        std::ostringstream block;
        write_metrics_csv(block, rows, problem);
        auto text = block.str();
        if (!header) text.erase(0, text.find('\n') + 1);
        header = false;
        out << text;
        rows_by_problem.emplace(problem, std::move(rows));
    }
    return rows_by_problem;
}

}  // namespace rrap
