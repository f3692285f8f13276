#include "rrap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "rrap/errors.hpp"
#include "rrap/mosso.hpp"

namespace rrap {

std::vector<ObjectivePair> feasible_objectives(std::span<const RunRecord> records) {
    std::vector<ObjectivePair> out;
    for (const auto& rec : records) {
        for (const auto& e : rec.entries) {
            if (e.evaluation.feasible) out.push_back(e.objectives());
        }
    }
    return out;
}

ReferenceFront build_simulated_front(std::span<const RunRecord> records) {
    const auto pool = feasible_objectives(records);
    if (pool.empty()) throw EmptyFrontError("no feasible entries to build a reference front from");
    ReferenceFront ref;
    ref.provenance = FrontProvenance::simulated;
    for (auto idx : nondominated_filter(pool)) ref.points.push_back(pool[idx]);
    return ref;
}

std::vector<double> nearest_distances(std::span<const ObjectivePair> local, const ReferenceFront& reference,
                                      const DistanceOptions& options) {
    if (reference.points.empty()) throw std::domain_error("reference front is empty");
    double scale_r = 1.0, scale_c = 1.0;
    if (options.normalize) {
        const auto [r_lo, r_hi] = std::minmax_element(reference.points.begin(), reference.points.end(),
                                                      [](auto& a, auto& b) { return a.f_r < b.f_r; });
        const auto [c_lo, c_hi] = std::minmax_element(reference.points.begin(), reference.points.end(),
                                                      [](auto& a, auto& b) { return a.f_c < b.f_c; });
        if (r_hi->f_r > r_lo->f_r) scale_r = r_hi->f_r - r_lo->f_r;
        if (c_hi->f_c > c_lo->f_c) scale_c = c_hi->f_c - c_lo->f_c;
    }
    std::vector<double> d;
    d.reserve(local.size());
    for (const auto& p : local) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : reference.points) {
            const double dr = (p.f_r - q.f_r) / scale_r;
            const double dc = (p.f_c - q.f_c) / scale_c;
            best = std::min(best, dr * dr + dc * dc);
        }
        d.push_back(std::sqrt(best));
    }
    return d;
}

double gd_from_distances(std::span<const double> d) {
    if (d.empty()) throw std::domain_error("GD of an empty front");
    double sq = 0.0;
    for (double v : d) sq += v * v;
    return std::sqrt(sq) / static_cast<double>(d.size());
}

double sp_from_distances(std::span<const double> d) {
    if (d.size() < 2) throw std::domain_error("SP needs at least two points");
    // shifted by d[0] so that equal distances give exactly zero
    double shift_sum = 0.0;
    for (double v : d) shift_sum += v - d[0];
    const double mean = shift_sum / static_cast<double>(d.size());
    double sq = 0.0;
    for (double v : d) sq += (v - d[0] - mean) * (v - d[0] - mean);
    return std::sqrt(sq / static_cast<double>(d.size() - 1));
}

double gd(std::span<const ObjectivePair> local, const ReferenceFront& reference, const DistanceOptions& options) {
    if (local.empty()) throw std::domain_error("GD of an empty front");
    return gd_from_distances(nearest_distances(local, reference, options));
}

double sp(std::span<const ObjectivePair> local, const ReferenceFront& reference, const DistanceOptions& options) {
    if (local.size() < 2) throw std::domain_error("SP needs at least two points");
    return sp_from_distances(nearest_distances(local, reference, options));
}

bool in_front(const ObjectivePair& p, const ReferenceFront& reference, double tol) {
    return std::any_of(reference.points.begin(), reference.points.end(), [&](const ObjectivePair& q) {
        return std::abs(p.f_r - q.f_r) <= tol && std::abs(p.f_c - q.f_c) <= tol;
    });
}

namespace {

struct GdSp {
    std::optional<double> gd;
    std::optional<double> sp;
};

GdSp metrics_of(std::span<const ObjectivePair> pts, const ReferenceFront& ref, const DistanceOptions& opt) {
    GdSp out;
    if (pts.empty() || ref.points.empty()) return out;
    const auto d = nearest_distances(pts, ref, opt);
    out.gd = gd_from_distances(d);
    if (d.size() >= 2) out.sp = sp_from_distances(d);
    return out;
}

std::optional<double> mean_of(const std::vector<double>& v) {
    if (v.empty()) return std::nullopt;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::vector<MetricsRow> tabulate(std::span<const AlgorithmRecords> groups, const ReferenceFront& reference,
                                 const TabulateOptions& options) {
    std::vector<MetricsRow> rows;
    for (const auto& g : groups) {
        MetricsRow row;
        row.algorithm = g.algorithm;
        row.runs = g.records.size();
        const auto pooled = feasible_objectives(g.records);
        for (const auto& rec : g.records) row.n_inf += rec.infeasible_count();
        row.n_lns = pooled.size();
        for (const auto& p : pooled) row.n_gns += in_front(p, reference);

        if (options.mode == MetricsMode::pooled) {
            const auto m = metrics_of(pooled, reference, options.distance);
            row.gd = m.gd;
            row.sp = m.sp;
        } else {
            std::vector<double> gds, sps;
            for (const auto& rec : g.records) {
                const auto pts = feasible_objectives(std::span(&rec, 1));
                const auto m = metrics_of(pts, reference, options.distance);
                if (m.gd) gds.push_back(*m.gd);
                if (m.sp) sps.push_back(*m.sp);
            }
            row.gd = mean_of(gds);
            row.sp = mean_of(sps);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows, std::optional<int> problem_id) {
    if (problem_id) out << "problem,";
    out << "algorithm,runs,n_lns,n_gns,n_inf,gd,sp\n";
    for (const auto& r : rows) {
        if (problem_id) out << *problem_id << ',';
        out << r.algorithm << ',' << r.runs << ',' << r.n_lns << ',' << r.n_gns << ',' << r.n_inf << ','
            << (r.gd ? format_double(*r.gd) : "") << ',' << (r.sp ? format_double(*r.sp) : "") << '\n';
    }
}

std::string_view to_string(GapIndex idx) {
    switch (idx) {
        case GapIndex::n_lns: return "n_lns";
        case GapIndex::n_gns: return "n_gns";
        case GapIndex::n_inf: return "n_inf";
        case GapIndex::gd: return "gd";
        case GapIndex::sp: return "sp";
    }
    return "unknown";
}

GapCell level_gap(std::optional<double> level0, std::optional<double> level1, bool higher_is_better,
                  GapDenominator denominator) {
    GapCell cell{level0, level1, std::nullopt, std::nullopt};
    if (!level0 || !level1) return cell;
    const double a = *level0, b = *level1;
    if (a != b) cell.better_level = (higher_is_better ? b > a : b < a) ? 1 : 0;
    const double better = cell.better_level.value_or(0) == 1 ? b : a;
    const double denom = denominator == GapDenominator::larger_level ? std::max(std::abs(a), std::abs(b))
                                                                     : std::abs(better);
    if (a == b) {
        cell.gap_percent = 0.0;
    } else if (denom > 0) {
        cell.gap_percent = std::abs(a - b) / denom * 100.0;
    }
    return cell;
}

std::vector<FactorGaps> factorial_gap(std::span<const MetricsRow> rows, const GapOptions& options) {
    std::array<const MetricsRow*, 8> by_code{};
    for (const auto& flags : VariantFlags::all()) {
        const auto name = flags.name();
        const auto it = std::find_if(rows.begin(), rows.end(), [&](const MetricsRow& r) { return r.algorithm == name; });
        if (it == rows.end()) throw ConfigError("factorial gap needs a row for " + name);
        const int code = (flags.replacement == Replacement::survival_of_fittest ? 4 : 0) +
                         (flags.update_scope == UpdateScope::one_variable ? 2 : 0) +
                         (flags.pbest == PBestUse::without_pbest ? 1 : 0);
        by_code[code] = &*it;
    }

    auto value = [](const MetricsRow& r, GapIndex idx) -> std::optional<double> {
        switch (idx) {
            case GapIndex::n_lns: return static_cast<double>(r.n_lns);
            case GapIndex::n_gns: return static_cast<double>(r.n_gns);
            case GapIndex::n_inf: return static_cast<double>(r.n_inf);
            case GapIndex::gd: return r.gd;
            case GapIndex::sp: return r.sp;
        }
        return std::nullopt;
    };

    std::vector<FactorGaps> out;
    for (int factor = 1; factor <= 3; ++factor) {
        const int bit = 1 << (3 - factor);
        FactorGaps fg;
        fg.factor = factor;
        for (std::size_t k = 0; k < kGapIndices.size(); ++k) {
            const auto idx = kGapIndices[k];
            std::array<std::vector<double>, 2> levels;
            for (int code = 0; code < 8; ++code) {
                if (auto v = value(*by_code[code], idx)) levels[(code & bit) ? 1 : 0].push_back(*v);
            }
            const bool higher = idx == GapIndex::n_lns || idx == GapIndex::n_gns ||
                                (idx == GapIndex::sp && options.sp_higher_is_better);
            fg.cells[k] = level_gap(mean_of(levels[0]), mean_of(levels[1]), higher, options.denominator);
        }
        out.push_back(fg);
    }
    return out;
}

nlohmann::json gap_table_json(std::span<const FactorGaps> gaps, const GapOptions& options,
                              std::optional<int> problem_id) {
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& fg : gaps) {
        nlohmann::json level0, level1, gap, better;
        for (std::size_t k = 0; k < kGapIndices.size(); ++k) {
            const std::string key(to_string(kGapIndices[k]));
            const auto& c = fg.cells[k];
            level0[key] = opt(c.level0);
            level1[key] = opt(c.level1);
            gap[key] = opt(c.gap_percent);
            better[key] = c.better_level ? nlohmann::json(*c.better_level) : nlohmann::json(nullptr);
        }
        factors.push_back({{"factor", fg.factor},
                           {"level_0", level0},
                           {"level_1", level1},
                           {"gap_percent", gap},
                           {"better_level", better}});
    }
    nlohmann::json j = {
        {"factors", factors},
        {"sp_direction", options.sp_higher_is_better ? "higher_is_better" : "lower_is_better"},
        {"gap_denominator", options.denominator == GapDenominator::larger_level ? "larger_level" : "better_level"},
        {"notes",
         {"SP direction is ambiguous: larger SP is read as more diversity, yet smaller SP values are "
          "conventionally marked best; rerun with the opposite direction to compare."}}};
    if (problem_id) j["problem"] = *problem_id;
    return j;
}

}  // namespace rrap
