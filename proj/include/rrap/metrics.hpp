#pragma once

// Reference fronts, generational distance / spacing, Table-style tabulation and
// the two-level factorial gap analysis over the eight MOSSO variants.

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rrap/pareto.hpp"
#include "rrap/run_record.hpp"

namespace rrap {

class EmptyFrontError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class FrontProvenance { simulated, oracle };

struct ReferenceFront {
    std::vector<ObjectivePair> points;
    FrontProvenance provenance = FrontProvenance::simulated;
};

/// Nondominated filter of every feasible final-repository entry across records.
/// Throws EmptyFrontError when no record holds a feasible entry.
ReferenceFront build_simulated_front(std::span<const RunRecord> records);

/// Feasible entries' objectives, in record order.
std::vector<ObjectivePair> feasible_objectives(std::span<const RunRecord> records);

struct DistanceOptions {
    /// Scale each objective by the reference front's range before measuring.
    bool normalize = false;
};

/// d_i: Euclidean distance from each local point to its nearest reference point.
std::vector<double> nearest_distances(std::span<const ObjectivePair> local, const ReferenceFront& reference,
                                      const DistanceOptions& options = {});

/// sqrt(sum d_i^2) / N. Throws std::domain_error on empty input.
double gd_from_distances(std::span<const double> d);
/// Sample standard deviation of d_i. Throws std::domain_error when N < 2.
double sp_from_distances(std::span<const double> d);

double gd(std::span<const ObjectivePair> local, const ReferenceFront& reference,
          const DistanceOptions& options = {});
double sp(std::span<const ObjectivePair> local, const ReferenceFront& reference,
          const DistanceOptions& options = {});

/// Objective-space membership with 1e-12 absolute tolerance per coordinate.
bool in_front(const ObjectivePair& p, const ReferenceFront& reference, double tol = 1e-12);

struct MetricsRow {
    std::string algorithm;
    std::size_t runs = 0;
    std::size_t n_lns = 0;
    std::size_t n_gns = 0;
    std::size_t n_inf = 0;
    std::optional<double> gd;
    std::optional<double> sp;
};

enum class MetricsMode {
    pooled,        ///< GD/SP over every feasible entry of every run at once
    per_run_mean,  ///< GD/SP per run, then averaged over runs where they exist
};

struct TabulateOptions {
    MetricsMode mode = MetricsMode::pooled;
    DistanceOptions distance;
};

struct AlgorithmRecords {
    std::string algorithm;
    std::vector<RunRecord> records;
};

/// GD and SP stay empty for groups without feasible entries or against an empty reference.
std::vector<MetricsRow> tabulate(std::span<const AlgorithmRecords> groups, const ReferenceFront& reference,
                                 const TabulateOptions& options = {});

/// Header: algorithm,runs,n_lns,n_gns,n_inf,gd,sp (absent metrics are empty).
void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows, std::optional<int> problem_id = {});

enum class GapIndex { n_lns, n_gns, n_inf, gd, sp };
inline constexpr std::array<GapIndex, 5> kGapIndices{GapIndex::n_lns, GapIndex::n_gns, GapIndex::n_inf,
                                                     GapIndex::gd, GapIndex::sp};
std::string_view to_string(GapIndex idx);

enum class GapDenominator {
    larger_level,  ///< |a - b| / max(a, b), as the published gap tables compute it
    better_level,  ///< |better - worse| / better, with "better" taken by the index's sense
};

struct GapOptions {
    bool sp_higher_is_better = true;
    GapDenominator denominator = GapDenominator::larger_level;
};

struct GapCell {
    std::optional<double> level0;
    std::optional<double> level1;
    std::optional<int> better_level;
    std::optional<double> gap_percent;
};

struct FactorGaps {
    int factor = 0;  // 1 replacement, 2 update scope, 3 pBest
    std::array<GapCell, 5> cells;  // indexed like kGapIndices
};

/// Gap for one pair of level means.
GapCell level_gap(std::optional<double> level0, std::optional<double> level1, bool higher_is_better,
                  GapDenominator denominator);

/// Requires one row per MOSSO-000 ... MOSSO-111; throws ConfigError otherwise.
std::vector<FactorGaps> factorial_gap(std::span<const MetricsRow> rows, const GapOptions& options = {});

nlohmann::json gap_table_json(std::span<const FactorGaps> gaps, const GapOptions& options,
                              std::optional<int> problem_id = {});

}  // namespace rrap
