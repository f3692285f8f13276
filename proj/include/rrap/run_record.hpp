#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rrap/model.hpp"
#include "rrap/pareto.hpp"

namespace rrap {

/// One generation's counters.
struct TraceRow {
    int generation = 0;
    std::size_t archive_size = 0;      ///< after end-of-generation truncation
    std::size_t qualified_offers = 0;  ///< candidates that passed the qualification gate
    std::size_t accepted_inserts = 0;  ///< offers the archive accepted
    std::optional<double> c_g;         ///< gBest band width used (MOSSO only)

    friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

/// Final repository of one seeded run plus its trace and configuration echo.
struct RunRecord {
    std::string algorithm;
    int problem_id = 0;
    int run_index = 0;
    std::uint64_t seed = 0;
    nlohmann::json config;  ///< solver parameters as run
    std::vector<ArchiveEntry> entries;
    std::vector<TraceRow> trace;

    [[nodiscard]] std::size_t feasible_count() const;
    [[nodiscard]] std::size_t infeasible_count() const { return entries.size() - feasible_count(); }
};

/// Shortest round-trip decimal representation.
std::string format_double(double v);
double parse_double(std::string_view s);

/// Columns: index,f_r,f_c,r_s,g_v,g_c,g_w,feasible,n_1..n_k,r_1..r_k
void write_archive_csv(std::ostream& out, std::span<const ArchiveEntry> entries, std::size_t n_sub);
/// Reads entries back; qualified is recomputed from (f_r, f_c).
std::vector<ArchiveEntry> read_archive_csv(std::istream& in);

nlohmann::json record_sidecar(const RunRecord& record);

/// Writes <stem>.csv and <stem>.json; returns both paths.
std::pair<std::filesystem::path, std::filesystem::path> save_record(const RunRecord& record,
                                                                   const std::filesystem::path& stem);
RunRecord load_record(const std::filesystem::path& csv_path, const std::filesystem::path& json_path);

}  // namespace rrap
