#pragma once

// Dominance on (f_r maximized, f_c minimized), nondominated filtering and
// sorting, crowding distance, and the capacity-bounded repository.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rrap/model.hpp"

namespace rrap {

struct ObjectivePair {
    double f_r = 0.0;  // maximize
    double f_c = 0.0;  // minimize

    friend bool operator==(const ObjectivePair&, const ObjectivePair&) = default;
};

inline ObjectivePair objectives_of(const Evaluation& e) noexcept { return {e.f_r, e.f_c}; }

[[nodiscard]] constexpr bool dominates(const ObjectivePair& a, const ObjectivePair& b) noexcept {
    return a.f_r >= b.f_r && a.f_c <= b.f_c && (a.f_r > b.f_r || a.f_c < b.f_c);
}

/// Indices (ascending) of the points no other point dominates. Duplicates are
/// all kept. O(n log n) sweep.
std::vector<std::size_t> nondominated_filter(std::span<const ObjectivePair> points);

/// Successive nondominated layers; every index appears in exactly one layer.
std::vector<std::vector<std::size_t>> nondominated_sort(std::span<const ObjectivePair> points);

/// Per-point crowding. For each objective with a nonzero range the point adds
/// the squared normalized gaps to its nearest strictly smaller and strictly
/// larger values; a missing neighbour makes the point +infinity. A one-point
/// front is +infinity.
std::vector<double> crowding_distance(std::span<const ObjectivePair> front);

/// Indices of the `keep` points with the largest crowding; ties go to higher
/// f_r, then lower f_c, then lower index. Result is in ascending index order.
std::vector<std::size_t> select_by_crowding(std::span<const ObjectivePair> front, std::size_t keep);

struct ArchiveEntry {
    MixedSolution solution;
    Evaluation evaluation;
    double crowding = 0.0;     ///< transient, filled by truncate()
    std::uint64_t serial = 0;  ///< insertion order, assigned by the archive

    [[nodiscard]] ObjectivePair objectives() const noexcept { return objectives_of(evaluation); }
};

enum class InsertOutcome { accepted, rejected };

class ParetoArchive {
public:
    explicit ParetoArchive(std::size_t capacity);

    /// Rejects a candidate dominated by any member; otherwise adds it and
    /// evicts every member it dominates. Objective-space duplicates are kept.
    InsertOutcome insert(ArchiveEntry entry);

    /// Drops the lowest-crowding members until size() <= capacity(). Crowding is
    /// computed once over the current members. Returns the number removed.
    std::size_t truncate();

    [[nodiscard]] std::span<const ArchiveEntry> entries() const noexcept { return entries_; }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }
    [[nodiscard]] std::vector<ObjectivePair> objectives() const;

private:
    std::vector<ArchiveEntry> entries_;
    std::size_t capacity_;
    std::uint64_t next_serial_ = 0;
};

}  // namespace rrap
