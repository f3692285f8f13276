#pragma once

// Exhaustive lattice enumeration used as an independent reference front.

#include <cstdint>
#include <vector>

#include "rrap/metrics.hpp"
#include "rrap/model.hpp"

namespace rrap {

struct LatticeSpec {
    std::vector<std::vector<int>> n_values;     ///< per subsystem
    std::vector<std::vector<double>> r_values;  ///< per subsystem
    std::uint64_t ceiling = 10'000'000;

    /// Same value sets for every subsystem.
    static LatticeSpec uniform(std::size_t n_sub, std::vector<int> n, std::vector<double> r);
    /// Point count, saturating at UINT64_MAX.
    [[nodiscard]] std::uint64_t size() const;
};

struct LatticePoint {
    std::uint64_t index = 0;
    Evaluation evaluation;
};

struct OracleResult {
    ReferenceFront front;      ///< feasible nondominated set in (f_r, f_c)
    ReferenceFront raw_front;  ///< feasible nondominated set in (r_s, g_c)
    std::vector<MixedSolution> front_solutions;  ///< parallel to front.points
    std::vector<LatticePoint> dump;              ///< every lattice point, when requested
    std::uint64_t evaluated = 0;
    std::uint64_t feasible = 0;
};

/// Decodes a mixed-radix lattice index into (n, r).
Decoded lattice_point(const LatticeSpec& lattice, std::uint64_t index);

/// Throws ConfigError when the lattice exceeds its ceiling or does not match the problem.
OracleResult oracle_front(const RrapProblem& problem, const LatticeSpec& lattice, bool keep_dump = false);

}  // namespace rrap
