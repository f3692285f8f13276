#pragma once

#include <cstdint>
#include <random>

#include "rrap/model.hpp"

namespace rrap {

/// Source of uniform variates consumed by the solvers. Tests substitute a
/// scripted implementation to pin down individual draws.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    /// Uniform on [0, 1).
    virtual double uniform01() = 0;
    /// Uniform on {0, ..., n - 1}; n > 0.
    virtual std::uint64_t below(std::uint64_t n) = 0;

    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }
    double uniform_real(double lo, double hi) { return lo + uniform01() * (hi - lo); }
};

/// 64-bit Mersenne twister with platform-independent conversions, so a seed
/// reproduces the same stream under any standard library.
class Rng final : public RandomSource {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() override {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::uint64_t below(std::uint64_t n) override {
        // rejection sampling on the largest multiple of n
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

private:
    std::mt19937_64 engine_;
};

/// One gene drawn uniformly: integer part on [n_lb, n_ub], then fraction on
/// [r_lb, r_clamp_hi]. Consumes exactly two draws.
double random_gene(const RrapProblem& problem, RandomSource& rng);
MixedSolution random_solution(const RrapProblem& problem, RandomSource& rng);

}  // namespace rrap
