#pragma once

// Bi-objective active reliability-redundancy allocation model: benchmark
// definitions, the one-type mixed encoding, and the evaluation pipeline
// (system reliability, volume/cost/weight constraints, cubic penalties).

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rrap {

/// Per-subsystem coefficients of the volume/cost/weight constraints.
struct SubsystemParams {
    double alpha = 0.0;      ///< cost scale (already multiplied out of the 1e5 table scale)
    double beta = 0.0;       ///< cost exponent
    double vol_coeff = 0.0;  ///< volume coefficient q_i
    double weight = 0.0;     ///< weight coefficient w_i
};

enum class SystemStructure { series, series_parallel, bridge };

/// How the structure functions treat the per-subsystem terms.
///   standard_active: each term is the parallel-subsystem reliability 1 - (1 - r)^n
///   literal:         each term of the series-parallel/bridge formulas is r^n as printed
enum class FormulaMode { standard_active, literal };

std::string_view to_string(SystemStructure s);
std::string_view to_string(FormulaMode m);
SystemStructure parse_structure(std::string_view s);
FormulaMode parse_formula_mode(std::string_view s);

inline constexpr double kReliabilityClampHi = 1.0 - 1e-6;
inline constexpr double kQualifyMinReliability = 0.1;
inline constexpr double kQualifyMaxCost = 100000.0;

struct RrapProblem {
    int id = 0;
    SystemStructure structure = SystemStructure::series;
    std::vector<SubsystemParams> subsystems;
    double v_ub = 0.0;
    double c_ub = 0.0;
    double w_ub = 0.0;
    double mission_time = 1000.0;
    // Bounds are shared by every subsystem.
    int n_lb = 1;
    int n_ub = 10;
    double r_lb = 0.75;
    double r_ub = 1.0;
    /// R_lb in the penalty ratio R_s / R_lb.
    double reliability_floor = 0.75;
    FormulaMode formula_mode = FormulaMode::standard_active;
    /// Caps the penalty factor at 1 (sensitivity studies only; off reproduces the literal penalty).
    bool cap_penalty = false;

    [[nodiscard]] std::size_t n_sub() const noexcept { return subsystems.size(); }
    /// Largest reliability a gene may carry: min(r_ub, 1 - 1e-6).
    [[nodiscard]] double r_clamp_hi() const noexcept;

    /// Throws std::invalid_argument when a structural invariant is broken.
    void validate() const;
};

/// Benchmarks 1-4 with the classical constraint coefficients.
RrapProblem builtin_problem(int id);

/// Vector of reals x_j = n_j + r_j, integer part redundancy, fraction reliability.
struct MixedSolution {
    std::vector<double> genes;

    friend bool operator==(const MixedSolution&, const MixedSolution&) = default;
};

struct Decoded {
    std::vector<int> redundancies;
    std::vector<double> reliabilities;
};

/// Splits every gene into (floor, fraction). Throws std::domain_error naming the
/// first gene that violates the problem bounds.
Decoded decode(const RrapProblem& problem, const MixedSolution& sol);
MixedSolution encode(std::span<const int> n, std::span<const double> r);

double system_reliability(const RrapProblem& problem, std::span<const int> n,
                          std::span<const double> r);

struct ConstraintValues {
    double g_v = 0.0;
    double g_c = 0.0;
    double g_w = 0.0;
};

/// Volume, cost and weight sums. Throws std::domain_error if some r_i >= 1.
ConstraintValues constraints(const RrapProblem& problem, std::span<const int> n,
                             std::span<const double> r);

struct PenalizedPair {
    double f_r = 0.0;
    double f_c = 0.0;
    double factor = 0.0;  ///< m, the worst of the four ratios
};

PenalizedPair penalize(const RrapProblem& problem, double r_s, const ConstraintValues& g,
                       double reliability_floor);

struct Evaluation {
    double r_s = 0.0;
    double g_v = 0.0;
    double g_c = 0.0;
    double g_w = 0.0;
    double f_r = 0.0;
    double f_c = 0.0;
    bool feasible = false;
    bool qualified = false;

    friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

[[nodiscard]] inline bool is_qualified(double f_r, double f_c) noexcept {
    return f_r >= kQualifyMinReliability && f_c <= kQualifyMaxCost;
}

/// Raw-constraint plus bound check; does not look at the penalty.
bool is_feasible(const RrapProblem& problem, std::span<const int> n, std::span<const double> r,
                 const ConstraintValues& g);

/// Evaluates an explicit (n, r) pair without requiring it to respect the
/// encoding bounds. Reliabilities above 1 - 1e-6 are clamped before anything is
/// computed; points outside the problem bounds come back infeasible.
Evaluation evaluate_components(const RrapProblem& problem, std::span<const int> n,
                               std::span<const double> r);

/// decode -> system_reliability -> constraints -> penalize.
Evaluation evaluate(const RrapProblem& problem, const MixedSolution& sol);

}  // namespace rrap
