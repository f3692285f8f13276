#include "rrap/model.hpp"
#include "rrap/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rrap {
namespace {

// Slack allowed when checking decoded fractions against the bounds.
constexpr double kBoundTol = 1e-12;

void check_lengths(const RrapProblem& problem, std::size_t n_len, std::size_t r_len) {
    if (n_len != problem.n_sub() || r_len != problem.n_sub()) {
        throw std::invalid_argument("expected " + std::to_string(problem.n_sub()) +
                                    " subsystems, got n=" + std::to_string(n_len) +
                                    " r=" + std::to_string(r_len));
    }
}

std::vector<SubsystemParams> table(std::initializer_list<std::array<double, 4>> rows) {
    std::vector<SubsystemParams> out;
    for (const auto& row : rows) {
        // alpha is tabulated as alpha * 10^5
        out.push_back({row[0] / 1e5, row[1], row[2], row[3]});
    }
    return out;
}

}  // namespace

std::string_view to_string(SystemStructure s) {
    switch (s) {
        case SystemStructure::series: return "series";
        case SystemStructure::series_parallel: return "series_parallel";
        case SystemStructure::bridge: return "bridge";
    }
    return "unknown";
}

std::string_view to_string(FormulaMode m) {
    return m == FormulaMode::literal ? "literal" : "standard_active";
}

SystemStructure parse_structure(std::string_view s) {
    if (s == "series") return SystemStructure::series;
    if (s == "series_parallel") return SystemStructure::series_parallel;
    if (s == "bridge") return SystemStructure::bridge;
    throw std::invalid_argument("unknown system structure '" + std::string(s) + "'");
}

FormulaMode parse_formula_mode(std::string_view s) {
    if (s == "standard_active") return FormulaMode::standard_active;
    if (s == "literal") return FormulaMode::literal;
    throw std::invalid_argument("unknown formula mode '" + std::string(s) + "'");
}

double RrapProblem::r_clamp_hi() const noexcept { return std::min(r_ub, kReliabilityClampHi); }

void RrapProblem::validate() const {
    if (subsystems.empty()) throw std::invalid_argument("problem has no subsystems");
    if (structure != SystemStructure::series && subsystems.size() != 5) {
        throw std::invalid_argument(std::string(to_string(structure)) +
                                    " structure requires exactly 5 subsystems");
    }
    for (std::size_t i = 0; i < subsystems.size(); ++i) {
        const auto& s = subsystems[i];
        if (!(s.alpha > 0 && s.beta > 0 && s.vol_coeff > 0 && s.weight > 0)) {
            throw std::invalid_argument("subsystem " + std::to_string(i) +
                                        " has a nonpositive coefficient");
        }
    }
    if (!(v_ub > 0 && c_ub > 0 && w_ub > 0)) throw std::invalid_argument("constraint bounds must be positive");
    if (!(mission_time > 0)) throw std::invalid_argument("mission time must be positive");
    if (!(1 <= n_lb && n_lb <= n_ub)) throw std::invalid_argument("need 1 <= n_lb <= n_ub");
    if (!(0 < r_lb && r_lb < r_ub && r_ub <= 1)) throw std::invalid_argument("need 0 < r_lb < r_ub <= 1");
    if (!(r_lb <= r_clamp_hi())) throw std::invalid_argument("r_lb above the reliability clamp");
    if (!(reliability_floor > 0)) throw std::invalid_argument("reliability floor must be positive");
}

RrapProblem builtin_problem(int id) {
    RrapProblem p;
    p.id = id;
    switch (id) {
        case 1:
        case 3:
            p.structure = id == 1 ? SystemStructure::series : SystemStructure::bridge;
            p.subsystems = table({{2.330, 1.5, 1, 7},
                                  {1.450, 1.5, 2, 8},
                                  {0.541, 1.5, 3, 8},
                                  {8.050, 1.5, 4, 6},
                                  {1.950, 1.5, 2, 9}});
            p.v_ub = 110;
            p.c_ub = 175;
            p.w_ub = 200;
            break;
        case 2:
            p.structure = SystemStructure::series_parallel;
            p.subsystems = table({{2.500, 1.5, 2, 3.5},
                                  {1.450, 1.5, 4, 4.0},
                                  {0.541, 1.5, 5, 4.0},
                                  {0.541, 1.5, 8, 3.5},
                                  {2.100, 1.5, 4, 4.5}});
            p.v_ub = 180;
            p.c_ub = 175;
            p.w_ub = 100;
            break;
        case 4:
            p.structure = SystemStructure::series;
            p.subsystems = table({{1, 1.5, 1, 6}, {2.3, 1.5, 2, 6}, {0.3, 1.5, 3, 8}, {2.3, 1.5, 2, 7}});
            p.v_ub = 250.0;
            p.c_ub = 400.0;
            p.w_ub = 500.0;
            break;
        default:
            throw std::invalid_argument("no built-in benchmark with id " + std::to_string(id));
    }
    return p;
}

Decoded decode(const RrapProblem& problem, const MixedSolution& sol) {
    if (sol.genes.size() != problem.n_sub()) {
        throw std::domain_error("solution has " + std::to_string(sol.genes.size()) +
                                " genes, problem has " + std::to_string(problem.n_sub()));
    }
    Decoded out;
    out.redundancies.reserve(sol.genes.size());
    out.reliabilities.reserve(sol.genes.size());
    const double r_hi = problem.r_clamp_hi();
    for (std::size_t j = 0; j < sol.genes.size(); ++j) {
        const double x = sol.genes[j];
        if (!std::isfinite(x)) throw std::domain_error("gene " + std::to_string(j) + " is not finite");
        const double whole = std::floor(x);
        const double frac = x - whole;
        if (whole < problem.n_lb || whole > problem.n_ub || frac < problem.r_lb - kBoundTol ||
            frac > r_hi + kBoundTol) {
            throw std::domain_error("gene " + std::to_string(j) + " = " + std::to_string(x) +
                                    " is outside the encoding bounds");
        }
        out.redundancies.push_back(static_cast<int>(whole));
        out.reliabilities.push_back(frac);
    }
    return out;
}

MixedSolution encode(std::span<const int> n, std::span<const double> r) {
    if (n.size() != r.size()) throw std::invalid_argument("encode: length mismatch");
    MixedSolution sol;
    sol.genes.reserve(n.size());
    for (std::size_t j = 0; j < n.size(); ++j) sol.genes.push_back(static_cast<double>(n[j]) + r[j]);
    return sol;
}

double system_reliability(const RrapProblem& problem, std::span<const int> n,
                          std::span<const double> r) {
    check_lengths(problem, n.size(), r.size());
    const bool literal = problem.formula_mode == FormulaMode::literal &&
                         problem.structure != SystemStructure::series;
    std::vector<double> R(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
        R[i] = literal ? std::pow(r[i], n[i]) : 1.0 - std::pow(1.0 - r[i], n[i]);
    }

    double rs = 0.0;
    switch (problem.structure) {
        case SystemStructure::series:
            rs = 1.0;
            for (double v : R) rs *= v;
            break;
        case SystemStructure::series_parallel: {
            const double lower = 1.0 - (1.0 - R[2]) * (1.0 - R[3]);
            rs = 1.0 - (1.0 - R[0] * R[1]) * (1.0 - lower * R[4]);
            break;
        }
        case SystemStructure::bridge: {
            const double r1 = R[0], r2 = R[1], r3 = R[2], r4 = R[3], r5 = R[4];
            rs = r1 * r2 + r3 * r4 + r1 * r4 * r5 + r2 * r3 * r5 - r1 * r2 * r3 * r4 -
                 r1 * r2 * r3 * r5 - r1 * r2 * r4 * r5 - r1 * r3 * r4 * r5 - r2 * r3 * r4 * r5 +
                 2.0 * r1 * r2 * r3 * r4 * r5;
            break;
        }
    }
    return std::clamp(rs, 0.0, 1.0);
}

ConstraintValues constraints(const RrapProblem& problem, std::span<const int> n,
                             std::span<const double> r) {
    check_lengths(problem, n.size(), r.size());
    ConstraintValues g;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (!(r[i] > 0.0 && r[i] < 1.0)) {
            throw std::domain_error("cost is singular at r[" + std::to_string(i) +
                                    "] = " + std::to_string(r[i]));
        }
        const auto& s = problem.subsystems[i];
        const double ni = n[i];
        const double growth = std::exp(ni / 4.0);
        g.g_v += s.vol_coeff * ni * ni;
        g.g_c += s.alpha * std::pow(-problem.mission_time / std::log(r[i]), s.beta) * (ni + growth);
        g.g_w += s.weight * ni * growth;
    }
    return g;
}

PenalizedPair penalize(const RrapProblem& problem, double r_s, const ConstraintValues& g,
                       double reliability_floor) {
    if (!(g.g_v > 0 && g.g_c > 0 && g.g_w > 0)) {
        throw std::domain_error("penalize: constraint values must be positive");
    }
    if (!(r_s >= 0)) throw std::domain_error("penalize: negative system reliability");
    if (!(reliability_floor > 0)) throw std::domain_error("penalize: reliability floor must be positive");

    double m = std::min({r_s / reliability_floor, problem.v_ub / g.g_v, problem.w_ub / g.g_w,
                         problem.c_ub / g.g_c});
    if (problem.cap_penalty) m = std::min(m, 1.0);
    if (!(m > 0)) throw std::domain_error("penalize: zero penalty factor (r_s = 0)");
    const double m3 = m * m * m;
    return {r_s * m3, g.g_c / m3, m};
}

bool is_feasible(const RrapProblem& problem, std::span<const int> n, std::span<const double> r,
                 const ConstraintValues& g) {
    if (g.g_v > problem.v_ub || g.g_c > problem.c_ub || g.g_w > problem.w_ub) return false;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] < problem.n_lb || n[i] > problem.n_ub) return false;
        if (r[i] < problem.r_lb - kBoundTol || r[i] > problem.r_ub) return false;
    }
    return true;
}

Evaluation evaluate_components(const RrapProblem& problem, std::span<const int> n,
                               std::span<const double> r) {
    check_lengths(problem, n.size(), r.size());
    std::vector<double> rc(r.begin(), r.end());
    for (auto& v : rc) {
        if (!std::isfinite(v)) throw std::domain_error("reliability is not finite");
        v = std::min(v, kReliabilityClampHi);
    }

    Evaluation e;
    e.r_s = system_reliability(problem, n, rc);
    const auto g = constraints(problem, n, rc);
    e.g_v = g.g_v;
    e.g_c = g.g_c;
    e.g_w = g.g_w;
    const auto pen = penalize(problem, e.r_s, g, problem.reliability_floor);
    e.f_r = pen.f_r;
    e.f_c = pen.f_c;
    e.feasible = is_feasible(problem, n, rc, g);
    e.qualified = is_qualified(e.f_r, e.f_c);
    return e;
}

Evaluation evaluate(const RrapProblem& problem, const MixedSolution& sol) {
    const auto d = decode(problem, sol);
    return evaluate_components(problem, d.redundancies, d.reliabilities);
}

double random_gene(const RrapProblem& problem, RandomSource& rng) {
    const int n = rng.uniform_int(problem.n_lb, problem.n_ub);
    const double hi = problem.r_clamp_hi();
    const double r = std::min(rng.uniform_real(problem.r_lb, hi), hi);
    return static_cast<double>(n) + r;
}

MixedSolution random_solution(const RrapProblem& problem, RandomSource& rng) {
    MixedSolution sol;
    sol.genes.reserve(problem.n_sub());
    for (std::size_t j = 0; j < problem.n_sub(); ++j) sol.genes.push_back(random_gene(problem, rng));
    return sol;
}

}  // namespace rrap
