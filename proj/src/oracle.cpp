#include "rrap/oracle.hpp"

#include <limits>
#include <string>

#include "rrap/errors.hpp"

namespace rrap {

LatticeSpec LatticeSpec::uniform(std::size_t n_sub, std::vector<int> n, std::vector<double> r) {
    LatticeSpec spec;
    spec.n_values.assign(n_sub, n);
    spec.r_values.assign(n_sub, r);
    return spec;
}

std::uint64_t LatticeSpec::size() const {
    std::uint64_t total = 1;
    auto mul = [&](std::size_t k) {
        if (k == 0) {
            total = 0;
        } else if (total > std::numeric_limits<std::uint64_t>::max() / k) {
            total = std::numeric_limits<std::uint64_t>::max();
        } else {
            total *= k;
        }
    };
    for (const auto& v : n_values) mul(v.size());
    for (const auto& v : r_values) mul(v.size());
    return total;
}

Decoded lattice_point(const LatticeSpec& lattice, std::uint64_t index) {
    Decoded d;
    // digit order, least significant first: n_1, r_1, n_2, r_2, ...
    for (std::size_t j = 0; j < lattice.n_values.size(); ++j) {
        const auto& nv = lattice.n_values[j];
        const auto& rv = lattice.r_values[j];
        d.redundancies.push_back(nv[index % nv.size()]);
        index /= nv.size();
        d.reliabilities.push_back(rv[index % rv.size()]);
        index /= rv.size();
    }
    return d;
}

OracleResult oracle_front(const RrapProblem& problem, const LatticeSpec& lattice, bool keep_dump) {
    const std::size_t k = problem.n_sub();
    if (lattice.n_values.size() != k || lattice.r_values.size() != k) {
        throw ConfigError("lattice has " + std::to_string(lattice.n_values.size()) + " subsystems, problem has " +
                          std::to_string(k));
    }
    const auto total = lattice.size();
    if (total == 0) throw ConfigError("lattice is empty");
    if (total > lattice.ceiling) {
        throw ConfigError("lattice of " + std::to_string(total) + " points exceeds the ceiling of " +
                          std::to_string(lattice.ceiling));
    }

    OracleResult out;
    if (keep_dump) out.dump.reserve(total);

    std::vector<std::size_t> n_digit(k, 0), r_digit(k, 0);
    std::vector<int> n(k);
    std::vector<double> r(k);
    std::vector<ObjectivePair> pen, raw;
    std::vector<std::uint64_t> feasible_idx;

    for (std::uint64_t idx = 0; idx < total; ++idx) {
        for (std::size_t j = 0; j < k; ++j) {
            n[j] = lattice.n_values[j][n_digit[j]];
            r[j] = lattice.r_values[j][r_digit[j]];
        }
        const auto e = evaluate_components(problem, n, r);
        ++out.evaluated;
        if (keep_dump) out.dump.push_back({idx, e});
        if (e.feasible) {
            ++out.feasible;
            pen.push_back({e.f_r, e.f_c});
            raw.push_back({e.r_s, e.g_c});
            feasible_idx.push_back(idx);
        }
        // advance the mixed-radix counter in lattice_point's digit order
        for (std::size_t j = 0; j < k; ++j) {
            if (++n_digit[j] < lattice.n_values[j].size()) break;
            n_digit[j] = 0;
            if (++r_digit[j] < lattice.r_values[j].size()) break;
            r_digit[j] = 0;
        }
    }

    out.front.provenance = FrontProvenance::oracle;
    out.raw_front.provenance = FrontProvenance::oracle;
    for (auto i : nondominated_filter(pen)) {
        out.front.points.push_back(pen[i]);
        const auto d = lattice_point(lattice, feasible_idx[i]);
        out.front_solutions.push_back(encode(d.redundancies, d.reliabilities));
    }
    for (auto i : nondominated_filter(raw)) out.raw_front.points.push_back(raw[i]);
    return out;
}

}  // namespace rrap
