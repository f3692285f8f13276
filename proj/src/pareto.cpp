#include "rrap/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rrap {

std::vector<std::size_t> nondominated_filter(std::span<const ObjectivePair> points) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (points[a].f_r != points[b].f_r) return points[a].f_r > points[b].f_r;
        if (points[a].f_c != points[b].f_c) return points[a].f_c < points[b].f_c;
        return a < b;
    });

    std::vector<std::size_t> kept;
    // lowest cost among points with strictly higher reliability than the current group
    double best_cost = std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    while (i < order.size()) {
        const double group_r = points[order[i]].f_r;
        const double group_min = points[order[i]].f_c;
        std::size_t k = i;
        for (; k < order.size() && points[order[k]].f_r == group_r; ++k) {
            if (points[order[k]].f_c == group_min && group_min < best_cost) kept.push_back(order[k]);
        }
        best_cost = std::min(best_cost, group_min);
        i = k;
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

std::vector<std::vector<std::size_t>> nondominated_sort(std::span<const ObjectivePair> points) {
    std::vector<std::vector<std::size_t>> layers;
    std::vector<std::size_t> remaining(points.size());
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});
    std::vector<ObjectivePair> sub;
    while (!remaining.empty()) {
        sub.clear();
        for (auto idx : remaining) sub.push_back(points[idx]);
        const auto local = nondominated_filter(sub);
        std::vector<std::size_t> layer;
        layer.reserve(local.size());
        std::vector<bool> taken(remaining.size(), false);
        for (auto l : local) {
            layer.push_back(remaining[l]);
            taken[l] = true;
        }
        std::vector<std::size_t> rest;
        rest.reserve(remaining.size() - local.size());
        for (std::size_t k = 0; k < remaining.size(); ++k) {
            if (!taken[k]) rest.push_back(remaining[k]);
        }
        layers.push_back(std::move(layer));
        remaining = std::move(rest);
    }
    return layers;
}

std::vector<double> crowding_distance(std::span<const ObjectivePair> front) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = front.size();
    if (n == 0) return {};
    if (n == 1) return {inf};

    std::vector<double> sum(n, 0.0);
    std::vector<bool> boundary(n, false);
    std::vector<double> values(n);
    for (int obj = 0; obj < 2; ++obj) {
        auto value = [&](std::size_t k) { return obj == 0 ? front[k].f_r : front[k].f_c; };
        for (std::size_t k = 0; k < n; ++k) values[k] = value(k);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        const double range = values.back() - values.front();
        if (range == 0.0) continue;  // degenerate objective contributes nothing

        for (std::size_t k = 0; k < n; ++k) {
            const double v = value(k);
            const auto pos = static_cast<std::size_t>(
                std::lower_bound(values.begin(), values.end(), v) - values.begin());
            if (pos == 0 || pos + 1 == values.size()) {
                boundary[k] = true;
                continue;
            }
            const double below = (v - values[pos - 1]) / range;
            const double above = (values[pos + 1] - v) / range;
            sum[k] += below * below + above * above;
        }
    }

    std::vector<double> d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = boundary[k] ? inf : std::sqrt(sum[k]);
    return d;
}

std::vector<std::size_t> select_by_crowding(std::span<const ObjectivePair> front, std::size_t keep) {
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (keep >= front.size()) return order;

    const auto crowd = crowding_distance(front);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (crowd[a] != crowd[b]) return crowd[a] > crowd[b];
        if (front[a].f_r != front[b].f_r) return front[a].f_r > front[b].f_r;
        if (front[a].f_c != front[b].f_c) return front[a].f_c < front[b].f_c;
        return a < b;
    });
    order.resize(keep);
    std::sort(order.begin(), order.end());
    return order;
}

ParetoArchive::ParetoArchive(std::size_t capacity) : capacity_(capacity) {}

InsertOutcome ParetoArchive::insert(ArchiveEntry entry) {
    const auto cand = entry.objectives();
    for (const auto& e : entries_) {
        if (dominates(e.objectives(), cand)) return InsertOutcome::rejected;
    }
    std::erase_if(entries_, [&](const ArchiveEntry& e) { return dominates(cand, e.objectives()); });
    entry.serial = next_serial_++;
    entries_.push_back(std::move(entry));
    return InsertOutcome::accepted;
}

std::size_t ParetoArchive::truncate() {
    if (entries_.size() <= capacity_) return 0;
    const auto objs = objectives();
    const auto crowd = crowding_distance(objs);
    const auto keep = select_by_crowding(objs, capacity_);

    std::vector<ArchiveEntry> survivors;
    survivors.reserve(keep.size());
    for (auto idx : keep) {
        entries_[idx].crowding = crowd[idx];
        survivors.push_back(std::move(entries_[idx]));
    }
    const std::size_t removed = entries_.size() - survivors.size();
    entries_ = std::move(survivors);
    return removed;
}

std::vector<ObjectivePair> ParetoArchive::objectives() const {
    std::vector<ObjectivePair> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.objectives());
    return out;
}

}  // namespace rrap
