#include "tagnet/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tagnet/error.hpp"

namespace tagnet {

namespace {

// Largest component among vertices with alive[v], as a count.
std::size_t largest_component_size(const WeightedGraph& g, const std::vector<char>& alive) {
    const std::size_t n = g.vertex_count();
    std::vector<char> visited(n, 0);
    std::vector<VertexId> stack;
    std::size_t best = 0;
    for (VertexId s = 0; s < n; ++s) {
        if (!alive[s] || visited[s]) continue;
        std::size_t size = 0;
        visited[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            ++size;
            for (const auto& nb : g.neighbors(v)) {
                if (alive[nb.to] && !visited[nb.to]) {
                    visited[nb.to] = 1;
                    stack.push_back(nb.to);
                }
            }
        }
        best = std::max(best, size);
    }
    return best;
}

}  // namespace

double largest_component_fraction(const WeightedGraph& g) {
    const std::size_t n = g.vertex_count();
    if (n == 0) return 0.0;
    std::vector<char> alive(n, 1);
    return double(largest_component_size(g, alive)) / double(n);
}

PercolationCurve targeted_attack_curve(const WeightedGraph& g, double step_fraction,
                                       bool adaptive) {
    if (!(step_fraction > 0.0) || step_fraction > 1.0)
        throw Error("step_fraction must be in (0, 1]");
    const std::size_t n = g.vertex_count();

    PercolationCurve curve;
    curve.variant = "original";
    if (n == 0) {
        curve.fractions = {0.0};
        curve.lcc = {0.0};
        curve.lcc_min = curve.lcc;
        curve.lcc_max = curve.lcc;
        return curve;
    }

    const std::size_t batch = static_cast<std::size_t>(std::ceil(step_fraction * double(n)));
    std::vector<char> alive(n, 1);
    std::vector<std::uint32_t> deg(n);
    for (VertexId v = 0; v < n; ++v) deg[v] = g.degree(v);

    // static mode: one ranking up front; ties broken by ascending index
    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](VertexId a, VertexId b) { return deg[a] > deg[b]; });

    curve.fractions.push_back(0.0);
    curve.lcc.push_back(double(largest_component_size(g, alive)) / double(n));

    std::size_t removed = 0;
    std::size_t cursor = 0;
    while (removed < n) {
        const std::size_t take = std::min(batch, n - removed);
        if (adaptive) {
            // pick the top `take` remaining by current degree, index ascending on ties
            std::vector<VertexId> remaining;
            remaining.reserve(n - removed);
            for (VertexId v = 0; v < n; ++v)
                if (alive[v]) remaining.push_back(v);
            std::partial_sort(remaining.begin(), remaining.begin() + std::ptrdiff_t(take),
                              remaining.end(), [&](VertexId a, VertexId b) {
                                  return deg[a] != deg[b] ? deg[a] > deg[b] : a < b;
                              });
            for (std::size_t i = 0; i < take; ++i) {
                VertexId v = remaining[i];
                alive[v] = 0;
                for (const auto& nb : g.neighbors(v))
                    if (alive[nb.to] && deg[nb.to] > 0) --deg[nb.to];
            }
        } else {
            for (std::size_t i = 0; i < take; ++i) alive[order[cursor++]] = 0;
        }
        removed += take;
        curve.fractions.push_back(double(removed) / double(n));
        curve.lcc.push_back(double(largest_component_size(g, alive)) / double(n));
    }
    curve.lcc_min = curve.lcc;
    curve.lcc_max = curve.lcc;
    return curve;
}

PercolationCurve ensemble_curve(const std::vector<PercolationCurve>& replicas,
                                const std::string& variant, double step_fraction) {
    if (replicas.empty()) throw Error("ensemble_curve: no replicas");
    PercolationCurve out;
    out.variant = variant;
    const std::size_t steps = static_cast<std::size_t>(std::ceil(1.0 / step_fraction));
    for (std::size_t i = 0; i <= steps; ++i) {
        const double f = std::min(1.0, double(i) * step_fraction);
        double sum = 0, lo = 1e300, hi = -1e300;
        for (const auto& r : replicas) {
            // step-function evaluation: S at the last recorded f' <= f
            std::size_t k = 0;
            while (k + 1 < r.fractions.size() && r.fractions[k + 1] <= f + 1e-12) ++k;
            const double s = r.lcc[k];
            sum += s;
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        out.fractions.push_back(f);
        out.lcc.push_back(sum / double(replicas.size()));
        out.lcc_min.push_back(lo);
        out.lcc_max.push_back(hi);
    }
    return out;
}

}  // namespace tagnet
