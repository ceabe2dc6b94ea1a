#pragma once

// Percolation under degree-targeted node removal: S(f) = size of the
// largest connected component relative to the original vertex count after
// removing the fraction f of highest-degree vertices.

#include <cstdint>
#include <string>
#include <vector>

#include "tagnet/graph.hpp"

namespace tagnet {

struct PercolationCurve {
    std::string variant;            // original | ab_initio | configuration
    std::vector<double> fractions;  // increasing, in [0, 1]
    std::vector<double> lcc;        // S(f), non-increasing
    // Filled by ensemble aggregation; equal to lcc for single runs.
    std::vector<double> lcc_min;
    std::vector<double> lcc_max;
};

double largest_component_fraction(const WeightedGraph& g);

// Vertices ranked by degree descending (ties by ascending vertex index)
// and removed in batches of ceil(step_fraction * N); after each batch,
// S(f) is recorded relative to the ORIGINAL N. With adaptive = true the
// ranking is recomputed on the remaining graph before every batch.
PercolationCurve targeted_attack_curve(const WeightedGraph& g, double step_fraction,
                                       bool adaptive = false);

// Pointwise mean/min/max of replica curves resampled (as step functions)
// onto the common grid f = i * step_fraction, so replicas of different
// sizes share one axis.
PercolationCurve ensemble_curve(const std::vector<PercolationCurve>& replicas,
                                const std::string& variant, double step_fraction);

}  // namespace tagnet
