#pragma once

// Distributional and correlation statistics of a weighted graph: degree /
// strength / weight distributions, power-law exponent fits (discrete MLE
// and log-binned least squares), neighbor-degree mixing and the
// strength-degree / weight-degree-product correlation curves.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tagnet/graph.hpp"

namespace tagnet {

enum class DistributionKind { degree, strength, weight };
const char* to_string(DistributionKind k);

struct EmpiricalDistribution {
    DistributionKind kind = DistributionKind::degree;
    std::vector<std::uint64_t> samples;                           // multiset, values >= 1
    std::vector<std::pair<std::uint64_t, std::uint64_t>> support; // sorted (value, count)
};

enum class FitMethod { mle, logbin_ls };
const char* to_string(FitMethod m);

struct PowerLawFit {
    double gamma = 0;       // positive decay magnitude
    std::uint64_t x_min = 1;
    std::optional<std::uint64_t> x_max;  // optional cutoff restriction
    FitMethod method = FitMethod::mle;
    double stderr_ = 0;
    std::size_t n_tail = 0;  // samples inside [x_min, x_max]
};

enum class CurveKind { knn, strength_vs_degree, weight_vs_kk, permanence_vs_degree };
const char* to_string(CurveKind k);

// Means over multiplicative base-2 bins anchored at 1. Bin "centers" are
// the mean of the x samples that landed in the bin; empty bins are
// dropped, so x is strictly increasing.
struct BinnedCurve {
    CurveKind kind = CurveKind::knn;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<std::uint64_t> counts;
    std::optional<double> loglog_slope;  // LS slope of log y vs log x over bins
};

// Hurwitz zeta for s > 1, a >= 1 (Euler-Maclaurin, abs error ~1e-12).
double hurwitz_zeta(double s, double a);
// Finite sum_{x=a}^{b} x^-s, any s.
double power_sum(double s, std::uint64_t a, std::uint64_t b);

EmpiricalDistribution distribution(const WeightedGraph& g, DistributionKind kind);

// Zeta-normalized discrete maximum likelihood (mle) or least-squares slope
// of the log-binned density (logbin_ls). Requires >= 10 tail samples and a
// non-degenerate tail. The mle search runs to 1e-6.
PowerLawFit fit_power_law(const EmpiricalDistribution& dist, std::uint64_t x_min,
                          FitMethod method, std::optional<std::uint64_t> x_max = std::nullopt);

// Per-vertex average neighbor degree, k_nn(i) = (sum of neighbor degrees) / k_i.
std::vector<double> knn_values(const WeightedGraph& g);
BinnedCurve knn_curve(const WeightedGraph& g);

// strength_vs_degree: mean strength per degree bin.
// weight_vs_kk: mean edge weight per bin of k_u * k_v (0.5 slope is the
// random-graph baseline the curve is compared against).
BinnedCurve correlation_curve(const WeightedGraph& g, CurveKind kind);

// Shared binning helper (also used by the temporal module).
BinnedCurve bin_log2(const std::vector<std::pair<double, double>>& xy, CurveKind kind,
                     bool with_slope);

}  // namespace tagnet
