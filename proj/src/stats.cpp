#include "tagnet/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "tagnet/error.hpp"

namespace tagnet {

const char* to_string(DistributionKind k) {
    switch (k) {
        case DistributionKind::degree: return "degree";
        case DistributionKind::strength: return "strength";
        case DistributionKind::weight: return "weight";
    }
    return "?";
}

const char* to_string(FitMethod m) {
    return m == FitMethod::mle ? "mle" : "logbin-ls";
}

const char* to_string(CurveKind k) {
    switch (k) {
        case CurveKind::knn: return "knn";
        case CurveKind::strength_vs_degree: return "strength_vs_degree";
        case CurveKind::weight_vs_kk: return "weight_vs_kk";
        case CurveKind::permanence_vs_degree: return "permanence_vs_degree";
    }
    return "?";
}

double hurwitz_zeta(double s, double a) {
    // direct terms plus Euler-Maclaurin tail starting at a+N
    constexpr int N = 16;
    double sum = 0;
    for (int k = 0; k < N; ++k) sum += std::pow(a + k, -s);
    const double t = a + N;
    const double ts = std::pow(t, -s);
    sum += t * ts / (s - 1);  // t^(1-s)/(s-1)
    sum += 0.5 * ts;
    const double t1 = ts / t;
    sum += s * t1 / 12.0;
    const double t3 = t1 / (t * t);
    sum -= s * (s + 1) * (s + 2) * t3 / 720.0;
    const double t5 = t3 / (t * t);
    sum += s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * t5 / 30240.0;
    return sum;
}

double power_sum(double s, std::uint64_t a, std::uint64_t b) {
    if (b < a) return 0;
    if (b - a <= 4096) {
        double sum = 0;
        for (std::uint64_t x = a; x <= b; ++x) sum += std::pow(double(x), -s);
        return sum;
    }
    if (s > 1)
        return hurwitz_zeta(s, double(a)) - hurwitz_zeta(s, double(b + 1));
    // Euler-Maclaurin on the finite sum; the formula below is the
    // difference of two expansions, valid for any s.
    auto em = [s](double t) {
        const double ts = std::pow(t, -s);
        double v = -t * ts / (1 - s);  // -t^(1-s)/(1-s) antiderivative part
        v += 0.5 * ts;
        const double t1 = ts / t;
        v += s * t1 / 12.0;
        const double t3 = t1 / (t * t);
        v -= s * (s + 1) * (s + 2) * t3 / 720.0;
        return v;
    };
    constexpr std::uint64_t head = 16;
    double sum = 0;
    for (std::uint64_t x = a; x < a + head; ++x) sum += std::pow(double(x), -s);
    return sum + em(double(a + head)) - em(double(b + 1));
}

EmpiricalDistribution distribution(const WeightedGraph& g, DistributionKind kind) {
    if (g.vertex_count() == 0) throw Error("empty graph");
    EmpiricalDistribution d;
    d.kind = kind;
    switch (kind) {
        case DistributionKind::degree:
            for (VertexId v = 0; v < g.vertex_count(); ++v) d.samples.push_back(g.degree(v));
            break;
        case DistributionKind::strength:
            for (VertexId v = 0; v < g.vertex_count(); ++v) d.samples.push_back(g.strength(v));
            break;
        case DistributionKind::weight:
            for (const auto& e : g.edges()) d.samples.push_back(e.w);
            break;
    }
    std::map<std::uint64_t, std::uint64_t> counts;
    for (auto v : d.samples) ++counts[v];
    d.support.assign(counts.begin(), counts.end());
    return d;
}

namespace {

// Golden-section minimum of f on [lo, hi] to the given x tolerance.
template <class F>
double golden_min(F f, double lo, double hi, double tol) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

PowerLawFit fit_mle(const std::vector<std::uint64_t>& tail, std::uint64_t x_min,
                    std::optional<std::uint64_t> x_max) {
    const double n = double(tail.size());
    double sum_log = 0;
    for (auto x : tail) sum_log += std::log(double(x));

    // log Z(gamma); infinite support needs gamma > 1
    auto log_norm = [&](double gamma) {
        double z = x_max ? power_sum(gamma, x_min, *x_max) : hurwitz_zeta(gamma, double(x_min));
        return std::log(z);
    };
    auto neg_ll = [&](double gamma) { return n * log_norm(gamma) + gamma * sum_log; };

    const double lo = x_max ? 0.01 : 1.000001;
    const double hi = 50.0;
    double gamma = golden_min(neg_ll, lo, hi, 1e-6);

    // stderr from the observed information (numerical curvature)
    const double h = 1e-4;
    double d2 = (neg_ll(gamma + h) - 2 * neg_ll(gamma) + neg_ll(gamma - h)) / (h * h);
    double se = d2 > 0 ? 1.0 / std::sqrt(d2) : 0.0;

    PowerLawFit fit;
    fit.gamma = gamma;
    fit.x_min = x_min;
    fit.x_max = x_max;
    fit.method = FitMethod::mle;
    fit.stderr_ = se;
    fit.n_tail = tail.size();
    return fit;
}

PowerLawFit fit_logbin(const std::vector<std::uint64_t>& tail, std::uint64_t x_min,
                       std::optional<std::uint64_t> x_max) {
    // base-2 multiplicative bins anchored at 1; density = count / width
    std::map<int, std::pair<double, std::uint64_t>> bins;  // exp -> (sum x, count)
    for (auto x : tail) {
        int b = std::ilogb(double(x));
        auto& [sx, c] = bins[b];
        sx += double(x);
        ++c;
    }
    if (bins.size() < 3) throw Error("tail too small: need >= 3 occupied log bins");

    std::vector<double> lx, ly;
    for (const auto& [b, acc] : bins) {
        const double width = std::ldexp(1.0, b);  // 2^b integers in [2^b, 2^(b+1))
        const double cx = acc.first / double(acc.second);
        const double density = double(acc.second) / width / double(tail.size());
        lx.push_back(std::log(cx));
        ly.push_back(std::log(density));
    }
    const std::size_t k = lx.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= double(k);
    my /= double(k);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    const double slope = sxy / sxx;
    double ssr = 0;
    for (std::size_t i = 0; i < k; ++i) {
        double r = ly[i] - my - slope * (lx[i] - mx);
        ssr += r * r;
    }
    const double se = k > 2 ? std::sqrt(ssr / double(k - 2) / sxx) : 0.0;

    PowerLawFit fit;
    fit.gamma = -slope;  // decay magnitude
    fit.x_min = x_min;
    fit.x_max = x_max;
    fit.method = FitMethod::logbin_ls;
    fit.stderr_ = se;
    fit.n_tail = tail.size();
    return fit;
}

}  // namespace

PowerLawFit fit_power_law(const EmpiricalDistribution& dist, std::uint64_t x_min,
                          FitMethod method, std::optional<std::uint64_t> x_max) {
    if (x_min < 1) throw Error("x_min must be >= 1");
    std::vector<std::uint64_t> tail;
    for (auto x : dist.samples)
        if (x >= x_min && (!x_max || x <= *x_max)) tail.push_back(x);
    if (tail.size() < 10) throw Error("tail too small: " + std::to_string(tail.size()) +
                                      " samples >= x_min");
    if (std::all_of(tail.begin(), tail.end(), [&](std::uint64_t v) { return v == tail[0]; }))
        throw Error("degenerate sample: zero variance in tail");
    return method == FitMethod::mle ? fit_mle(tail, x_min, x_max) : fit_logbin(tail, x_min, x_max);
}

BinnedCurve bin_log2(const std::vector<std::pair<double, double>>& xy, CurveKind kind,
                     bool with_slope) {
    std::map<int, std::array<double, 2>> bins;  // exp -> (sum x, sum y)
    std::map<int, std::uint64_t> counts;
    for (const auto& [x, y] : xy) {
        int b = std::ilogb(x);
        bins[b][0] += x;
        bins[b][1] += y;
        ++counts[b];
    }
    BinnedCurve curve;
    curve.kind = kind;
    for (const auto& [b, acc] : bins) {
        const double n = double(counts[b]);
        curve.x.push_back(acc[0] / n);
        curve.y.push_back(acc[1] / n);
        curve.counts.push_back(counts[b]);
    }
    if (with_slope && curve.x.size() >= 2) {
        double mx = 0, my = 0;
        std::size_t k = curve.x.size();
        std::vector<double> lx(k), ly(k);
        for (std::size_t i = 0; i < k; ++i) {
            lx[i] = std::log(curve.x[i]);
            ly[i] = std::log(curve.y[i]);
            mx += lx[i];
            my += ly[i];
        }
        mx /= double(k);
        my /= double(k);
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < k; ++i) {
            sxx += (lx[i] - mx) * (lx[i] - mx);
            sxy += (lx[i] - mx) * (ly[i] - my);
        }
        if (sxx > 0) curve.loglog_slope = sxy / sxx;
    }
    return curve;
}

std::vector<double> knn_values(const WeightedGraph& g) {
    std::vector<double> knn(g.vertex_count(), 0.0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) == 0) continue;
        double sum = 0;
        for (const auto& nb : g.neighbors(v)) sum += double(g.degree(nb.to));
        knn[v] = sum / double(g.degree(v));
    }
    return knn;
}

BinnedCurve knn_curve(const WeightedGraph& g) {
    if (g.edge_count() == 0) throw Error("empty graph: no edges");
    auto knn = knn_values(g);
    std::vector<std::pair<double, double>> xy;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) > 0) xy.emplace_back(double(g.degree(v)), knn[v]);
    return bin_log2(xy, CurveKind::knn, true);
}

BinnedCurve correlation_curve(const WeightedGraph& g, CurveKind kind) {
    if (g.edge_count() == 0) throw Error("empty graph: no edges");
    std::vector<std::pair<double, double>> xy;
    if (kind == CurveKind::strength_vs_degree) {
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (g.degree(v) > 0) xy.emplace_back(double(g.degree(v)), double(g.strength(v)));
    } else if (kind == CurveKind::weight_vs_kk) {
        for (const auto& e : g.edges())
            xy.emplace_back(double(g.degree(e.u)) * double(g.degree(e.v)), double(e.w));
    } else {
        throw Error("correlation_curve: unsupported kind");
    }
    return bin_log2(xy, kind, true);
}

}  // namespace tagnet
