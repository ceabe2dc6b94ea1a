#pragma once

// End-to-end orchestration: corpus -> graph -> stats -> nullmodel ->
// robustness -> community -> temporal, writing every stage's artifacts
// into one output directory plus a deterministic manifest. Timings go to
// a separate file so manifests of identical runs are byte-identical.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tagnet/corpus.hpp"
#include "tagnet/graph.hpp"
#include "tagnet/stats.hpp"
#include "tagnet/temporal.hpp"

namespace tagnet {

inline constexpr const char* kVersion = "1.0.0";

struct RunConfig {
    std::string input_path;
    CorpusFormat format = CorpusFormat::jsonl;
    CorpusConfig corpus;
    CooccurrenceScope scope = CooccurrenceScope::tweet;

    std::uint64_t fit_x_min = 1;
    std::optional<std::uint64_t> fit_x_max;
    FitMethod fit_method = FitMethod::mle;

    std::uint32_t null_replicas = 20;
    std::uint32_t swaps_per_edge = 10;

    double attack_step = 0.01;
    bool adaptive_attack = false;

    std::uint32_t louvain_runs = 5;
    double resolution = 1.0;
    std::uint32_t min_size = 1;

    ProjectionKind temporal_projection = ProjectionKind::semantic;
    int smooth_window = 7;
    std::vector<std::int64_t> phase_boundaries{40, 120};
    bool require_disappear = false;
    std::optional<std::pair<DayWindow, DayWindow>> flow_windows;  // default: first vs last phase

    std::string out_dir = "out";
    std::uint64_t seed = 1;
};

struct RunSummary {
    nlohmann::json manifest;
    nlohmann::json timings;
};

// Runs every stage in order. Stage failures surface as StageError with
// the stage name; unusable input surfaces as InputError. A `<stage>.partial`
// marker is left in out_dir when a stage aborts midway.
RunSummary run_pipeline(const RunConfig& config);

}  // namespace tagnet
