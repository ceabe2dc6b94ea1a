#pragma once

// Temporal features: daily snapshot networks, Jaccard innovation series,
// moving-average smoothing, permanence times with community spans and
// entry/exit histograms, per-phase new-hashtag rankings, and user flow
// between two window partitions.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tagnet/community.hpp"
#include "tagnet/corpus.hpp"
#include "tagnet/graph.hpp"
#include "tagnet/stats.hpp"

namespace tagnet {

enum class ProjectionKind { semantic, interest };
const char* to_string(ProjectionKind k);

// One calendar day's projection, reduced to its label sets. Days with no
// records (or no co-occurrences) have empty sets.
struct Snapshot {
    std::int64_t day = 0;                                        // UTC day index
    std::vector<std::string> vertices;                           // sorted
    std::vector<std::pair<std::string, std::string>> edges;     // sorted, first < second
};

struct SnapshotSeries {
    ProjectionKind kind = ProjectionKind::semantic;
    std::vector<Snapshot> days;  // contiguous calendar range, strictly increasing
};

SnapshotSeries snapshot_series(const std::vector<MessageRecord>& records, ProjectionKind kind,
                               CooccurrenceScope scope = CooccurrenceScope::tweet);

// J(t) compares day t against day t-1; both sets empty counts as 1.
struct JaccardSeries {
    std::vector<std::int64_t> days;  // starts at the series' second day
    std::vector<double> jn, je;
    std::vector<double> jn_smooth, je_smooth;
};

JaccardSeries jaccard_series(const SnapshotSeries& series, int smooth_window = 1);

// Centered moving average. The window is truncated at the boundaries (the
// mean runs over the samples that exist), so length and constants are
// preserved. window must be odd and no larger than the series.
std::vector<double> smooth_series(const std::vector<double>& values, int window);

// Days are 1-based relative to the first corpus day.
struct PermanenceEntry {
    std::int64_t t_min = 0;
    std::int64_t t_max = 0;
    std::int64_t permanence() const { return t_max - t_min; }
};

enum class EntityKind { hashtag, user };
const char* to_string(EntityKind k);

struct PermanenceTable {
    EntityKind entity = EntityKind::hashtag;
    std::int64_t last_day = 0;  // corpus extent in 1-based day numbers
    std::unordered_map<std::string, PermanenceEntry> entries;
};

PermanenceTable permanence_table(const std::vector<MessageRecord>& records, EntityKind entity);

// Per community: mean entry day, mean exit day, their difference T_I, and
// weekly entry/exit histograms (fractions of community members whose
// t_min / t_max falls in each week).
struct CommunitySpan {
    std::vector<double> mean_t_min;
    std::vector<double> mean_t_max;
    std::vector<double> span;  // T_I
    std::size_t weeks = 0;
    std::vector<std::vector<double>> entry_hist;  // [community][week]
    std::vector<std::vector<double>> exit_hist;
};

CommunitySpan community_span(const WeightedGraph& g, const Partition& p,
                             const PermanenceTable& table);

// Mean permanence per log-spaced degree bin of the given projection.
BinnedCurve permanence_vs_degree(const WeightedGraph& g, const PermanenceTable& table);

// Phases partition the 1-based day axis at the given boundaries: phase 1 is
// days [1, b1], phase 2 is (b1, b2], ..., the last phase runs to the final
// corpus day. Each hashtag belongs to the phase of its first occurrence;
// with require_disappear, tags in non-final phases are kept only if their
// last occurrence also falls inside the phase.
struct PhaseTags {
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges;  // inclusive day spans
    std::vector<std::vector<std::pair<std::string, std::uint64_t>>> ranked;  // (tag, frequency)
};

PhaseTags phase_new_hashtags(const std::vector<MessageRecord>& records,
                             const std::vector<std::int64_t>& boundaries,
                             bool require_disappear = false);

// Day-number window, 1-based inclusive.
struct DayWindow {
    std::int64_t first = 0;
    std::int64_t last = 0;
};

// Users counted by (early community, late community); the extra last row
// and column hold users attributable in only one window. Communities are
// found independently per window on the window's semantic projection.
struct FlowMatrix {
    std::size_t early_communities = 0;
    std::size_t late_communities = 0;
    std::vector<std::uint64_t> counts;  // (early+1) x (late+1), row-major

    std::uint64_t at(std::size_t a, std::size_t b) const {
        return counts[a * (late_communities + 1) + b];
    }
    std::uint64_t& at(std::size_t a, std::size_t b) {
        return counts[a * (late_communities + 1) + b];
    }

    std::vector<std::vector<std::string>> early_top;  // per-community top hashtags
    std::vector<std::vector<std::string>> late_top;
};

FlowMatrix community_flow(const std::vector<MessageRecord>& records, DayWindow early,
                          DayWindow late, std::uint64_t seed, double resolution = 1.0);

}  // namespace tagnet
