#pragma once

// Writers for every artifact the pipeline emits: CSV/TSV tables and JSON
// summaries. All iteration orders and number formats are deterministic so
// identical inputs produce identical bytes.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "tagnet/community.hpp"
#include "tagnet/corpus.hpp"
#include "tagnet/graph.hpp"
#include "tagnet/robustness.hpp"
#include "tagnet/stats.hpp"
#include "tagnet/synth.hpp"
#include "tagnet/temporal.hpp"

namespace tagnet {

// Shortest round-trip decimal representation.
std::string format_double(double value);

void write_distribution_csv(const EmpiricalDistribution& dist, std::ostream& out);
void write_curve_csv(const BinnedCurve& curve, std::ostream& out);
nlohmann::json fit_json(const PowerLawFit& fit);

void write_percolation_csv(const std::vector<PercolationCurve>& curves, std::ostream& out);

// Community ids are written 1-based ("C1" is the strongest community).
void write_partition_tsv(const WeightedGraph& g, const Partition& p, std::ostream& out);
nlohmann::json partition_json(const WeightedGraph& g, const Partition& p);
void write_interaction_csv(const InteractionMatrix& m, std::ostream& out);
void write_activity_csv(const ActivitySeries& series, std::ostream& out);

void write_jaccard_csv(const JaccardSeries& series, std::ostream& out);
void write_permanence_tsv(const PermanenceTable& table, std::ostream& out);
nlohmann::json community_span_json(const CommunitySpan& span);
void write_phases_csv(const PhaseTags& phases, std::ostream& out);
void write_flow_csv(const FlowMatrix& flow, std::ostream& out);

void write_records_jsonl(const std::vector<MessageRecord>& records, std::ostream& out);
nlohmann::json truth_json(const PlantedTruth& truth);

}  // namespace tagnet
