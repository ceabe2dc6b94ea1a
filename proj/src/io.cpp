#include "tagnet/io.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include "tagnet/timeutil.hpp"

namespace tagnet {

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;  // 64 bytes always suffice for double
    return std::string(buf, ptr);
}

void write_distribution_csv(const EmpiricalDistribution& dist, std::ostream& out) {
    out << "value,count\n";
    for (const auto& [value, count] : dist.support) {
        out << value << ',' << count << '\n';
    }
}

void write_curve_csv(const BinnedCurve& curve, std::ostream& out) {
    out << "x,y,n\n";
    for (std::size_t i = 0; i < curve.x.size(); ++i) {
        out << format_double(curve.x[i]) << ',' << format_double(curve.y[i]) << ','
            << curve.counts[i] << '\n';
    }
}

nlohmann::json fit_json(const PowerLawFit& fit) {
    nlohmann::json j{
        {"gamma", fit.gamma},        {"x_min", fit.x_min},   {"method", to_string(fit.method)},
        {"stderr", fit.stderr_},     {"n_tail", fit.n_tail},
    };
    if (fit.x_max) j["x_max"] = *fit.x_max;
    return j;
}

void write_percolation_csv(const std::vector<PercolationCurve>& curves, std::ostream& out) {
    out << "variant,f,S_mean,S_min,S_max\n";
    for (const auto& c : curves) {
        for (std::size_t i = 0; i < c.fractions.size(); ++i) {
            out << c.variant << ',' << format_double(c.fractions[i]) << ','
                << format_double(c.lcc[i]) << ',' << format_double(c.lcc_min[i]) << ','
                << format_double(c.lcc_max[i]) << '\n';
        }
    }
}

void write_partition_tsv(const WeightedGraph& g, const Partition& p, std::ostream& out) {
    std::vector<VertexId> order(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](VertexId a, VertexId b) { return g.label(a) < g.label(b); });
    out << "label\tcommunity\n";
    for (const VertexId v : order) {
        out << g.label(v) << '\t' << p.assignment[v] + 1 << '\n';
    }
}

nlohmann::json partition_json(const WeightedGraph& g, const Partition& p) {
    nlohmann::json communities = nlohmann::json::array();
    for (std::size_t c = 0; c < p.community_count(); ++c) {
        nlohmann::json top = nlohmann::json::array();
        for (const VertexId v : p.top_members[c]) top.push_back(g.label(v));
        communities.push_back({{"id", c + 1}, {"size", p.sizes[c]}, {"top_members", top}});
    }
    return {{"modularity", p.modularity_q},
            {"community_count", p.community_count()},
            {"communities", communities}};
}

void write_interaction_csv(const InteractionMatrix& m, std::ostream& out) {
    out << "community";
    for (std::size_t c = 0; c < m.communities; ++c) out << ",C" << c + 1;
    out << '\n';
    for (std::size_t a = 0; a < m.communities; ++a) {
        out << 'C' << a + 1;
        for (std::size_t b = 0; b < m.communities; ++b) out << ',' << m.at(a, b);
        out << '\n';
    }
}

void write_activity_csv(const ActivitySeries& series, std::ostream& out) {
    out << "date";
    for (std::size_t c = 0; c < series.communities; ++c) out << ",C" << c + 1;
    out << '\n';
    for (std::size_t row = 0; row < series.shares.size(); ++row) {
        out << format_date(series.first_day + static_cast<std::int64_t>(row));
        for (const double share : series.shares[row]) out << ',' << format_double(share);
        out << '\n';
    }
}

void write_jaccard_csv(const JaccardSeries& series, std::ostream& out) {
    out << "day,JN,JE,JN_smooth,JE_smooth\n";
    for (std::size_t i = 0; i < series.days.size(); ++i) {
        out << format_date(series.days[i]) << ',' << format_double(series.jn[i]) << ','
            << format_double(series.je[i]) << ',' << format_double(series.jn_smooth[i]) << ','
            << format_double(series.je_smooth[i]) << '\n';
    }
}

void write_permanence_tsv(const PermanenceTable& table, std::ostream& out) {
    std::vector<const std::string*> names;
    names.reserve(table.entries.size());
    for (const auto& [name, entry] : table.entries) names.push_back(&name);
    std::sort(names.begin(), names.end(),
              [](const std::string* a, const std::string* b) { return *a < *b; });
    out << to_string(table.entity) << "\tt_min\tt_max\tpermanence\n";
    for (const auto* name : names) {
        const auto& e = table.entries.at(*name);
        out << *name << '\t' << e.t_min << '\t' << e.t_max << '\t' << e.permanence() << '\n';
    }
}

nlohmann::json community_span_json(const CommunitySpan& span) {
    nlohmann::json communities = nlohmann::json::array();
    for (std::size_t c = 0; c < span.span.size(); ++c) {
        communities.push_back({{"id", c + 1},
                               {"mean_entry_day", span.mean_t_min[c]},
                               {"mean_exit_day", span.mean_t_max[c]},
                               {"span_days", span.span[c]},
                               {"weekly_entry_fraction", span.entry_hist[c]},
                               {"weekly_exit_fraction", span.exit_hist[c]}});
    }
    return {{"weeks", span.weeks}, {"communities", communities}};
}

void write_phases_csv(const PhaseTags& phases, std::ostream& out) {
    out << "phase,first_day,last_day,rank,hashtag,count\n";
    for (std::size_t p = 0; p < phases.ranked.size(); ++p) {
        for (std::size_t r = 0; r < phases.ranked[p].size(); ++r) {
            out << p + 1 << ',' << phases.ranges[p].first << ',' << phases.ranges[p].second << ','
                << r + 1 << ',' << phases.ranked[p][r].first << ',' << phases.ranked[p][r].second
                << '\n';
        }
    }
}

void write_flow_csv(const FlowMatrix& flow, std::ostream& out) {
    out << "early\\late";
    for (std::size_t b = 0; b < flow.late_communities; ++b) out << ",late_C" << b + 1;
    out << ",absent\n";
    for (std::size_t a = 0; a <= flow.early_communities; ++a) {
        if (a < flow.early_communities) {
            out << "early_C" << a + 1;
        } else {
            out << "absent";
        }
        for (std::size_t b = 0; b <= flow.late_communities; ++b) out << ',' << flow.at(a, b);
        out << '\n';
    }
}

void write_records_jsonl(const std::vector<MessageRecord>& records, std::ostream& out) {
    for (const auto& r : records) {
        const nlohmann::json j{{"id", r.id},
                               {"user", r.author},
                               {"hashtags", r.hashtags},
                               {"timestamp", format_instant(r.timestamp)}};
        out << j.dump() << '\n';
    }
}

nlohmann::json truth_json(const PlantedTruth& truth) {
    nlohmann::json tags(nlohmann::json::value_t::object);
    for (const auto& [tag, c] : truth.tag_community) tags[tag] = c + 1;
    nlohmann::json users(nlohmann::json::value_t::object);
    for (const auto& [user, c] : truth.user_community) users[user] = c + 1;
    nlohmann::json ranges = nlohmann::json::array();
    for (const auto& [a, b] : truth.phase_ranges) ranges.push_back({a, b});
    return {{"tag_community", tags},
            {"user_community", users},
            {"phase_vocabulary", truth.phase_vocabulary},
            {"phase_ranges", ranges}};
}

}  // namespace tagnet
