#include "tagnet/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

#include "tagnet/community.hpp"
#include "tagnet/error.hpp"
#include "tagnet/io.hpp"
#include "tagnet/nullmodel.hpp"
#include "tagnet/rng.hpp"
#include "tagnet/robustness.hpp"
#include "tagnet/timeutil.hpp"

namespace tagnet {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    return out;
}

class StageRunner {
public:
    StageRunner(fs::path dir, nlohmann::json& timings) : dir_(std::move(dir)), timings_(timings) {}

    void run(const std::string& name, const std::function<void()>& body) {
        const fs::path marker = dir_ / (name + ".partial");
        open_out(marker);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            body();
        } catch (const InputError&) {
            throw;  // bad input keeps its own category (exit code 2)
        } catch (const std::exception& e) {
            throw StageError(name, e.what());
        }
        const auto t1 = std::chrono::steady_clock::now();
        timings_[name + "_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        fs::remove(marker);
    }

private:
    fs::path dir_;
    nlohmann::json& timings_;
};

nlohmann::json graph_sizes(const WeightedGraph& g) {
    return {{"vertices", g.vertex_count()},
            {"edges", g.edge_count()},
            {"total_weight", g.total_weight()}};
}

nlohmann::json config_echo(const RunConfig& c) {
    nlohmann::json excluded = nlohmann::json::array();
    for (const auto& tag : c.corpus.excluded_hashtags) excluded.push_back(tag);
    nlohmann::json j{
        {"input", c.input_path},
        {"format", c.format == CorpusFormat::jsonl ? "jsonl" : "csv"},
        {"excluded_hashtags", excluded},
        {"lowercase_fold", c.corpus.lowercase_fold},
        {"cooccurrence", c.scope == CooccurrenceScope::tweet ? "tweet" : "user"},
        {"fit_x_min", c.fit_x_min},
        {"fit_method", to_string(c.fit_method)},
        {"null_replicas", c.null_replicas},
        {"swaps_per_edge", c.swaps_per_edge},
        {"attack_step", c.attack_step},
        {"adaptive_attack", c.adaptive_attack},
        {"louvain_runs", c.louvain_runs},
        {"resolution", c.resolution},
        {"min_size", c.min_size},
        {"temporal_projection", to_string(c.temporal_projection)},
        {"smooth_window", c.smooth_window},
        {"phase_boundaries", c.phase_boundaries},
        {"require_disappear", c.require_disappear},
        {"seed", c.seed},
    };
    if (c.fit_x_max) j["fit_x_max"] = *c.fit_x_max;
    if (c.corpus.from_instant) j["from"] = format_instant(*c.corpus.from_instant);
    if (c.corpus.to_instant) j["to"] = format_instant(*c.corpus.to_instant);
    if (c.flow_windows) {
        j["flow_windows"] = {{c.flow_windows->first.first, c.flow_windows->first.last},
                             {c.flow_windows->second.first, c.flow_windows->second.last}};
    }
    return j;
}

// Best-effort fit: parameter errors become a recorded message instead of
// aborting the stage, since a short-tailed distribution is a data
// property, not a pipeline failure.
nlohmann::json try_fit(const EmpiricalDistribution& dist, const RunConfig& c) {
    try {
        return fit_json(fit_power_law(dist, c.fit_x_min, c.fit_method, c.fit_x_max));
    } catch (const Error& e) {
        return {{"error", e.what()}};
    }
}

}  // namespace

RunSummary run_pipeline(const RunConfig& config) {
    if (config.out_dir.empty()) throw InputError("output directory must not be empty");
    const fs::path dir(config.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError("cannot create output directory " + dir.string());
    if (config.smooth_window <= 0 || config.smooth_window % 2 == 0) {
        throw InputError("smoothing window must be an odd positive integer");
    }

    RunSummary summary;
    nlohmann::json& manifest = summary.manifest;
    manifest["version"] = {{"tagnet", kVersion}};
    manifest["config"] = config_echo(config);
    StageRunner stage(dir, summary.timings);

    // ---- corpus ----------------------------------------------------------
    std::vector<MessageRecord> records;
    stage.run("corpus", [&] {
        ParseReport report;
        auto parsed =
            parse_records_file(config.input_path, config.format, &report, config.corpus.lowercase_fold);
        CorpusConfig cc = config.corpus;
        cc.normalize();
        records = filter_records(std::move(parsed), cc);
        if (records.empty()) throw InputError("empty corpus");
        auto out = open_out(dir / "records.jsonl");
        write_records_jsonl(records, out);
        manifest["corpus"] = {{"lines", report.lines},
                              {"malformed", report.malformed},
                              {"parsed", report.records},
                              {"kept", records.size()}};
    });

    // ---- graph -----------------------------------------------------------
    BipartiteGraph bipartite;
    WeightedGraph semantic, interest;
    stage.run("graph", [&] {
        bipartite = build_bipartite(records);
        semantic = project_semantic(bipartite, config.scope);
        interest = project_interest(bipartite);
        {
            auto out = open_out(dir / "semantic_edges.tsv");
            write_edge_list_tsv(semantic, out);
        }
        {
            auto out = open_out(dir / "interest_edges.tsv");
            write_edge_list_tsv(interest, out);
        }
        {
            auto out = open_out(dir / "semantic.graphml");
            write_graphml(semantic, out);
        }
        {
            auto out = open_out(dir / "interest.graphml");
            write_graphml(interest, out);
        }
        manifest["graph"] = {{"bipartite",
                              {{"users", bipartite.user_count()},
                               {"hashtags", bipartite.hashtag_count()},
                               {"messages", bipartite.messages.size()}}},
                             {"semantic", graph_sizes(semantic)},
                             {"interest", graph_sizes(interest)}};
    });

    // ---- stats -----------------------------------------------------------
    stage.run("stats", [&] {
        nlohmann::json fits;
        const struct {
            const WeightedGraph* g;
            const char* name;
        } projections[] = {{&semantic, "semantic"}, {&interest, "interest"}};
        for (const auto& [g, name] : projections) {
            for (const auto kind :
                 {DistributionKind::degree, DistributionKind::strength, DistributionKind::weight}) {
                const auto dist = distribution(*g, kind);
                auto out = open_out(dir / (std::string(name) + "_" + to_string(kind) + "_dist.csv"));
                write_distribution_csv(dist, out);
                fits[std::string(name) + "_" + to_string(kind)] = try_fit(dist, config);
            }
            {
                auto out = open_out(dir / (std::string(name) + "_knn.csv"));
                write_curve_csv(knn_curve(*g), out);
            }
            {
                auto out = open_out(dir / (std::string(name) + "_strength_vs_degree.csv"));
                write_curve_csv(correlation_curve(*g, CurveKind::strength_vs_degree), out);
            }
            {
                auto out = open_out(dir / (std::string(name) + "_weight_vs_kk.csv"));
                write_curve_csv(correlation_curve(*g, CurveKind::weight_vs_kk), out);
            }
        }
        auto out = open_out(dir / "fits.json");
        out << fits.dump(2) << '\n';
        manifest["stats"] = {{"fits", fits}};
    });

    // ---- nullmodel -------------------------------------------------------
    std::vector<WeightedGraph> config_replicas;
    stage.run("nullmodel", [&] {
        std::uint64_t collapsed_total = 0;
        std::map<std::uint64_t, std::uint64_t> shuffled_degree_counts;
        for (std::uint32_t r = 0; r < config.null_replicas; ++r) {
            const auto shuffled =
                ab_initio_shuffle(records, derive_seed(config.seed, "null-abinitio", r));
            collapsed_total += shuffled.collapsed;
            const auto g = project_semantic(build_bipartite(shuffled.records), config.scope);
            for (VertexId v = 0; v < g.vertex_count(); ++v) ++shuffled_degree_counts[g.degree(v)];
        }
        {
            auto out = open_out(dir / "null_abinitio_degree_dist.csv");
            out << "value,count\n";
            for (const auto& [value, count] : shuffled_degree_counts) {
                out << value << ',' << count << '\n';
            }
        }

        std::uint64_t accepted = 0, rejected = 0;
        config_replicas.reserve(config.null_replicas);
        for (std::uint32_t r = 0; r < config.null_replicas; ++r) {
            auto rewired = configuration_rewire(semantic, derive_seed(config.seed, "null-config", r),
                                                config.swaps_per_edge);
            accepted += rewired.accepted;
            rejected += rewired.rejected;
            config_replicas.push_back(std::move(rewired.graph));
        }
        manifest["nullmodel"] = {{"replicas", config.null_replicas},
                                 {"ab_initio_collapsed_total", collapsed_total},
                                 {"config_swaps_accepted", accepted},
                                 {"config_swaps_rejected", rejected}};
        auto out = open_out(dir / "null_summary.json");
        out << manifest["nullmodel"].dump(2) << '\n';
    });

    // ---- robustness ------------------------------------------------------
    stage.run("robustness", [&] {
        std::vector<PercolationCurve> curves;
        curves.push_back(targeted_attack_curve(semantic, config.attack_step, config.adaptive_attack));
        curves.back().variant = "original";
        std::vector<PercolationCurve> replica_curves;
        replica_curves.reserve(config_replicas.size());
        for (const auto& g : config_replicas) {
            replica_curves.push_back(targeted_attack_curve(g, config.attack_step, config.adaptive_attack));
        }
        if (!replica_curves.empty()) {
            curves.push_back(ensemble_curve(replica_curves, "configuration", config.attack_step));
        }
        auto out = open_out(dir / "robustness.csv");
        write_percolation_csv(curves, out);
        manifest["robustness"] = {{"step", config.attack_step},
                                  {"adaptive", config.adaptive_attack},
                                  {"grid_points", curves.front().fractions.size()}};
    });

    // ---- community -------------------------------------------------------
    Partition partition;
    stage.run("community", [&] {
        if (config.louvain_runs == 0) throw Error("louvain runs must be >= 1");
        double best_q = 0.0;
        std::uint32_t best_run = 0;
        for (std::uint32_t run = 0; run < config.louvain_runs; ++run) {
            auto p = louvain_partition(semantic, derive_seed(config.seed, "louvain-run", run),
                                       config.resolution);
            if (run == 0 || p.modularity_q > best_q) {
                best_q = p.modularity_q;
                best_run = run;
                partition = std::move(p);
            }
        }
        {
            auto out = open_out(dir / "communities.tsv");
            write_partition_tsv(semantic, partition, out);
        }
        nlohmann::json pj = partition_json(semantic, partition);
        pj["runs"] = config.louvain_runs;
        pj["best_run"] = best_run;
        pj["min_size"] = config.min_size;
        std::size_t large = 0;
        for (const auto s : partition.sizes) {
            if (s >= config.min_size) ++large;
        }
        pj["communities_at_least_min_size"] = large;
        {
            auto out = open_out(dir / "communities.json");
            out << pj.dump(2) << '\n';
        }
        {
            auto out = open_out(dir / "interaction.csv");
            write_interaction_csv(interaction_matrix(semantic, partition), out);
        }
        {
            auto out = open_out(dir / "activity.csv");
            write_activity_csv(activity_series(records, semantic, partition), out);
        }
        manifest["community"] = {{"modularity", partition.modularity_q},
                                 {"count", partition.community_count()},
                                 {"count_at_least_min_size", large},
                                 {"best_run", best_run}};
    });

    // ---- temporal --------------------------------------------------------
    stage.run("temporal", [&] {
        const auto series = snapshot_series(records, config.temporal_projection, config.scope);
        if (series.days.size() < 2) {
            throw Error("need at least two corpus days for the temporal stage");
        }
        // Shrink the window to the longest odd length the series allows.
        int window = config.smooth_window;
        const auto max_len = static_cast<int>(series.days.size()) - 1;
        if (window > max_len) window = max_len - (max_len % 2 == 0 ? 1 : 0);
        const auto jaccard = jaccard_series(series, window);
        {
            auto out = open_out(dir / "jaccard.csv");
            write_jaccard_csv(jaccard, out);
        }

        const auto tag_table = permanence_table(records, EntityKind::hashtag);
        const auto user_table = permanence_table(records, EntityKind::user);
        {
            auto out = open_out(dir / "permanence_hashtags.tsv");
            write_permanence_tsv(tag_table, out);
        }
        {
            auto out = open_out(dir / "permanence_users.tsv");
            write_permanence_tsv(user_table, out);
        }
        {
            auto out = open_out(dir / "community_span.json");
            out << community_span_json(community_span(semantic, partition, tag_table)).dump(2)
                << '\n';
        }
        {
            auto out = open_out(dir / "permanence_vs_degree.csv");
            write_curve_csv(permanence_vs_degree(semantic, tag_table), out);
        }

        // Boundaries beyond the corpus extent are dropped rather than
        // fatal so the defaults work on short corpora.
        std::vector<std::int64_t> boundaries;
        for (const auto b : config.phase_boundaries) {
            if (b >= 1 && b < tag_table.last_day && (boundaries.empty() || b > boundaries.back())) {
                boundaries.push_back(b);
            }
        }
        const auto phases = phase_new_hashtags(records, boundaries, config.require_disappear);
        {
            auto out = open_out(dir / "phases.csv");
            write_phases_csv(phases, out);
        }

        DayWindow early{}, late{};
        if (config.flow_windows) {
            early = config.flow_windows->first;
            late = config.flow_windows->second;
        } else if (phases.ranges.size() >= 2) {
            early = {phases.ranges.front().first, phases.ranges.front().second};
            late = {phases.ranges.back().first, phases.ranges.back().second};
        } else {
            const std::int64_t mid = (tag_table.last_day + 1) / 2;
            early = {1, mid};
            late = {std::min(mid + 1, tag_table.last_day), tag_table.last_day};
        }
        const auto flow =
            community_flow(records, early, late, derive_seed(config.seed, "flow"), config.resolution);
        {
            auto out = open_out(dir / "flow.csv");
            write_flow_csv(flow, out);
        }

        nlohmann::json used_boundaries = boundaries;
        manifest["temporal"] = {
            {"days", series.days.size()},
            {"projection", to_string(config.temporal_projection)},
            {"smooth_window_used", window},
            {"phase_boundaries_used", used_boundaries},
            {"flow_early", {early.first, early.last}},
            {"flow_late", {late.first, late.last}},
            {"flow_early_communities", flow.early_communities},
            {"flow_late_communities", flow.late_communities},
        };
    });

    {
        auto out = open_out(dir / "manifest.json");
        out << manifest.dump(2) << '\n';
    }
    {
        auto out = open_out(dir / "timings.json");
        out << summary.timings.dump(2) << '\n';
    }
    return summary;
}

}  // namespace tagnet
