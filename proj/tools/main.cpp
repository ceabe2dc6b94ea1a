// tagnet CLI: corpus ingestion, graph projection, statistics, null models,
// robustness, communities, temporal analysis, the full pipeline, and a
// synthetic corpus generator.
//
// Exit codes: 0 success, 2 unusable input, 3 stage failure.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tagnet/community.hpp"
#include "tagnet/corpus.hpp"
#include "tagnet/error.hpp"
#include "tagnet/graph.hpp"
#include "tagnet/io.hpp"
#include "tagnet/nullmodel.hpp"
#include "tagnet/pipeline.hpp"
#include "tagnet/rng.hpp"
#include "tagnet/robustness.hpp"
#include "tagnet/stats.hpp"
#include "tagnet/synth.hpp"
#include "tagnet/temporal.hpp"
#include "tagnet/timeutil.hpp"

namespace fs = std::filesystem;
using namespace tagnet;

namespace {

struct CorpusOptions {
    std::string input;
    std::string format = "jsonl";
    std::vector<std::string> exclude{"occupy"};
    std::string from, to;
    bool no_fold = false;
};

void add_corpus_options(CLI::App* cmd, CorpusOptions& o) {
    cmd->add_option("--input", o.input, "corpus file (JSONL or CSV)")->required();
    cmd->add_option("--format", o.format, "input format")
        ->check(CLI::IsMember({"jsonl", "csv"}))
        ->capture_default_str();
    cmd->add_option("--exclude", o.exclude,
                    "hashtag to drop (repeatable; pass an empty string to keep everything)")
        ->capture_default_str();
    cmd->add_option("--from", o.from, "inclusive start date/instant (ISO-8601)");
    cmd->add_option("--to", o.to, "inclusive end date/instant (ISO-8601)");
    cmd->add_flag("--no-fold", o.no_fold, "keep hashtag case instead of lowercasing");
}

CorpusConfig corpus_config(const CorpusOptions& o) {
    CorpusConfig cc;
    cc.excluded_hashtags = std::set<std::string>(o.exclude.begin(), o.exclude.end());
    cc.lowercase_fold = !o.no_fold;
    if (!o.from.empty()) {
        const auto t = parse_instant(o.from);
        if (!t) throw InputError("unparseable --from instant: " + o.from);
        cc.from_instant = *t;
    }
    if (!o.to.empty()) {
        const auto t = parse_instant_end(o.to);
        if (!t) throw InputError("unparseable --to instant: " + o.to);
        cc.to_instant = *t;
    }
    cc.normalize();
    return cc;
}

CorpusFormat corpus_format(const CorpusOptions& o) {
    return o.format == "csv" ? CorpusFormat::csv : CorpusFormat::jsonl;
}

std::vector<MessageRecord> load_corpus(const CorpusOptions& o, ParseReport* report = nullptr) {
    auto records = parse_records_file(o.input, corpus_format(o), report, !o.no_fold);
    records = filter_records(std::move(records), corpus_config(o));
    if (records.empty()) throw InputError("empty corpus");
    return records;
}

std::ofstream open_out(const fs::path& path) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open " + path.string() + " for writing");
    return out;
}

CooccurrenceScope scope_of(const std::string& s) {
    return s == "user" ? CooccurrenceScope::user : CooccurrenceScope::tweet;
}

WeightedGraph project(const std::vector<MessageRecord>& records, const std::string& kind,
                      const std::string& scope) {
    const BipartiteGraph b = build_bipartite(records);
    return kind == "interest" ? project_interest(b) : project_semantic(b, scope_of(scope));
}

std::vector<std::int64_t> parse_day_list(const std::string& s) {
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const std::size_t comma = s.find(',', pos);
        const std::string item = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            out.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw InputError("bad day number '" + item + "' in list: " + s);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::pair<DayWindow, DayWindow> parse_flow_windows(const std::string& s) {
    // A_START:A_END,B_START:B_END
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw InputError("expected two windows in: " + s);
    const auto one_window = [&](const std::string& w) -> DayWindow {
        const auto colon = w.find(':');
        if (colon == std::string::npos) throw InputError("expected FIRST:LAST in window: " + w);
        try {
            return {std::stoll(w.substr(0, colon)), std::stoll(w.substr(colon + 1))};
        } catch (const std::exception&) {
            throw InputError("bad day number in window: " + w);
        }
    };
    return {one_window(s.substr(0, comma)), one_window(s.substr(comma + 1))};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tagnet: hashtag co-occurrence network analysis"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; command-line flags win");
    std::map<std::string, std::function<void()>> actions;

    // ---- ingest ------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("ingest", "parse, normalize and filter a corpus");
        auto corpus = std::make_shared<CorpusOptions>();
        auto out_dir = std::make_shared<std::string>("out");
        add_corpus_options(cmd, *corpus);
        cmd->add_option("--out", *out_dir, "output directory")->capture_default_str();
        actions["ingest"] = [corpus, out_dir] {
            ParseReport report;
            const auto records = load_corpus(*corpus, &report);
            auto out = open_out(fs::path(*out_dir) / "records.jsonl");
            write_records_jsonl(records, out);
            std::cout << "lines " << report.lines << ", malformed " << report.malformed
                      << ", parsed " << report.records << ", kept " << records.size() << '\n';
        };
    }

    // ---- project -----------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("project", "build a weighted projection of the corpus");
        auto corpus = std::make_shared<CorpusOptions>();
        auto kind = std::make_shared<std::string>("semantic");
        auto scope = std::make_shared<std::string>("tweet");
        auto out_dir = std::make_shared<std::string>("out");
        add_corpus_options(cmd, *corpus);
        cmd->add_option("--kind", *kind, "projection")
            ->check(CLI::IsMember({"semantic", "interest"}))
            ->capture_default_str();
        cmd->add_option("--cooccurrence", *scope, "hashtag co-occurrence scope")
            ->check(CLI::IsMember({"tweet", "user"}))
            ->capture_default_str();
        cmd->add_option("--out", *out_dir, "output directory")->capture_default_str();
        actions["project"] = [corpus, kind, scope, out_dir] {
            const auto records = load_corpus(*corpus);
            const auto g = project(records, *kind, *scope);
            {
                auto out = open_out(fs::path(*out_dir) / (*kind + "_edges.tsv"));
                write_edge_list_tsv(g, out);
            }
            {
                auto out = open_out(fs::path(*out_dir) / (*kind + ".graphml"));
                write_graphml(g, out);
            }
            std::cout << *kind << ": " << g.vertex_count() << " vertices, " << g.edge_count()
                      << " edges, total weight " << g.total_weight() << '\n';
        };
    }

    // ---- stats ---------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("stats", "distributions, power-law fits, mixing curves");
        auto corpus = std::make_shared<CorpusOptions>();
        auto projection = std::make_shared<std::string>("semantic");
        auto scope = std::make_shared<std::string>("tweet");
        auto kind = std::make_shared<std::string>("degree");
        auto fit = std::make_shared<std::string>("mle");
        auto xmin = std::make_shared<std::uint64_t>(1);
        auto xmax = std::make_shared<std::int64_t>(-1);
        auto out_dir = std::make_shared<std::string>("out");
        add_corpus_options(cmd, *corpus);
        cmd->add_option("--projection", *projection)
            ->check(CLI::IsMember({"semantic", "interest"}))
            ->capture_default_str();
        cmd->add_option("--cooccurrence", *scope)
            ->check(CLI::IsMember({"tweet", "user"}))
            ->capture_default_str();
        cmd->add_option("--kind", *kind, "distribution to fit")
            ->check(CLI::IsMember({"degree", "strength", "weight"}))
            ->capture_default_str();
        cmd->add_option("--fit", *fit, "fitting method")
            ->check(CLI::IsMember({"mle", "logbin-ls"}))
            ->capture_default_str();
        cmd->add_option("--xmin", *xmin, "fit tail start")->capture_default_str();
        cmd->add_option("--xmax", *xmax, "fit tail cutoff (-1: none)")->capture_default_str();
        cmd->add_option("--out", *out_dir, "output directory")->capture_default_str();
        actions["stats"] = [corpus, projection, scope, kind, fit, xmin, xmax, out_dir] {
            const auto records = load_corpus(*corpus);
            const auto g = project(records, *projection, *scope);
            const fs::path dir(*out_dir);
            EmpiricalDistribution fit_target;
            for (const auto k : {DistributionKind::degree, DistributionKind::strength,
                                 DistributionKind::weight}) {
                const auto dist = distribution(g, k);
                auto out =
                    open_out(dir / (*projection + "_" + to_string(k) + "_dist.csv"));
                write_distribution_csv(dist, out);
                if (to_string(k) == *kind) fit_target = dist;
            }
            {
                auto out = open_out(dir / (*projection + "_knn.csv"));
                write_curve_csv(knn_curve(g), out);
            }
            {
                auto out = open_out(dir / (*projection + "_strength_vs_degree.csv"));
                write_curve_csv(correlation_curve(g, CurveKind::strength_vs_degree), out);
            }
            {
                auto out = open_out(dir / (*projection + "_weight_vs_kk.csv"));
                write_curve_csv(correlation_curve(g, CurveKind::weight_vs_kk), out);
            }
            const auto method = *fit == "logbin-ls" ? FitMethod::logbin_ls : FitMethod::mle;
            std::optional<std::uint64_t> cutoff;
            if (*xmax >= 0) cutoff = static_cast<std::uint64_t>(*xmax);
            const auto result = fit_power_law(fit_target, *xmin, method, cutoff);
            {
                auto out = open_out(dir / "fit.json");
                out << fit_json(result).dump(2) << '\n';
            }
            std::cout << *projection << ' ' << *kind << " gamma " << format_double(result.gamma)
                      << " +- " << format_double(result.stderr_) << " (tail n " << result.n_tail
                      << ")\n";
        };
    }

    // ---- nullmodel -----------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("nullmodel", "reshuffled baselines of the corpus/graph");
        auto corpus = std::make_shared<CorpusOptions>();
        auto method = std::make_shared<std::string>("ab-initio");
        auto scope = std::make_shared<std::string>("tweet");
        auto seed = std::make_shared<std::uint64_t>(1);
        auto replicas = std::make_shared<std::uint32_t>(1);
        auto swaps = std::make_shared<std::uint32_t>(10);
        auto out_dir = std::make_shared<std::string>("out");
        add_corpus_options(cmd, *corpus);
        cmd->add_option("--method", *method)
            ->check(CLI::IsMember({"ab-initio", "configuration"}))
            ->capture_default_str();
        cmd->add_option("--cooccurrence", *scope)
            ->check(CLI::IsMember({"tweet", "user"}))
            ->capture_default_str();
        cmd->add_option("--seed", *seed)->capture_default_str();
        cmd->add_option("--replicas", *replicas)->check(CLI::PositiveNumber)->capture_default_str();
        cmd->add_option("--swaps", *swaps, "attempted swaps per edge")->capture_default_str();
        cmd->add_option("--out", *out_dir, "output directory")->capture_default_str();
        actions["nullmodel"] = [corpus, method, scope, seed, replicas, swaps, out_dir] {
            const auto records = load_corpus(*corpus);
            const fs::path dir(*out_dir);
            nlohmann::json replica_stats = nlohmann::json::array();
            if (*method == "ab-initio") {
                for (std::uint32_t r = 0; r < *replicas; ++r) {
                    const auto shuffled =
                        ab_initio_shuffle(records, derive_seed(*seed, "null-abinitio", r));
                    const auto g =
                        project_semantic(build_bipartite(shuffled.records), scope_of(*scope));
                    auto out = open_out(dir / ("abinitio_" + std::to_string(r) + "_edges.tsv"));
                    write_edge_list_tsv(g, out);
                    replica_stats.push_back({{"replica", r}, {"collapsed", shuffled.collapsed}});
                }
            } else {
                const auto g = project_semantic(build_bipartite(records), scope_of(*scope));
                for (std::uint32_t r = 0; r < *replicas; ++r) {
                    const auto rewired =
                        configuration_rewire(g, derive_seed(*seed, "null-config", r), *swaps);
                    auto out = open_out(dir / ("configuration_" + std::to_string(r) + "_edges.tsv"));
                    write_edge_list_tsv(rewired.graph, out);
                    replica_stats.push_back({{"replica", r},
                                             {"accepted", rewired.accepted},
                                             {"rejected", rewired.rejected}});
                }
            }
            const nlohmann::json manifest{
                {"method", *method}, {"seed", *seed}, {"replicas", replica_stats}};
            auto out = open_out(dir / "null_manifest.json");
            out << manifest.dump(2) << '\n';
            std::cout << *method << ": " << *replicas << " replica(s) written\n";
        };
    }

    // ---- robustness ------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("robustness", "targeted-attack percolation curves");
        auto corpus = std::make_shared<CorpusOptions>();
        auto scope = std::make_shared<std::string>("tweet");
        auto step = std::make_shared<double>(0.01);
        auto nulls = std::make_shared<std::string>("configuration");
        auto replicas = std::make_shared<std::uint32_t>(20);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto swaps = std::make_shared<std::uint32_t>(10);
        auto adaptive = std::make_shared<bool>(false);
        auto out_dir = std::make_shared<std::string>("out");
        add_corpus_options(cmd, *corpus);
        cmd->add_option("--cooccurrence", *scope)
            ->check(CLI::IsMember({"tweet", "user"}))
            ->capture_default_str();
        cmd->add_option("--step", *step, "removed fraction per batch")->capture_default_str();
        cmd->add_option("--null", *nulls, "comma list of ab-initio,configuration (or 'none')")
            ->capture_default_str();
        cmd->add_option("--replicas", *replicas)->capture_default_str();
        cmd->add_option("--seed", *seed)->capture_default_str();
        cmd->add_option("--swaps", *swaps, "attempted swaps per edge")->capture_default_str();
        cmd->add_flag("--adaptive", *adaptive, "re-rank degrees after every batch");
        cmd->add_option("--out", *out_dir, "output directory")->capture_default_str();
        actions["robustness"] = [corpus, scope, step, nulls, replicas, seed, swaps, adaptive,
                                 out_dir] {
            const auto records = load_corpus(*corpus);
            const auto g = project_semantic(build_bipartite(records), scope_of(*scope));
            std::vector<PercolationCurve> curves;
            curves.push_back(targeted_attack_curve(g, *step, *adaptive));
            curves.back().variant = "original";
            for (const auto& method : {std::string("ab-initio"), std::string("configuration")}) {
                if (nulls->find(method) == std::string::npos || *replicas == 0) continue;
                std::vector<PercolationCurve> ensemble;
                for (std::uint32_t r = 0; r < *replicas; ++r) {
                    WeightedGraph replica;
                    if (method == "ab-initio") {
                        const auto shuffled =
                            ab_initio_shuffle(records, derive_seed(*seed, "null-abinitio", r));
                        replica =
                            project_semantic(build_bipartite(shuffled.records), scope_of(*scope));
                    } else {
                        replica = configuration_rewire(g, derive_seed(*seed, "null-config", r),
                                                       *swaps)
                                      .graph;
                    }
                    ensemble.push_back(targeted_attack_curve(replica, *step, *adaptive));
                }
                curves.push_back(ensemble_curve(
                    ensemble, method == "ab-initio" ? "ab_initio" : "configuration", *step));
            }
            auto out = open_out(fs::path(*out_dir) / "robustness.csv");
            write_percolation_csv(curves, out);
            std::cout << "robustness: " << curves.size() << " curve(s), "
                      << curves.front().fractions.size() << " points each\n";
        };
    }

    // ---- communities ----------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("communities", "Louvain communities of the semantic network");
        auto corpus = std::make_shared<CorpusOptions>();
        auto scope = std::make_shared<std::string>("tweet");
        auto seed = std::make_shared<std::uint64_t>(1);
        auto resolution = std::make_shared<double>(1.0);
        auto runs = std::make_shared<std::uint32_t>(5);
        auto min_size = std::make_shared<std::uint32_t>(1);
        auto out_dir = std::make_shared<std::string>("out");
        add_corpus_options(cmd, *corpus);
        cmd->add_option("--cooccurrence", *scope)
            ->check(CLI::IsMember({"tweet", "user"}))
            ->capture_default_str();
        cmd->add_option("--seed", *seed)->capture_default_str();
        cmd->add_option("--resolution", *resolution)->capture_default_str();
        cmd->add_option("--runs", *runs, "independent sweeps; best Q wins")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--min-size", *min_size, "reporting threshold")->capture_default_str();
        cmd->add_option("--out", *out_dir, "output directory")->capture_default_str();
        actions["communities"] = [corpus, scope, seed, resolution, runs, min_size, out_dir] {
            const auto records = load_corpus(*corpus);
            const auto g = project_semantic(build_bipartite(records), scope_of(*scope));
            Partition best;
            std::uint32_t best_run = 0;
            for (std::uint32_t run = 0; run < *runs; ++run) {
                auto p =
                    louvain_partition(g, derive_seed(*seed, "louvain-run", run), *resolution);
                if (run == 0 || p.modularity_q > best.modularity_q) {
                    best_run = run;
                    best = std::move(p);
                }
            }
            const fs::path dir(*out_dir);
            {
                auto out = open_out(dir / "communities.tsv");
                write_partition_tsv(g, best, out);
            }
            nlohmann::json pj = partition_json(g, best);
            pj["runs"] = *runs;
            pj["best_run"] = best_run;
            pj["min_size"] = *min_size;
            std::size_t large = 0;
            for (const auto s : best.sizes) {
                if (s >= *min_size) ++large;
            }
            pj["communities_at_least_min_size"] = large;
            {
                auto out = open_out(dir / "communities.json");
                out << pj.dump(2) << '\n';
            }
            {
                auto out = open_out(dir / "interaction.csv");
                write_interaction_csv(interaction_matrix(g, best), out);
            }
            {
                auto out = open_out(dir / "activity.csv");
                write_activity_csv(activity_series(records, g, best), out);
            }
            std::cout << "communities: " << best.community_count() << " (Q "
                      << format_double(best.modularity_q) << ", " << large
                      << " of size >= " << *min_size << ")\n";
        };
    }

    // ---- temporal -------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("temporal", "daily snapshots, innovation, permanence, flows");
        auto corpus = std::make_shared<CorpusOptions>();
        auto projection = std::make_shared<std::string>("semantic");
        auto scope = std::make_shared<std::string>("tweet");
        auto window = std::make_shared<int>(7);
        auto phases = std::make_shared<std::string>("40,120");
        auto flow_windows = std::make_shared<std::string>("");
        auto require_disappear = std::make_shared<bool>(false);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto resolution = std::make_shared<double>(1.0);
        auto out_dir = std::make_shared<std::string>("out");
        add_corpus_options(cmd, *corpus);
        cmd->add_option("--projection", *projection)
            ->check(CLI::IsMember({"semantic", "interest"}))
            ->capture_default_str();
        cmd->add_option("--cooccurrence", *scope)
            ->check(CLI::IsMember({"tweet", "user"}))
            ->capture_default_str();
        cmd->add_option("--smooth-window", *window, "odd moving-average window")
            ->capture_default_str();
        cmd->add_option("--phases", *phases, "comma list of phase boundary days")
            ->capture_default_str();
        cmd->add_option("--flow-windows", *flow_windows,
                        "A_START:A_END,B_START:B_END day windows (default: first vs last phase)");
        cmd->add_flag("--require-disappear", *require_disappear,
                      "non-final phases keep only tags that also exit within the phase");
        cmd->add_option("--seed", *seed)->capture_default_str();
        cmd->add_option("--resolution", *resolution)->capture_default_str();
        cmd->add_option("--out", *out_dir, "output directory")->capture_default_str();
        actions["temporal"] = [corpus, projection, scope, window, phases, flow_windows,
                               require_disappear, seed, resolution, out_dir] {
            const auto records = load_corpus(*corpus);
            const fs::path dir(*out_dir);
            const auto kind =
                *projection == "interest" ? ProjectionKind::interest : ProjectionKind::semantic;
            const auto series = snapshot_series(records, kind, scope_of(*scope));
            if (series.days.size() < 2) throw InputError("need at least two corpus days");
            const auto jaccard = jaccard_series(series, *window);
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
            const auto g = project_semantic(build_bipartite(records), scope_of(*scope));
            const auto partition = louvain_partition(g, derive_seed(*seed, "louvain-run"), *resolution);
            {
                auto out = open_out(dir / "community_span.json");
                out << community_span_json(community_span(g, partition, tag_table)).dump(2)
                    << '\n';
            }
            {
                auto out = open_out(dir / "permanence_vs_degree.csv");
                write_curve_csv(permanence_vs_degree(g, tag_table), out);
            }
            const auto phase_tags =
                phase_new_hashtags(records, parse_day_list(*phases), *require_disappear);
            {
                auto out = open_out(dir / "phases.csv");
                write_phases_csv(phase_tags, out);
            }
            DayWindow early{}, late{};
            if (!flow_windows->empty()) {
                std::tie(early, late) = parse_flow_windows(*flow_windows);
            } else {
                early = {phase_tags.ranges.front().first, phase_tags.ranges.front().second};
                late = {phase_tags.ranges.back().first, phase_tags.ranges.back().second};
            }
            const auto flow =
                community_flow(records, early, late, derive_seed(*seed, "flow"), *resolution);
            {
                auto out = open_out(dir / "flow.csv");
                write_flow_csv(flow, out);
            }
            std::cout << "temporal: " << series.days.size() << " days, "
                      << phase_tags.ranges.size() << " phase(s), flow "
                      << flow.early_communities << "x" << flow.late_communities << '\n';
        };
    }

    // ---- run-all ---------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("run-all", "full pipeline into one output directory");
        auto corpus = std::make_shared<CorpusOptions>();
        auto cfg = std::make_shared<RunConfig>();
        auto scope = std::make_shared<std::string>("tweet");
        auto fit = std::make_shared<std::string>("mle");
        auto xmax = std::make_shared<std::int64_t>(-1);
        auto projection = std::make_shared<std::string>("semantic");
        auto phases = std::make_shared<std::string>("40,120");
        auto flow_windows = std::make_shared<std::string>("");
        add_corpus_options(cmd, *corpus);
        cmd->add_option("--cooccurrence", *scope)
            ->check(CLI::IsMember({"tweet", "user"}))
            ->capture_default_str();
        cmd->add_option("--xmin", cfg->fit_x_min)->capture_default_str();
        cmd->add_option("--xmax", *xmax, "fit tail cutoff (-1: none)")->capture_default_str();
        cmd->add_option("--fit", *fit)->check(CLI::IsMember({"mle", "logbin-ls"}))
            ->capture_default_str();
        cmd->add_option("--replicas", cfg->null_replicas, "null-model replicas")
            ->capture_default_str();
        cmd->add_option("--swaps", cfg->swaps_per_edge)->capture_default_str();
        cmd->add_option("--step", cfg->attack_step)->capture_default_str();
        cmd->add_flag("--adaptive", cfg->adaptive_attack, "adaptive attack ranking");
        cmd->add_option("--runs", cfg->louvain_runs)->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--resolution", cfg->resolution)->capture_default_str();
        cmd->add_option("--min-size", cfg->min_size)->capture_default_str();
        cmd->add_option("--projection", *projection, "temporal projection")
            ->check(CLI::IsMember({"semantic", "interest"}))
            ->capture_default_str();
        cmd->add_option("--smooth-window", cfg->smooth_window)->capture_default_str();
        cmd->add_option("--phases", *phases)->capture_default_str();
        cmd->add_option("--flow-windows", *flow_windows);
        cmd->add_flag("--require-disappear", cfg->require_disappear);
        cmd->add_option("--seed", cfg->seed)->capture_default_str();
        cmd->add_option("--out", cfg->out_dir, "output directory")->capture_default_str();
        actions["run-all"] = [corpus, cfg, scope, fit, xmax, projection, phases, flow_windows] {
            RunConfig config = *cfg;
            config.input_path = corpus->input;
            config.format = corpus_format(*corpus);
            config.corpus = corpus_config(*corpus);
            config.scope = scope_of(*scope);
            config.fit_method = *fit == "logbin-ls" ? FitMethod::logbin_ls : FitMethod::mle;
            if (*xmax >= 0) config.fit_x_max = static_cast<std::uint64_t>(*xmax);
            config.temporal_projection =
                *projection == "interest" ? ProjectionKind::interest : ProjectionKind::semantic;
            config.phase_boundaries = parse_day_list(*phases);
            if (!flow_windows->empty()) config.flow_windows = parse_flow_windows(*flow_windows);
            const auto summary = run_pipeline(config);
            std::cout << "run-all: wrote " << config.out_dir << "/manifest.json ("
                      << summary.manifest["graph"]["semantic"]["vertices"] << " semantic vertices, Q "
                      << format_double(summary.manifest["community"]["modularity"].get<double>())
                      << ")\n";
        };
    }

    // ---- synth ----------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("synth", "generate a planted-community synthetic corpus");
        auto spec = std::make_shared<SyntheticSpec>();
        auto phases = std::make_shared<std::string>("40,80,55");
        auto out_dir = std::make_shared<std::string>("out");
        cmd->add_option("--users", spec->users)->capture_default_str();
        cmd->add_option("--tags", spec->hashtags)->capture_default_str();
        cmd->add_option("--messages", spec->messages)->capture_default_str();
        cmd->add_option("--communities", spec->communities)->capture_default_str();
        cmd->add_option("--mixing", spec->mixing, "per-tag-slot foreign draw probability")
            ->capture_default_str();
        cmd->add_option("--phase-days", *phases, "comma list of phase lengths in days")
            ->capture_default_str();
        cmd->add_option("--seed", spec->seed)->capture_default_str();
        cmd->add_option("--out", *out_dir, "output directory")->capture_default_str();
        actions["synth"] = [spec, phases, out_dir] {
            SyntheticSpec s = *spec;
            s.phase_days = parse_day_list(*phases);
            const auto corpus = generate_synthetic(s);
            const fs::path dir(*out_dir);
            {
                auto out = open_out(dir / "synthetic.jsonl");
                write_records_jsonl(corpus.records, out);
            }
            {
                auto out = open_out(dir / "truth.json");
                out << truth_json(corpus.truth).dump(2) << '\n';
            }
            std::cout << "synth: " << corpus.records.size() << " messages, " << s.hashtags
                      << " tags, " << s.communities << " planted communities\n";
        };
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (const auto* sub : app.get_subcommands()) {
            actions.at(sub->get_name())();
        }
    } catch (const StageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
