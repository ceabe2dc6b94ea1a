#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "tagnet/error.hpp"
#include "tagnet/graph.hpp"
#include "tagnet/io.hpp"
#include "tagnet/pipeline.hpp"
#include "tagnet/synth.hpp"
#include "tagnet/timeutil.hpp"

using namespace tagnet;
namespace fs = std::filesystem;

namespace {

// Fresh directory under the system temp root, removed on destruction.
struct TempDir {
    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / ("tagnet-test-" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path path;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    REQUIRE(out.good());
    out << content;
}

// 1-based corpus day of a synthetic record (generator epoch 2020-01-01).
std::int64_t synth_day(const MessageRecord& rec) {
    return rec.timestamp / kSecondsPerDay - days_from_civil(2020, 1, 1) + 1;
}

SyntheticSpec small_spec() {
    SyntheticSpec spec;
    spec.users = 30;
    spec.hashtags = 60;
    spec.messages = 600;
    spec.communities = 3;
    spec.mixing = 0.1;
    spec.phase_days = {10, 10};
    spec.seed = 5;
    return spec;
}

RunConfig small_config(const fs::path& input, const fs::path& out) {
    RunConfig cfg;
    cfg.input_path = input.string();
    cfg.format = CorpusFormat::jsonl;
    cfg.null_replicas = 3;
    cfg.swaps_per_edge = 2;
    cfg.attack_step = 0.1;
    cfg.louvain_runs = 2;
    cfg.smooth_window = 3;
    cfg.phase_boundaries = {10};
    cfg.out_dir = out.string();
    cfg.seed = 7;
    return cfg;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("generate_synthetic is reproducible and seed-sensitive") {
    const auto spec = small_spec();
    const auto a = generate_synthetic(spec);
    const auto b = generate_synthetic(spec);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].id == b.records[i].id);
        CHECK(a.records[i].author == b.records[i].author);
        CHECK(a.records[i].hashtags == b.records[i].hashtags);
        CHECK(a.records[i].timestamp == b.records[i].timestamp);
    }
    CHECK(a.truth.tag_community == b.truth.tag_community);

    auto other = spec;
    other.seed = 6;
    const auto c = generate_synthetic(other);
    bool differs = false;
    for (std::size_t i = 0; i < a.records.size() && !differs; ++i) {
        differs = a.records[i].hashtags != c.records[i].hashtags ||
                  a.records[i].timestamp != c.records[i].timestamp;
    }
    CHECK(differs);
}

TEST_CASE("synthetic spec validation rejects bad parameters") {
    auto spec = small_spec();
    CHECK_NOTHROW(spec.validate());

    SUBCASE("no communities") {
        spec.communities = 0;
        CHECK_THROWS_AS(spec.validate(), InputError);
    }
    SUBCASE("fewer users than communities") {
        spec.users = 2;
        CHECK_THROWS_AS(spec.validate(), InputError);
    }
    SUBCASE("fewer hashtags than communities") {
        spec.hashtags = 2;
        CHECK_THROWS_AS(spec.validate(), InputError);
    }
    SUBCASE("fewer messages than hashtags") {
        spec.messages = spec.hashtags - 1;
        CHECK_THROWS_AS(spec.validate(), InputError);
    }
    SUBCASE("mixing below zero") {
        spec.mixing = -0.01;
        CHECK_THROWS_AS(spec.validate(), InputError);
    }
    SUBCASE("mixing above one") {
        spec.mixing = 1.01;
        CHECK_THROWS_AS(spec.validate(), InputError);
    }
    SUBCASE("mixing not a number") {
        spec.mixing = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(spec.validate(), InputError);
    }
    SUBCASE("no phases") {
        spec.phase_days.clear();
        CHECK_THROWS_AS(spec.validate(), InputError);
    }
    SUBCASE("non-positive phase length") {
        spec.phase_days = {10, 0};
        CHECK_THROWS_AS(spec.validate(), InputError);
    }
}

TEST_CASE("zero mixing keeps planted communities as separate components") {
    SyntheticSpec spec;
    spec.users = 12;
    spec.hashtags = 24;
    spec.messages = 200;
    spec.communities = 4;
    spec.mixing = 0.0;
    spec.phase_days = {5, 5};
    spec.seed = 11;
    const auto corpus = generate_synthetic(spec);

    const auto g = project_semantic(build_bipartite(corpus.records));
    REQUIRE(g.vertex_count() == spec.hashtags);

    // Every edge stays inside one planted community.
    for (const auto& e : g.edges()) {
        CHECK(corpus.truth.tag_community.at(g.label(e.u)) ==
              corpus.truth.tag_community.at(g.label(e.v)));
    }

    // BFS component count equals the planted community count.
    std::vector<int> comp(g.vertex_count(), -1);
    int components = 0;
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = components;
        std::vector<VertexId> queue{s};
        while (!queue.empty()) {
            const VertexId v = queue.back();
            queue.pop_back();
            for (const auto& nb : g.neighbors(v)) {
                if (comp[nb.to] < 0) {
                    comp[nb.to] = components;
                    queue.push_back(nb.to);
                }
            }
        }
        ++components;
    }
    CHECK(components == static_cast<int>(spec.communities));
}

TEST_CASE("planted truth matches the emitted records") {
    const auto spec = small_spec();
    const auto corpus = generate_synthetic(spec);
    const auto& truth = corpus.truth;

    REQUIRE(corpus.records.size() == spec.messages);
    REQUIRE(truth.phase_ranges.size() == spec.phase_days.size());
    CHECK(truth.phase_ranges.front().first == 1);
    for (std::size_t p = 0; p + 1 < truth.phase_ranges.size(); ++p) {
        CHECK(truth.phase_ranges[p + 1].first == truth.phase_ranges[p].second + 1);
    }

    SUBCASE("ids are unique, sequential and fixed-width") {
        std::set<std::string> ids;
        for (std::size_t i = 0; i < corpus.records.size(); ++i) {
            const auto& id = corpus.records[i].id;
            CHECK(id.size() == std::string("msg").size() + 3);
            ids.insert(id);
            if (i > 0) CHECK(corpus.records[i - 1].id < id);
        }
        CHECK(ids.size() == corpus.records.size());
    }

    SUBCASE("days are non-decreasing and inside the planted span") {
        std::int64_t last_day = 1;
        std::int64_t total_days = 0;
        for (const auto d : spec.phase_days) total_days += d;
        for (const auto& rec : corpus.records) {
            const auto day = synth_day(rec);
            CHECK(day >= last_day);
            CHECK(day >= 1);
            CHECK(day <= total_days);
            last_day = day;
        }
    }

    SUBCASE("first slot of every message is the author's community anchor") {
        for (const auto& rec : corpus.records) {
            REQUIRE(!rec.hashtags.empty());
            CHECK(truth.tag_community.at(rec.hashtags.front()) ==
                  truth.user_community.at(rec.author));
        }
    }

    SUBCASE("every tag debuts on its phase's first day") {
        std::unordered_map<std::string, std::int64_t> first_day;
        for (const auto& rec : corpus.records) {
            for (const auto& tag : rec.hashtags) {
                first_day.emplace(tag, synth_day(rec));
            }
        }
        std::size_t listed = 0;
        for (std::size_t p = 0; p < truth.phase_vocabulary.size(); ++p) {
            for (const auto& tag : truth.phase_vocabulary[p]) {
                ++listed;
                REQUIRE(first_day.count(tag) == 1);
                CHECK(first_day.at(tag) == truth.phase_ranges[p].first);
            }
        }
        CHECK(listed == spec.hashtags);
        CHECK(first_day.size() == spec.hashtags);
    }
}

TEST_CASE("run_pipeline writes every artifact with a consistent manifest") {
    TempDir tmp("runall");
    const auto corpus = generate_synthetic(small_spec());
    const fs::path input = tmp.path / "input.jsonl";
    {
        std::ofstream out(input, std::ios::binary);
        write_records_jsonl(corpus.records, out);
    }

    const fs::path out_dir = tmp.path / "out";
    const auto summary = run_pipeline(small_config(input, out_dir));

    const char* expected_files[] = {
        "records.jsonl",
        "semantic_edges.tsv",
        "interest_edges.tsv",
        "semantic.graphml",
        "interest.graphml",
        "semantic_degree_dist.csv",
        "semantic_strength_dist.csv",
        "semantic_weight_dist.csv",
        "interest_degree_dist.csv",
        "interest_strength_dist.csv",
        "interest_weight_dist.csv",
        "semantic_knn.csv",
        "semantic_strength_vs_degree.csv",
        "semantic_weight_vs_kk.csv",
        "interest_knn.csv",
        "interest_strength_vs_degree.csv",
        "interest_weight_vs_kk.csv",
        "fits.json",
        "null_abinitio_degree_dist.csv",
        "null_summary.json",
        "robustness.csv",
        "communities.tsv",
        "communities.json",
        "interaction.csv",
        "activity.csv",
        "jaccard.csv",
        "permanence_hashtags.tsv",
        "permanence_users.tsv",
        "community_span.json",
        "permanence_vs_degree.csv",
        "phases.csv",
        "flow.csv",
        "manifest.json",
        "timings.json",
    };
    for (const char* name : expected_files) {
        CAPTURE(name);
        CHECK(fs::exists(out_dir / name));
    }
    for (const auto& entry : fs::directory_iterator(out_dir)) {
        CHECK(entry.path().extension() != ".partial");
    }

    const auto& manifest = summary.manifest;
    CHECK(manifest.at("version").at("tagnet") == kVersion);
    CHECK(!manifest.at("config").contains("out_dir"));
    CHECK(manifest.at("corpus").at("kept") == corpus.records.size());

    // Graph sizes in the manifest match an independent rebuild.
    const auto bipartite = build_bipartite(corpus.records);
    const auto semantic = project_semantic(bipartite);
    const auto interest = project_interest(bipartite);
    CHECK(manifest.at("graph").at("bipartite").at("users") == bipartite.user_count());
    CHECK(manifest.at("graph").at("bipartite").at("hashtags") == bipartite.hashtag_count());
    CHECK(manifest.at("graph").at("semantic").at("vertices") == semantic.vertex_count());
    CHECK(manifest.at("graph").at("semantic").at("edges") == semantic.edge_count());
    CHECK(manifest.at("graph").at("semantic").at("total_weight") == semantic.total_weight());
    CHECK(manifest.at("graph").at("interest").at("vertices") == interest.vertex_count());
    CHECK(manifest.at("graph").at("interest").at("edges") == interest.edge_count());

    CHECK(manifest.at("nullmodel").at("replicas") == 3);
    CHECK(manifest.at("community").at("count").get<std::size_t>() >= 1);
    CHECK(manifest.at("temporal").at("days") == 20);
    CHECK(manifest.at("temporal").at("smooth_window_used") == 3);
    CHECK(manifest.at("temporal").at("phase_boundaries_used") ==
          nlohmann::json::array({10}));

    // The manifest on disk is exactly the returned manifest.
    CHECK(nlohmann::json::parse(slurp(out_dir / "manifest.json")) == manifest);
    CHECK(slurp(out_dir / "null_summary.json") == manifest.at("nullmodel").dump(2) + "\n");

    // communities.tsv covers every semantic vertex once.
    std::istringstream communities(slurp(out_dir / "communities.tsv"));
    std::string line;
    REQUIRE(std::getline(communities, line));
    CHECK(line == "label\tcommunity");
    std::set<std::string> labels;
    while (std::getline(communities, line)) {
        labels.insert(line.substr(0, line.find('\t')));
    }
    CHECK(labels.size() == semantic.vertex_count());

    // Every fit entry either converged or recorded its failure.
    const auto fits = nlohmann::json::parse(slurp(out_dir / "fits.json"));
    REQUIRE(fits.contains("semantic_degree"));
    for (const auto& [key, fit] : fits.items()) {
        CAPTURE(key);
        CHECK((fit.contains("gamma") || fit.contains("error")));
    }
    CHECK(manifest.at("stats").at("fits") == fits);
}

TEST_CASE("run_pipeline rejects unusable configuration up front") {
    TempDir tmp("badcfg");
    const fs::path input = tmp.path / "input.jsonl";
    spill(input, R"({"id":"m1","user":"a","hashtags":["x","y"],"timestamp":"2020-01-01T00:00:00Z"})"
                 "\n");

    SUBCASE("empty output directory") {
        auto cfg = small_config(input, "");
        CHECK_THROWS_AS(run_pipeline(cfg), InputError);
    }
    SUBCASE("even smoothing window") {
        auto cfg = small_config(input, tmp.path / "out");
        cfg.smooth_window = 4;
        CHECK_THROWS_AS(run_pipeline(cfg), InputError);
    }
    SUBCASE("non-positive smoothing window") {
        auto cfg = small_config(input, tmp.path / "out");
        cfg.smooth_window = 0;
        CHECK_THROWS_AS(run_pipeline(cfg), InputError);
    }
}

TEST_CASE("empty corpus aborts with the corpus stage marked partial") {
    TempDir tmp("empty");
    const fs::path input = tmp.path / "empty.jsonl";
    spill(input, "");
    const fs::path out_dir = tmp.path / "out";

    CHECK_THROWS_AS(run_pipeline(small_config(input, out_dir)), InputError);
    CHECK(fs::exists(out_dir / "corpus.partial"));
    CHECK(!fs::exists(out_dir / "manifest.json"));
    CHECK(!fs::exists(out_dir / "records.jsonl"));
}

TEST_CASE("identical configs produce byte-identical artifacts") {
    TempDir tmp("deterministic");
    const auto corpus = generate_synthetic(small_spec());
    const fs::path input = tmp.path / "input.jsonl";
    {
        std::ofstream out(input, std::ios::binary);
        write_records_jsonl(corpus.records, out);
    }

    const fs::path dir_a = tmp.path / "a";
    const fs::path dir_b = tmp.path / "b";
    run_pipeline(small_config(input, dir_a));
    run_pipeline(small_config(input, dir_b));

    std::set<std::string> names_a, names_b;
    for (const auto& entry : fs::directory_iterator(dir_a)) {
        names_a.insert(entry.path().filename().string());
    }
    for (const auto& entry : fs::directory_iterator(dir_b)) {
        names_b.insert(entry.path().filename().string());
    }
    REQUIRE(names_a == names_b);

    for (const auto& name : names_a) {
        if (name == "timings.json") continue;  // wall-clock, excluded by design
        CAPTURE(name);
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));
    }
}

TEST_CASE("records jsonl writer emits sorted keys and ISO timestamps") {
    std::vector<MessageRecord> records(2);
    records[0].id = "m1";
    records[0].author = "alice";
    records[0].hashtags = {"b", "a"};
    records[0].timestamp = days_from_civil(2011, 10, 1) * kSecondsPerDay + 12 * 3600;
    records[1].id = "m2";
    records[1].author = "bob";
    records[1].hashtags = {"a"};
    records[1].timestamp = records[0].timestamp + 90;

    std::ostringstream out;
    write_records_jsonl(records, out);
    CHECK(out.str() ==
          "{\"hashtags\":[\"b\",\"a\"],\"id\":\"m1\",\"timestamp\":\"2011-10-01T12:00:00Z\","
          "\"user\":\"alice\"}\n"
          "{\"hashtags\":[\"a\"],\"id\":\"m2\",\"timestamp\":\"2011-10-01T12:01:30Z\","
          "\"user\":\"bob\"}\n");

    // The writer's output parses back to the same records.
    TempDir tmp("roundtrip");
    spill(tmp.path / "records.jsonl", out.str());
    const auto parsed = parse_records_file((tmp.path / "records.jsonl").string(),
                                           CorpusFormat::jsonl, nullptr, false);
    REQUIRE(parsed.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(parsed[i].id == records[i].id);
        CHECK(parsed[i].author == records[i].author);
        CHECK(parsed[i].hashtags == records[i].hashtags);
        CHECK(parsed[i].timestamp == records[i].timestamp);
    }
}

TEST_CASE("truth json uses one-based community ids") {
    SyntheticSpec spec;
    spec.users = 4;
    spec.hashtags = 6;
    spec.messages = 40;
    spec.communities = 2;
    spec.mixing = 0.0;
    spec.phase_days = {3, 4};
    spec.seed = 2;
    const auto corpus = generate_synthetic(spec);

    const auto j = truth_json(corpus.truth);
    REQUIRE(j.at("tag_community").size() == spec.hashtags);
    REQUIRE(j.at("user_community").size() == spec.users);
    for (const auto& [tag, c] : j.at("tag_community").items()) {
        CAPTURE(tag);
        CHECK(c.get<std::uint32_t>() >= 1);
        CHECK(c.get<std::uint32_t>() <= spec.communities);
    }
    CHECK(j.at("phase_ranges") == nlohmann::json::array({{1, 3}, {4, 7}}));
    std::size_t vocabulary = 0;
    for (const auto& phase : j.at("phase_vocabulary")) vocabulary += phase.size();
    CHECK(vocabulary == spec.hashtags);
}

}  // TEST_SUITE
