#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "tagnet/community.hpp"
#include "tagnet/error.hpp"
#include "tagnet/io.hpp"
#include "tagnet/timeutil.hpp"

using namespace tagnet;

namespace {

WeightedGraph two_triangles(std::uint64_t bridge_weight = 0) {
    GraphBuilder b;
    for (int i = 0; i < 6; ++i) b.vertex("v" + std::to_string(i));
    b.add_edge(0, 1);
    b.add_edge(1, 2);
    b.add_edge(0, 2);
    b.add_edge(3, 4);
    b.add_edge(4, 5);
    b.add_edge(3, 5);
    if (bridge_weight > 0) b.add_edge(2, 3, bridge_weight);
    return b.build();
}

WeightedGraph clique_union(std::size_t cliques, std::size_t size) {
    GraphBuilder b;
    for (std::size_t c = 0; c < cliques; ++c)
        for (std::size_t i = 0; i < size; ++i)
            b.vertex("c" + std::to_string(c) + "_" + std::to_string(i));
    for (std::size_t c = 0; c < cliques; ++c) {
        const auto base = static_cast<VertexId>(c * size);
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = i + 1; j < size; ++j)
                b.add_edge(base + static_cast<VertexId>(i), base + static_cast<VertexId>(j));
    }
    return b.build();
}

WeightedGraph two_cliques_bridge() {
    GraphBuilder b;
    for (int i = 0; i < 8; ++i) b.vertex("v" + std::to_string(i));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) b.add_edge(VertexId(i), VertexId(j));
    for (int i = 4; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j) b.add_edge(VertexId(i), VertexId(j));
    b.add_edge(3, 4);
    return b.build();
}

}  // namespace

TEST_SUITE("community") {

TEST_CASE("modularity of two separated triangles is 1/2") {
    auto g = two_triangles();
    std::vector<std::uint32_t> split{0, 0, 0, 1, 1, 1};
    CHECK(modularity(g, split) == doctest::Approx(0.5));
    // Sparse ids are allowed.
    std::vector<std::uint32_t> sparse{7, 7, 7, 42, 42, 42};
    CHECK(modularity(g, sparse) == doctest::Approx(0.5));
}

TEST_CASE("modularity of the trivial and singleton partitions") {
    auto g = two_triangles(1);
    std::vector<std::uint32_t> one(6, 0);
    CHECK(modularity(g, one) == doctest::Approx(0.0));
    std::vector<std::uint32_t> singletons{0, 1, 2, 3, 4, 5};
    CHECK(modularity(g, singletons) < 0.0);
}

TEST_CASE("modularity validates its inputs") {
    auto g = two_triangles();
    std::vector<std::uint32_t> short_assignment{0, 0, 0};
    CHECK_THROWS_AS(modularity(g, short_assignment), Error);
    GraphBuilder b;
    b.vertex("a");
    b.vertex("b");
    auto edgeless = b.build();
    CHECK_THROWS_WITH_AS(modularity(edgeless, {0, 1}), doctest::Contains("no edges"), Error);
}

TEST_CASE("modularity agrees with the oracle on random partitions") {
    tagnet::Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = oracle::random_graph(100 + std::uint64_t(trial), 12, 0.4, 3);
        if (g.total_weight() == 0) continue;
        std::vector<std::uint32_t> assignment(g.vertex_count());
        for (auto& c : assignment) c = static_cast<std::uint32_t>(rng.below(4));
        CHECK(modularity(g, assignment) ==
              doctest::Approx(oracle::modularity_of(g, assignment)).epsilon(1e-12));
    }
}

TEST_CASE("louvain separates two bridged 4-cliques at the exhaustive optimum") {
    auto g = two_cliques_bridge();
    const double best = oracle::best_partition_q(g);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto p = louvain_partition(g, seed);
        REQUIRE(p.community_count() == 2);
        CHECK(p.modularity_q == doctest::Approx(best).epsilon(1e-9));
        // One community per clique.
        std::set<std::uint32_t> left{p.assignment[0], p.assignment[1], p.assignment[2],
                                     p.assignment[3]};
        std::set<std::uint32_t> right{p.assignment[4], p.assignment[5], p.assignment[6],
                                      p.assignment[7]};
        CHECK(left.size() == 1);
        CHECK(right.size() == 1);
        CHECK(*left.begin() != *right.begin());
    }
}

TEST_CASE("louvain finds disjoint cliques and their closed-form Q") {
    // c cliques of size s, all weights 1: every community holds one clique,
    // Q = sum_c [m_c/m - (m_c/m)^2] = 1 - 1/c for equal cliques.
    for (auto [cliques, size] : {std::pair<std::size_t, std::size_t>{2, 5},
                                 {3, 3},
                                 {5, 2}}) {
        auto g = clique_union(cliques, size);
        auto p = louvain_partition(g, 7);
        CHECK(p.community_count() == cliques);
        const double expected = 1.0 - 1.0 / double(cliques);
        CHECK(p.modularity_q == doctest::Approx(expected).epsilon(1e-12));
        if (cliques * size <= 10)
            CHECK(p.modularity_q == doctest::Approx(oracle::best_partition_q(g)).epsilon(1e-9));
    }
}

TEST_CASE("louvain rejects edgeless graphs") {
    GraphBuilder b;
    b.vertex("a");
    CHECK_THROWS_AS(louvain_partition(b.build(), 1), Error);
}

TEST_CASE("every accepted move strictly increases recomputed modularity") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        auto g = oracle::random_graph(seed * 31, 40, 0.12, 4);
        if (g.total_weight() == 0) continue;
        // The monotonicity chain starts from the singleton partition, the
        // state before the first move.
        std::vector<std::uint32_t> singletons(g.vertex_count());
        for (std::size_t v = 0; v < singletons.size(); ++v)
            singletons[v] = static_cast<std::uint32_t>(v);
        double last_q = oracle::modularity_of(g, singletons);
        std::size_t moves = 0;
        louvain_partition(g, seed, 1.0, [&](const std::vector<std::uint32_t>& assignment) {
            const double q = oracle::modularity_of(g, assignment);
            CHECK(q > last_q);
            last_q = q;
            ++moves;
        });
        CHECK(moves > 0);
    }
}

TEST_CASE("louvain Q never falls below the singleton partition") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto g = oracle::random_graph(500 + seed, 25, 0.15, 3);
        if (g.total_weight() == 0) continue;
        std::vector<std::uint32_t> singletons(g.vertex_count());
        for (std::size_t v = 0; v < singletons.size(); ++v)
            singletons[v] = static_cast<std::uint32_t>(v);
        auto p = louvain_partition(g, seed);
        CHECK(p.modularity_q >= modularity(g, singletons) - 1e-12);
    }
}

TEST_CASE("restarted louvain tracks the brute-force optimum on tiny graphs") {
    // Statistical parity check with the pipeline's restart strategy: across
    // 100 seeded graphs on <= 8 vertices, take the best of 5 runs and
    // record any shortfall from the exhaustive optimum. Greedy single-vertex
    // moves cannot reach every optimum (some tiny graphs need a coordinated
    // split no restart escapes), so parity is a rate, not a guarantee.
    std::size_t exact = 0, total = 0;
    double worst_shortfall = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto g = oracle::random_graph(900 + seed, 5 + seed % 4, 0.5, 2);
        if (g.total_weight() == 0) continue;
        ++total;
        double q = -1;
        for (std::uint64_t run = 0; run < 5; ++run) {
            q = std::max(q, louvain_partition(g, seed * 5 + run).modularity_q);
        }
        const double best = oracle::best_partition_q(g);
        const double shortfall = best - q;
        CHECK(shortfall >= -1e-9);  // the oracle is a true upper bound
        if (shortfall <= 1e-9)
            ++exact;
        else
            worst_shortfall = std::max(worst_shortfall, shortfall);
    }
    CHECK(total >= 90);
    CHECK(exact >= total * 85 / 100);
    CHECK(worst_shortfall < 0.12);
}

TEST_CASE("partition bookkeeping: dense ids, strength ordering, sizes, top members") {
    auto g = two_cliques_bridge();
    auto p = louvain_partition(g, 3);
    REQUIRE(p.community_count() == 2);
    CHECK(p.sizes[0] + p.sizes[1] == 8);
    std::set<std::uint32_t> ids(p.assignment.begin(), p.assignment.end());
    CHECK(ids == std::set<std::uint32_t>{0, 1});
    // Community 0 holds the bridge clique (higher total strength).
    double s0 = 0, s1 = 0;
    for (VertexId v = 0; v < 8; ++v)
        (p.assignment[v] == 0 ? s0 : s1) += double(g.strength(v));
    CHECK(s0 >= s1);
    for (std::size_t c = 0; c < 2; ++c) {
        REQUIRE(p.top_members[c].size() == 4);
        // Sorted by strength descending.
        for (std::size_t i = 1; i < p.top_members[c].size(); ++i)
            CHECK(g.strength(p.top_members[c][i - 1]) >= g.strength(p.top_members[c][i]));
    }
}

TEST_CASE("interaction matrix of separated and bridged triangles") {
    auto g = two_triangles();
    Partition p;
    p.assignment = {0, 0, 0, 1, 1, 1};
    p.sizes = {3, 3};
    auto m = interaction_matrix(g, p);
    REQUIRE(m.communities == 2);
    CHECK(m.at(0, 0) == 3);
    CHECK(m.at(1, 1) == 3);
    CHECK(m.at(0, 1) == 0);

    auto gb = two_triangles(5);
    auto mb = interaction_matrix(gb, p);
    CHECK(mb.at(0, 1) == 5);
    CHECK(mb.at(1, 0) == 5);
    CHECK(mb.at(0, 0) == 3);
}

TEST_CASE("interaction matrix equals brute-force edge classification") {
    tagnet::Rng rng(77);
    for (int trial = 0; trial < 15; ++trial) {
        auto g = oracle::random_graph(600 + std::uint64_t(trial), 14, 0.3, 4);
        if (g.total_weight() == 0) continue;
        const std::uint32_t c_count = 3;
        Partition p;
        p.assignment.resize(g.vertex_count());
        for (auto& c : p.assignment) c = static_cast<std::uint32_t>(rng.below(c_count));
        p.sizes.assign(c_count, 0);
        for (auto c : p.assignment) ++p.sizes[c];

        auto m = interaction_matrix(g, p);
        std::vector<std::vector<std::uint64_t>> want(c_count,
                                                     std::vector<std::uint64_t>(c_count, 0));
        for (const auto& e : g.edges()) {
            auto a = p.assignment[e.u], b = p.assignment[e.v];
            if (a == b) {
                want[a][a] += e.w;
            } else {
                want[a][b] += e.w;
                want[b][a] += e.w;
            }
        }
        std::uint64_t diag = 0, off = 0;
        for (std::size_t a = 0; a < c_count; ++a) {
            for (std::size_t b = 0; b < c_count; ++b) {
                CHECK(m.at(a, b) == want[a][b]);
                CHECK(m.at(a, b) == m.at(b, a));
                (a == b ? diag : off) += m.at(a, b);
            }
        }
        // Diagonal counted once, off-diagonal twice: diag + off/2 = total.
        CHECK(diag + off / 2 == g.total_weight());
    }
}

TEST_CASE("activity shares sum to 1 on active days and 0 on silent days") {
    // Two communities: tags a,b in one, c in the other.
    GraphBuilder b;
    auto va = b.vertex("a");
    auto vb = b.vertex("b");
    auto vc = b.vertex("c");
    auto vd = b.vertex("d");
    b.add_edge(va, vb);
    b.add_edge(vc, vd);
    auto g = b.build();
    Partition p;
    p.assignment = {0, 0, 1, 1};
    p.sizes = {2, 2};

    const std::int64_t day0 = days_from_civil(2011, 10, 1) * kSecondsPerDay;
    std::vector<MessageRecord> records{
        {"1", "u1", {"a", "b"}, day0},                    // community 0 only
        {"2", "u2", {"c"}, day0},                         // community 1
        {"3", "u3", {"a", "c"}, day0 + 2 * kSecondsPerDay},  // both communities
        {"4", "u4", {"zzz"}, day0 + 2 * kSecondsPerDay},  // tag outside the graph
    };
    auto series = activity_series(records, g, p);
    REQUIRE(series.shares.size() == 3);  // includes the silent middle day
    CHECK(series.shares[0][0] == doctest::Approx(0.5));
    CHECK(series.shares[0][1] == doctest::Approx(0.5));
    CHECK(series.shares[1][0] == 0.0);
    CHECK(series.shares[1][1] == 0.0);
    CHECK(series.shares[2][0] == doctest::Approx(0.5));
    CHECK(series.shares[2][1] == doctest::Approx(0.5));
}

TEST_CASE("single community activity is constantly 1 on active days") {
    GraphBuilder b;
    b.add_edge(b.vertex("a"), b.vertex("b"));
    auto g = b.build();
    Partition p;
    p.assignment = {0, 0};
    p.sizes = {2};
    std::vector<MessageRecord> records{
        {"1", "u1", {"a"}, 0},
        {"2", "u2", {"b"}, kSecondsPerDay},
    };
    auto series = activity_series(records, g, p);
    REQUIRE(series.shares.size() == 2);
    CHECK(series.shares[0][0] == doctest::Approx(1.0));
    CHECK(series.shares[1][0] == doctest::Approx(1.0));
}

TEST_CASE("partition tsv and json writers use 1-based strongest-first ids") {
    auto g = two_cliques_bridge();
    auto p = louvain_partition(g, 1);
    std::ostringstream out;
    write_partition_tsv(g, p, out);
    const std::string text = out.str();
    CHECK(text.substr(0, 16) == "label\tcommunity\n");
    CHECK(text.find("\t0\n") == std::string::npos);  // ids are 1-based
    CHECK(text.find("v0\t") != std::string::npos);

    auto j = partition_json(g, p);
    CHECK(j["community_count"] == 2);
    CHECK(j["communities"][0]["id"] == 1);
    CHECK(j["communities"][0]["top_members"].size() == 4);
    CHECK(j["modularity"].get<double>() == doctest::Approx(p.modularity_q));

    InteractionMatrix m = interaction_matrix(g, p);
    std::ostringstream mcsv;
    write_interaction_csv(m, mcsv);
    CHECK(mcsv.str().substr(0, 16) == "community,C1,C2\n");
}

}  // TEST_SUITE
