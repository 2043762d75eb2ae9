#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "recd/error.hpp"
#include "recd/graph.hpp"

using namespace recd;

namespace {

Graph from_text(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in);
}

} // namespace

TEST_SUITE("graph") {

TEST_CASE("edge list parsing builds a canonical simple graph") {
    Graph g = from_text("1 2\n2 3\n3 1\n");
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 3);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
    CHECK(g.has_edge(0, 2));
}

TEST_CASE("self-loops are dropped, duplicates collapsed") {
    Graph g = from_text("a a\na b\nb a\n");
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
}

TEST_CASE("comments and blank lines are ignored") {
    Graph g = from_text("# header\n\n  \nx y\n# trailing\ny z\n");
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 2);
}

TEST_CASE("malformed lines carry their line number") {
    std::istringstream in("1 2\n3\n");
    CHECK_THROWS_WITH_AS(load_edge_list(in), doctest::Contains("line 2"), ParseError);
    std::istringstream three("1 2 3\n");
    CHECK_THROWS_AS(load_edge_list(three), ParseError);
}

TEST_CASE("empty input is an error") {
    std::istringstream in("# nothing\n");
    CHECK_THROWS_AS(load_edge_list(in), ParseError);
}

TEST_CASE("karate fixture matches the published size") {
    Graph g = load_edge_list_file(std::string(RECD_DATA_DIR) + "/karate.edges");
    CHECK(g.vertex_count() == 34);
    CHECK(g.edge_count() == 78);
    Partition truth = load_labels_file(std::string(RECD_DATA_DIR) + "/karate.labels", &g);
    CHECK(truth.community_count() == 2);
    int degsum = 0;
    for (int v = 0; v < g.vertex_count(); ++v) degsum += g.degree(v);
    CHECK(degsum == 2 * g.edge_count());
}

TEST_CASE("label parsing normalizes and validates") {
    std::istringstream in("1 A\n2 A\n3 B\n");
    Partition p = load_labels(in);
    CHECK(p.size() == 3);
    CHECK(p.community_count() == 2);

    SUBCASE("conflicting duplicate is rejected") {
        std::istringstream bad("1 A\n1 B\n");
        CHECK_THROWS_AS(load_labels(bad), ConflictError);
    }
    SUBCASE("consistent duplicate is accepted") {
        std::istringstream dup("1 A\n1 A\n2 B\n");
        CHECK(load_labels(dup).community_count() == 2);
    }
    SUBCASE("bound loading requires full coverage") {
        Graph g = from_text("1 2\n2 3\n");
        std::istringstream gap("1 A\n2 B\n");
        CHECK_THROWS_AS(load_labels(gap, &g), CoverageError);
        std::istringstream unknown("1 A\n2 B\n3 A\n9 B\n");
        CHECK_THROWS_AS(load_labels(unknown, &g), CoverageError);
    }
}

TEST_CASE("partition files round-trip bit-exactly") {
    Graph g = from_text("a b\nb c\nc d\n");
    std::istringstream in("a 0\nb 0\nc 1\nd 1\n");
    Partition p = load_labels(in, &g);
    std::ostringstream out;
    write_labels(p, g, out);
    std::istringstream back(out.str());
    Partition again = load_labels(back, &g);
    CHECK(again == p);
    std::ostringstream out2;
    write_labels(again, g, out2);
    CHECK(out.str() == out2.str());
}

TEST_CASE("edge list write/load round-trip preserves the labeled graph") {
    Rng rng(7);
    Graph g = oracle::random_graph(20, 0.2, rng);
    std::ostringstream out;
    write_edge_list(g, out);
    std::istringstream back(out.str());
    Graph h = load_edge_list(back);
    CHECK(h.vertex_count() == g.vertex_count());
    CHECK(h.edge_count() == g.edge_count());
    // identical edge set under the external labeling (indices may be
    // re-interned in first-appearance order)
    auto label_edges = [](const Graph& x) {
        std::set<std::pair<std::string, std::string>> s;
        for (const Edge& e : x.edges()) {
            auto a = x.vertex_label(e.first), b = x.vertex_label(e.second);
            s.insert({std::min(a, b), std::max(a, b)});
        }
        return s;
    };
    CHECK(label_edges(h) == label_edges(g));
}

TEST_CASE("apply_modification follows E u add minus del") {
    Graph tri = from_text("a b\nb c\nc a\n");

    SUBCASE("identity") {
        Graph same = apply_modification(tri, {});
        CHECK(same.edges() == tri.edges());
    }
    SUBCASE("path closes into a triangle") {
        Graph path = from_text("a b\nb c\n");
        ModificationScheme mod;
        mod.add = {{0, 2}};
        Graph closed = apply_modification(path, mod);
        CHECK(closed.edge_count() == 3);
        CHECK(closed.has_edge(0, 2));
        CHECK(path.edge_count() == 2); // input untouched
    }
    SUBCASE("invalid pairs are named") {
        ModificationScheme bad_add;
        bad_add.add = {{0, 1}};
        CHECK_THROWS_WITH_AS(apply_modification(tri, bad_add), doctest::Contains("already an edge"),
                             ValidityError);
        Graph path = from_text("a b\nb c\n");
        CHECK_THROWS_WITH_AS(apply_modification(path, {{}, {{0, 2}}}),
                             doctest::Contains("not an edge"), ValidityError);
    }
    SUBCASE("inverse scheme restores the edge set") {
        Rng rng(3);
        Graph g = oracle::random_graph(12, 0.3, rng);
        ModificationScheme mod;
        mod.add = sample_nonedges(g, 3, {}, rng);
        mod.del = {g.edges()[0], g.edges()[2]};
        Graph rewired = apply_modification(g, mod);
        Graph restored = apply_modification(rewired, {mod.del, mod.add});
        CHECK(restored.edges() == g.edges());
    }
}

TEST_CASE("karate-scale modification arithmetic") {
    Graph g = load_edge_list_file(std::string(RECD_DATA_DIR) + "/karate.edges");
    Rng rng(11);
    ModificationScheme mod;
    mod.add = sample_nonedges(g, 5, {}, rng);
    for (int i = 0; i < 4; ++i) mod.del.push_back(g.edges()[static_cast<std::size_t>(i * 7)]);
    Graph rewired = apply_modification(g, mod);
    CHECK(rewired.edge_count() == 78 + 5 - 4);
}

TEST_CASE("sample_nonedges basics") {
    Graph k4 = from_text("a b\na c\na d\nb c\nb d\nc d\n");
    Rng rng(5);
    CHECK_THROWS_AS(sample_nonedges(k4, 1, {}, rng), CapacityError);

    Graph path = from_text("a b\nb c\n");
    auto only = sample_nonedges(path, 1, {}, rng);
    REQUIRE(only.size() == 1);
    CHECK(only[0] == Edge{0, 2});
}

TEST_CASE("uniform sampling touches every non-edge") {
    Rng rng(99);
    Graph g = oracle::random_graph(8, 0.3, rng);
    std::map<Edge, int> freq;
    for (int trial = 0; trial < 4000; ++trial) {
        for (const Edge& e : sample_nonedges(g, 2, {}, rng)) ++freq[e];
    }
    CHECK(static_cast<long long>(freq.size()) == g.nonedge_count());
    for (const auto& [e, count] : freq) CHECK(count > 0);
}

TEST_CASE("weighted sampling matches enumerated inclusion probabilities") {
    // path 1-2-3-4-5: six non-edges; the first gets weight 2, the rest 1
    Graph path = from_text("1 2\n2 3\n3 4\n4 5\n");
    std::vector<std::pair<Edge, double>> weights;
    std::vector<double> raw;
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v)
            if (!path.has_edge(u, v)) {
                double w = weights.empty() ? 2.0 : 1.0;
                weights.push_back({{u, v}, w});
                raw.push_back(w);
            }
    REQUIRE(weights.size() == 6);

    const std::size_t draw = 2;
    double expected = oracle::inclusion_probability(raw, 0, draw);

    Rng rng(2024);
    const int trials = 100000;
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        auto picked = sample_nonedges(path, draw, weights, rng);
        for (const Edge& e : picked)
            if (e == weights[0].first) ++hits;
    }
    double freq = static_cast<double>(hits) / trials;
    double sigma = std::sqrt(expected * (1.0 - expected) / trials);
    CHECK(std::abs(freq - expected) < 3.0 * sigma);
}

TEST_CASE("weighted sampling backfills uniformly when candidates run short") {
    Rng rng(17);
    Graph g = oracle::random_graph(10, 0.2, rng);
    REQUIRE(g.nonedge_count() >= 6);
    std::vector<std::pair<Edge, double>> few;
    for (int u = 0; u < 10 && few.size() < 2; ++u)
        for (int v = u + 1; v < 10 && few.size() < 2; ++v)
            if (!g.has_edge(u, v)) few.push_back({{u, v}, 1.0});
    auto picked = sample_nonedges(g, 6, few, rng);
    CHECK(picked.size() == 6);
    std::set<Edge> unique(picked.begin(), picked.end());
    CHECK(unique.size() == 6);
    for (const Edge& e : picked) CHECK_FALSE(g.has_edge(e.first, e.second));
}

TEST_CASE("connected components label by smallest member") {
    Graph two = from_text("a b\nc d\n");
    Partition comps = connected_components(two);
    CHECK(comps.community_count() == 2);
    CHECK(comps.label_of(0) == comps.label_of(1));
    CHECK(comps.label_of(2) == comps.label_of(3));
    CHECK(comps.label_of(0) == 0);

    Graph tri = from_text("a b\nb c\nc a\n");
    CHECK(connected_components(tri).community_count() == 1);
}

} // TEST_SUITE
