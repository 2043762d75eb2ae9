#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "recd/error.hpp"
#include "recd/metrics.hpp"

using namespace recd;

TEST_SUITE("metrics") {

TEST_CASE("modularity of the all-in-one partition is exactly zero") {
    Rng rng(41);
    for (int i = 0; i < 20; ++i) {
        Graph g = oracle::random_graph(10 + i, 0.3, rng);
        if (g.edge_count() == 0) continue;
        Partition one(std::vector<int>(static_cast<std::size_t>(g.vertex_count()), 0));
        CHECK(modularity(g, one) == 0.0);
    }
}

TEST_CASE("modularity matches the direct double-loop evaluation") {
    Rng rng(42);
    for (int i = 0; i < 60; ++i) {
        Graph g = oracle::random_graph(5 + i % 14, 0.35, rng);
        if (g.edge_count() == 0) continue;
        Partition p = oracle::random_partition(g.vertex_count(), 4, rng);
        CHECK(modularity(g, p) == doctest::Approx(oracle::modularity_direct(g, p)).epsilon(1e-12));
    }
}

TEST_CASE("modularity stays within [-1,1] and ignores relabeling") {
    Rng rng(43);
    for (int i = 0; i < 30; ++i) {
        Graph g = oracle::random_graph(12, 0.3, rng);
        if (g.edge_count() == 0) continue;
        Partition p = oracle::random_partition(12, 5, rng);
        double q = modularity(g, p);
        CHECK(q >= -1.0);
        CHECK(q <= 1.0);
        // permute labels
        std::vector<int> relabeled(p.labels());
        for (int& l : relabeled) l = p.community_count() - 1 - l;
        CHECK(modularity(g, Partition(std::move(relabeled))) == doctest::Approx(q).epsilon(1e-12));
    }
}

TEST_CASE("modularity errors") {
    Graph empty(3, {});
    Partition p(std::vector<int>{0, 0, 1});
    CHECK_THROWS_AS(modularity(empty, p), MetricError);
}

TEST_CASE("nmi identities and degenerate cases") {
    Partition a(std::vector<int>{0, 0, 1, 1});
    Partition b(std::vector<int>{1, 1, 0, 0}); // same clustering, permuted labels
    CHECK(nmi(a, a) == 1.0);
    CHECK(nmi(a, b) == doctest::Approx(1.0).epsilon(1e-12));

    Partition singletons(std::vector<int>{0, 1, 2, 3});
    Partition block(std::vector<int>{0, 0, 0, 0});
    CHECK(nmi(singletons, block) == 0.0);
    CHECK(nmi(block, block) == 1.0); // both trivial, defined as 1
}

TEST_CASE("nmi equals the contingency oracle on random pairs") {
    Rng rng(44);
    for (int i = 0; i < 100; ++i) {
        Partition x = oracle::random_partition(20, 5, rng);
        Partition y = oracle::random_partition(20, 4, rng);
        CHECK(nmi(x, y) == doctest::Approx(oracle::nmi_direct(x, y)).epsilon(1e-12));
        CHECK(nmi(x, y) == doctest::Approx(nmi(y, x)).epsilon(1e-12)); // symmetry
    }
}

TEST_CASE("nmi is 1 exactly for equal-up-to-relabel partitions") {
    Rng rng(45);
    for (int i = 0; i < 40; ++i) {
        Partition x = oracle::random_partition(12, 4, rng);
        Partition y = oracle::random_partition(12, 4, rng);
        bool one = std::abs(nmi(x, y) - 1.0) < 1e-12;
        CHECK(one == x.same_clustering(y));
    }
}

TEST_CASE("ari identities and degenerate cases") {
    Partition a(std::vector<int>{0, 0, 1, 1, 2});
    CHECK(ari(a, a) == doctest::Approx(1.0).epsilon(1e-12));

    Partition block(std::vector<int>{0, 0, 0, 0, 0});
    Partition other(std::vector<int>{0, 1, 0, 1, 2});
    CHECK(ari(block, other) == doctest::Approx(0.0).epsilon(1e-12));

    Partition tiny(std::vector<int>{0});
    CHECK_THROWS_AS(ari(tiny, tiny), MetricError);
}

TEST_CASE("ari equals brute-force pair counting") {
    Rng rng(46);
    for (int i = 0; i < 100; ++i) {
        int n = 5 + i % 8; // exhaustive pair enumeration stays cheap for n <= 12
        Partition x = oracle::random_partition(n, 4, rng);
        Partition y = oracle::random_partition(n, 3, rng);
        CHECK(ari(x, y) == doctest::Approx(oracle::ari_direct(x, y)).epsilon(1e-12));
        CHECK(ari(x, y) == doctest::Approx(ari(y, x)).epsilon(1e-12));
    }
}

TEST_CASE("rimp branch rules") {
    CHECK(rimp(0.5, 0.5) == 0.0);
    CHECK(rimp(0.0, 0.3) == doctest::Approx(0.3));
    CHECK(rimp(0.587, 1.0) == doctest::Approx((1.0 - 0.587) / 0.587));
    CHECK_THROWS_AS(rimp(-0.1, 0.5), DomainError);
}

TEST_CASE("summary statistics use the population form") {
    Summary s;
    s.values = {1.0, 2.0, 3.0, 4.0};
    CHECK(s.mean() == doctest::Approx(2.5));
    CHECK(s.stddev() == doctest::Approx(std::sqrt(1.25)));
    CHECK(s.stddev() >= 0.0);
}

TEST_CASE("csv report formatting") {
    MetricsReport r;
    r.dataset = "karate";
    r.detector = "louvain";
    r.method = "se";
    r.q.values = {0.4, 0.42};
    r.nmi.values = {1.0, 1.0};
    r.ari.values = {1.0, 1.0};
    r.rimp_nmi = 0.7036;
    std::ostringstream out;
    std::vector<MetricsReport> reports{r};
    write_report_csv(reports, out);
    auto text = out.str();
    CHECK(text.find("dataset,detector,method,metric,mean,std,rimp") != std::string::npos);
    CHECK(text.find("karate,louvain,se,nmi,1.000,0.000,0.704") != std::string::npos);

    std::ostringstream js;
    write_report_json(reports, js);
    CHECK(js.str().find("\"rimp\": 0.7036") != std::string::npos);
}

} // TEST_SUITE
