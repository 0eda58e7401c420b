#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "ecci/errors.hpp"
#include "ecci/ltcode.hpp"

using namespace ecci;

TEST_CASE("omega matches the design table") {
    auto d = omega_paper();
    CHECK(d.mass_of(1) == doctest::Approx(0.30).epsilon(1e-15));
    CHECK(d.mass_of(2) == doctest::Approx(0.30).epsilon(1e-15));
    for (int k = 3; k <= 10; ++k)
        CHECK(d.mass_of(k) == doctest::Approx(0.05).epsilon(1e-15));
    double total = 0.0;
    for (double m : d.mass) total += m;
    CHECK(std::abs(total - 1.0) <= 1e-12);
    CHECK(d.max_degree() == 10);
}

TEST_CASE("degenerate distribution always returns its point mass") {
    DegreeDistribution d{{5}, {1.0}};
    Rng rng(7);
    for (int i = 0; i < 100; ++i) CHECK(sample_degree(d, rng) == 5);
}

TEST_CASE("sampled frequencies match omega") {
    auto d = omega_paper();
    Rng rng(42);
    const int n = 1000000;
    int ones = 0;
    for (int i = 0; i < n; ++i)
        if (sample_degree(d, rng) == 1) ++ones;
    CHECK(double(ones) / n == doctest::Approx(0.30).epsilon(0.02));
    CHECK(std::abs(double(ones) / n - 0.30) < 0.005);
}

TEST_CASE("same seed gives the same draw sequence") {
    auto d = omega_paper();
    Rng a(123), b(123);
    for (int i = 0; i < 1000; ++i) CHECK(sample_degree(d, a) == sample_degree(d, b));
}

TEST_CASE("graph shape and purity") {
    auto g = build_graph(64, 128, omega_paper(), 99);
    CHECK(g.pixel_count == 64);
    CHECK(g.shot_count() == 128);
    CHECK(g.seed == 99);
    auto g2 = build_graph(64, 128, omega_paper(), 99);
    CHECK(g2.signal_nodes == g.signal_nodes);
}

TEST_CASE("forced degree-1 shot") {
    DegreeDistribution point{{1}, {1.0}};
    auto g = build_graph(4, 1, point, 5);
    REQUIRE(g.signal_nodes.size() == 1);
    REQUIRE(g.signal_nodes[0].size() == 1);
    CHECK(g.signal_nodes[0][0] >= 0);
    CHECK(g.signal_nodes[0][0] < 4);
}

TEST_CASE("adjacency is the exact transpose") {
    auto g = build_graph(50, 300, omega_paper(), 3);
    for (int i = 0; i < g.shot_count(); ++i)
        for (int j : g.signal_nodes[i]) {
            const auto& b = g.pixel_adjacency[j];
            CHECK(std::find(b.begin(), b.end(), i) != b.end());
        }
    long edges_fwd = 0, edges_rev = 0;
    for (const auto& a : g.signal_nodes) {
        edges_fwd += long(a.size());
        std::set<int> dedup(a.begin(), a.end());
        CHECK(dedup.size() == a.size());  // distinct pixels per shot
    }
    for (const auto& b : g.pixel_adjacency) edges_rev += long(b.size());
    CHECK(edges_fwd == edges_rev);
}

TEST_CASE("pattern masks match shot sets") {
    auto g = build_graph(32, 64, omega_paper(), 11);
    for (int i = 0; i < g.shot_count(); ++i) {
        auto mask = pattern_of(g, i);
        long pop = 0;
        for (auto b : mask) pop += b;
        CHECK(pop == long(g.signal_nodes[i].size()));
        for (int j : g.signal_nodes[i]) CHECK(mask[j] == 1);
    }
    CHECK_THROWS_AS(pattern_of(g, 64), ConfigError);
}

TEST_CASE("coverage gap stays under 1% at N = 2K") {
    const int k = 1024;
    double gap = 0.0;
    const int seeds = 10;
    for (int s = 0; s < seeds; ++s) {
        auto g = build_graph(k, 2 * k, omega_paper(), 1000 + s);
        int uncovered = 0;
        for (const auto& b : g.pixel_adjacency)
            if (b.empty()) ++uncovered;
        gap += double(uncovered) / k;
    }
    CHECK(gap / seeds < 0.01);
}

TEST_CASE("graph text format round trips") {
    auto g = build_graph(20, 40, omega_paper(), 77);
    auto back = read_graph(write_graph(g));
    CHECK(back.pixel_count == g.pixel_count);
    CHECK(back.seed == g.seed);
    CHECK(back.signal_nodes == g.signal_nodes);
    CHECK(back.pixel_adjacency == g.pixel_adjacency);

    CHECK_THROWS_AS(read_graph(""), ParseError);
    CHECK_THROWS_AS(read_graph("20 2 0\n1 2\n"), ParseError);   // truncated
    CHECK_THROWS_AS(read_graph("4 1 0\n1 9\n"), ParseError);    // out of range
    CHECK_THROWS_AS(read_graph("4 1 0\n1 1\n"), ParseError);    // duplicate
}

TEST_CASE("invalid distributions are rejected") {
    DegreeDistribution bad{{1, 1}, {0.5, 0.5}};
    CHECK_THROWS_AS(build_graph(8, 4, bad, 0), ConfigError);
    DegreeDistribution sum{{1, 2}, {0.5, 0.6}};
    CHECK_THROWS_AS(build_graph(8, 4, sum, 0), ConfigError);
    DegreeDistribution toobig{{9}, {1.0}};
    CHECK_THROWS_AS(build_graph(8, 4, toobig, 0), ConfigError);
}
