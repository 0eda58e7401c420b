#include <doctest.h>

#include <cmath>

#include "ecci/bpdecoder.hpp"
#include "ecci/channel.hpp"
#include "ecci/errors.hpp"
#include "ecci/remap.hpp"
#include "ecci/scene.hpp"
#include "oracles.hpp"

using namespace ecci;
using ecci::testing::enumeration_marginals;
using ecci::testing::graph_from_shots;

TEST_CASE("tree toy matches exact marginals") {
    auto g = graph_from_shots(2, {{0}, {1}, {0, 1}});
    std::vector<double> llrs{5.0, -5.0, 5.0};
    BpConfig cfg;
    cfg.stop_on_syndrome = false;  // run to the fixed point
    auto r = decode(llrs, g, cfg);
    CHECK(r.decoded == std::vector<std::uint8_t>{1, 0});
    auto exact = enumeration_marginals(llrs, g);
    CHECK(r.pixel_llrs[0] == doctest::Approx(exact[0]).epsilon(1e-9));
    CHECK(r.pixel_llrs[1] == doctest::Approx(exact[1]).epsilon(1e-9));
}

TEST_CASE("all-zero llrs decode to all ones by the tie rule") {
    auto g = build_graph(32, 64, omega_paper(), 8);
    std::vector<double> llrs(64, 0.0);
    auto r = decode(llrs, g, BpConfig{});
    for (int j = 0; j < 32; ++j) {
        CHECK(r.pixel_llrs[j] == 0.0);
        CHECK(r.decoded[j] == 1);
    }
}

TEST_CASE("bp equals enumeration on random trees") {
    Rng rng(2024);
    for (int t = 0; t < 60; ++t) {
        auto inst = ecci::testing::random_tree(rng);
        BpConfig cfg;
        cfg.stop_on_syndrome = false;
        cfg.message_clamp = 200.0;  // keep the clamp out of play
        auto r = decode(inst.llrs, inst.graph, cfg);
        auto exact = enumeration_marginals(inst.llrs, inst.graph);
        for (int j = 0; j < inst.graph.pixel_count; ++j)
            CHECK(r.pixel_llrs[j] ==
                  doctest::Approx(exact[j]).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("signal posteriors include the channel term") {
    auto g = graph_from_shots(2, {{0}, {1}, {0, 1}});
    std::vector<double> llrs{5.0, -5.0, 5.0};
    BpConfig cfg;
    cfg.stop_on_syndrome = false;
    auto r = decode(llrs, g, cfg);
    REQUIRE(r.signal_llrs.size() == 3);
    // degree-1 shots: S_i = channel llr + message from the pixel
    CHECK(r.signal_llrs[0] > llrs[0]);
}

TEST_CASE("zero iterations keeps only degree-1 information") {
    auto g = graph_from_shots(3, {{0}, {0, 1}, {1, 2}});
    std::vector<double> llrs{4.0, 4.0, -4.0};
    BpConfig cfg;
    cfg.max_iterations = 0;
    auto r = decode(llrs, g, cfg);
    CHECK(r.iterations_used == 0);
    CHECK(r.pixel_llrs[0] == doctest::Approx(4.0));  // from the degree-1 shot
    CHECK(r.pixel_llrs[1] == 0.0);
    CHECK(r.pixel_llrs[2] == 0.0);
}

TEST_CASE("messages never exceed the clamp") {
    Rng rng(5);
    auto g = build_graph(64, 256, omega_paper(), 123);
    std::vector<double> llrs(256);
    for (auto& l : llrs) l = (rng.uniform01() - 0.5) * 80.0;
    BpConfig cfg;
    cfg.message_clamp = 10.0;
    cfg.stop_on_syndrome = false;
    auto r = decode(llrs, g, cfg);
    for (double l : r.pixel_llrs) CHECK(std::isfinite(l));
    // posteriors are sums of clamped messages over at most |B_j| edges
    for (int j = 0; j < 64; ++j)
        CHECK(std::abs(r.pixel_llrs[j]) <=
              10.0 * double(g.pixel_adjacency[j].size()) + 1e-12);
}

TEST_CASE("uniform scaling of noiseless llrs keeps the decision") {
    auto g = build_graph(24, 96, omega_paper(), 55);
    std::vector<std::uint8_t> truth(24);
    Rng rng(9);
    for (auto& b : truth) b = rng.uniform01() < 0.4 ? 1 : 0;
    std::vector<double> llrs(96);
    for (int i = 0; i < 96; ++i) {
        int parity = 0;
        for (int j : g.signal_nodes[i]) parity ^= truth[j];
        llrs[i] = parity ? 2.0 : -2.0;
    }
    BpConfig cfg;
    cfg.message_clamp = 1e9;  // no clamping
    cfg.stop_on_syndrome = false;
    cfg.max_iterations = 20;
    auto base = decode(llrs, g, cfg);
    auto scaled_llrs = llrs;
    for (auto& l : scaled_llrs) l *= 3.0;
    auto scaled = decode(scaled_llrs, g, cfg);
    CHECK(base.decoded == scaled.decoded);
}

TEST_CASE("determinism") {
    auto g = build_graph(64, 128, omega_paper(), 77);
    std::vector<double> llrs(128);
    Rng rng(4);
    for (auto& l : llrs) l = (rng.uniform01() - 0.5) * 10.0;
    auto a = decode(llrs, g, BpConfig{});
    auto b = decode(llrs, g, BpConfig{});
    CHECK(a.decoded == b.decoded);
    CHECK(a.pixel_llrs == b.pixel_llrs);
    CHECK(a.iterations_used == b.iterations_used);
}

TEST_CASE("syndrome check") {
    auto scene = make_test_pattern("glyph-GI", 8, 8);
    auto g = build_graph(64, 256, omega_paper(), 10);
    std::vector<double> llrs(256);
    for (int i = 0; i < 256; ++i) {
        int parity = 0;
        for (int j : g.signal_nodes[i]) parity ^= scene.pixels[j];
        llrs[i] = parity ? 8.0 : -8.0;
    }
    CHECK(syndrome_ok(scene.pixels, llrs, g));

    // flip a pixel that owns a degree-1 shot
    auto flipped = scene.pixels;
    int victim = -1;
    for (int i = 0; i < 256 && victim < 0; ++i)
        if (g.signal_nodes[i].size() == 1) victim = g.signal_nodes[i][0];
    REQUIRE(victim >= 0);
    flipped[victim] ^= 1;
    CHECK_FALSE(syndrome_ok(flipped, llrs, g));

    // empty graph: vacuous truth
    EncodingGraph empty;
    empty.pixel_count = 4;
    empty.pixel_adjacency.assign(4, {});
    CHECK(syndrome_ok(std::vector<std::uint8_t>(4, 0), {}, empty));
}

TEST_CASE("peeling resolves a chain") {
    auto g = graph_from_shots(2, {{0}, {0, 1}});
    std::vector<double> llrs{1.0, 1.0};  // bits 1, 1
    auto r = peel_decode(llrs, g);
    CHECK(r.resolved == 2);
    CHECK(r.assignment[0] == 1);
    CHECK(r.assignment[1] == 0);  // 1 xor 1
}

TEST_CASE("peeling needs a degree-1 shot to start") {
    auto g = graph_from_shots(3, {{0, 1}, {1, 2}, {0, 2}});
    std::vector<double> llrs{1.0, -1.0, 1.0};
    auto r = peel_decode(llrs, g);
    CHECK(r.resolved == 0);
    for (int v : r.assignment) CHECK(v == -1);
}

TEST_CASE("noiseless paper-scale hard decode recovers the covered scene") {
    auto scene = make_test_pattern("glyph-GI", 64, 64);
    auto g = build_graph(4096, 8192, omega_paper(), 1001);
    Rng rng(0);
    auto rec = measure_all(scene, g, ChannelParams{1.0, 0.0}, rng);
    auto remapped = remap_record(rec, g, RemapMode::Hard);
    auto llrs = channel_llrs(remapped, RemapMode::Hard, 20.0);
    auto r = decode(llrs, g, BpConfig{});

    // peeling oracle on the same instance
    auto peel = peel_decode(llrs, g);
    int covered_errors = 0;
    for (int j = 0; j < 4096; ++j) {
        if (g.pixel_adjacency[j].empty()) continue;
        if (r.decoded[j] != scene.pixels[j]) ++covered_errors;
        if (peel.assignment[j] >= 0) CHECK(peel.assignment[j] == scene.pixels[j]);
    }
    CHECK(covered_errors == 0);
    CHECK(r.converged);
    CHECK(r.uncovered_pixels < 41);  // < 1% of 4096
}

TEST_CASE("bad inputs are rejected") {
    auto g = build_graph(16, 4, omega_paper(), 0);
    std::vector<double> llrs(4, 0.0);
    llrs[2] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(decode(llrs, g, BpConfig{}), ConfigError);
    CHECK_THROWS_AS(decode(std::vector<double>(3, 0.0), g, BpConfig{}), ConfigError);
    BpConfig bad;
    bad.message_clamp = 0.0;
    CHECK_THROWS_AS(decode(std::vector<double>(4, 0.0), g, bad), ConfigError);
}
