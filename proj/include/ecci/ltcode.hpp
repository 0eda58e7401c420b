#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecci/rng.hpp"

namespace ecci {

// Discrete degree distribution Omega(d) over shot degrees.
struct DegreeDistribution {
    std::vector<int> support;  // distinct degrees, >= 1
    std::vector<double> mass;  // same length, nonnegative, sums to 1

    int max_degree() const;
    double mass_of(int degree) const;  // 0 for degrees outside the support
    void validate(int pixel_count) const;
};

// The distribution used throughout the experiments: d in 1..10,
// P(1) = P(2) = 0.30, P(3..10) = 0.05 each.
DegreeDistribution omega_paper();

int sample_degree(const DegreeDistribution& dist, Rng& rng);

// Bipartite illumination graph. signal_nodes[i] lists the pixels lit in
// shot i (A_i, sorted ascending); pixel_adjacency[j] is the transpose B_j.
struct EncodingGraph {
    int pixel_count = 0;  // K
    std::vector<std::vector<int>> signal_nodes;
    std::vector<std::vector<int>> pixel_adjacency;
    std::uint64_t seed = 0;

    int shot_count() const { return static_cast<int>(signal_nodes.size()); }
};

// Draws N shots: degree d ~ dist, then d distinct pixels uniformly without
// replacement. Pure function of (pixel_count, shot_count, dist, seed).
EncodingGraph build_graph(int pixel_count, int shot_count,
                          const DegreeDistribution& dist, std::uint64_t seed);

// Bit mask over K pixels with ones at A_i.
std::vector<std::uint8_t> pattern_of(const EncodingGraph& graph, int shot);

// Line-oriented text format: header "K N seed", then one line per shot
// listing the A_i indices. Enables decoder-only replay.
std::string write_graph(const EncodingGraph& graph);
EncodingGraph read_graph(const std::string& payload);

}  // namespace ecci
