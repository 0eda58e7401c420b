#include "ecci/ltcode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ecci/errors.hpp"

namespace ecci {

int DegreeDistribution::max_degree() const {
    int m = 0;
    for (int d : support) m = std::max(m, d);
    return m;
}

double DegreeDistribution::mass_of(int degree) const {
    for (std::size_t i = 0; i < support.size(); ++i)
        if (support[i] == degree) return mass[i];
    return 0.0;
}

void DegreeDistribution::validate(int pixel_count) const {
    if (support.empty() || support.size() != mass.size())
        throw ConfigError("degree distribution: support/mass size mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i] < 1 || support[i] > pixel_count)
            throw ConfigError("degree " + std::to_string(support[i]) +
                              " outside [1, K=" + std::to_string(pixel_count) + "]");
        for (std::size_t k = 0; k < i; ++k)
            if (support[k] == support[i])
                throw ConfigError("duplicate degree " + std::to_string(support[i]));
        if (mass[i] < 0.0)
            throw ConfigError("negative probability mass");
        total += mass[i];
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ConfigError("degree masses sum to " + std::to_string(total) +
                          ", expected 1");
}

DegreeDistribution omega_paper() {
    DegreeDistribution d;
    d.support = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    d.mass = {0.30, 0.30, 0.05, 0.05, 0.05, 0.05, 0.05, 0.05, 0.05, 0.05};
    return d;
}

int sample_degree(const DegreeDistribution& dist, Rng& rng) {
    const double u = rng.uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.support.size(); ++i) {
        acc += dist.mass[i];
        if (u < acc) return dist.support[i];
    }
    return dist.support.back();
}

EncodingGraph build_graph(int pixel_count, int shot_count,
                          const DegreeDistribution& dist, std::uint64_t seed) {
    if (shot_count < 1) throw ConfigError("shot count must be >= 1");
    dist.validate(pixel_count);

    EncodingGraph g;
    g.pixel_count = pixel_count;
    g.seed = seed;
    g.signal_nodes.reserve(static_cast<std::size_t>(shot_count));
    g.pixel_adjacency.assign(static_cast<std::size_t>(pixel_count), {});

    Rng rng(seed);
    std::vector<int> picked;
    for (int i = 0; i < shot_count; ++i) {
        const int d = sample_degree(dist, rng);
        picked.clear();
        while (static_cast<int>(picked.size()) < d) {
            int j = static_cast<int>(rng.uniform_below(std::uint64_t(pixel_count)));
            if (std::find(picked.begin(), picked.end(), j) == picked.end())
                picked.push_back(j);
        }
        std::sort(picked.begin(), picked.end());
        for (int j : picked) g.pixel_adjacency[static_cast<std::size_t>(j)].push_back(i);
        g.signal_nodes.push_back(picked);
    }
    return g;
}

std::vector<std::uint8_t> pattern_of(const EncodingGraph& graph, int shot) {
    if (shot < 0 || shot >= graph.shot_count())
        throw ConfigError("shot index " + std::to_string(shot) + " out of range");
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(graph.pixel_count), 0);
    for (int j : graph.signal_nodes[static_cast<std::size_t>(shot)])
        mask[static_cast<std::size_t>(j)] = 1;
    return mask;
}

std::string write_graph(const EncodingGraph& graph) {
    std::ostringstream out;
    out << graph.pixel_count << " " << graph.shot_count() << " " << graph.seed
        << "\n";
    for (const auto& shot : graph.signal_nodes) {
        for (std::size_t k = 0; k < shot.size(); ++k) {
            if (k) out << ' ';
            out << shot[k];
        }
        out << '\n';
    }
    return out.str();
}

EncodingGraph read_graph(const std::string& payload) {
    std::istringstream in(payload);
    std::string header;
    if (!std::getline(in, header)) throw ParseError("empty graph payload");
    std::istringstream hs(header);
    long k = 0, n = 0;
    std::uint64_t seed = 0;
    if (!(hs >> k >> n >> seed) || k < 1 || n < 1)
        throw ParseError("bad graph header: '" + header + "'");

    EncodingGraph g;
    g.pixel_count = static_cast<int>(k);
    g.seed = seed;
    g.pixel_adjacency.assign(static_cast<std::size_t>(k), {});
    std::string line;
    for (long i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            throw ParseError("graph payload truncated at shot " + std::to_string(i));
        std::istringstream ls(line);
        std::vector<int> shot;
        long j;
        while (ls >> j) {
            if (j < 0 || j >= k)
                throw ParseError("pixel index " + std::to_string(j) +
                                 " out of range in shot " + std::to_string(i));
            shot.push_back(static_cast<int>(j));
        }
        if (shot.empty())
            throw ParseError("empty shot " + std::to_string(i));
        std::sort(shot.begin(), shot.end());
        if (std::adjacent_find(shot.begin(), shot.end()) != shot.end())
            throw ParseError("duplicate pixel index in shot " + std::to_string(i));
        for (int p : shot)
            g.pixel_adjacency[static_cast<std::size_t>(p)].push_back(
                static_cast<int>(i));
        g.signal_nodes.push_back(std::move(shot));
    }
    return g;
}

}  // namespace ecci
