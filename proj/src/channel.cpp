#include "ecci/channel.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ecci/errors.hpp"

namespace ecci {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

double bucket_sum(std::span<const std::uint8_t> scene_bits,
                  std::span<const std::uint8_t> pattern,
                  const ChannelParams& params) {
    if (scene_bits.size() != pattern.size())
        throw ConfigError("bucket_sum: pattern length " +
                          std::to_string(pattern.size()) +
                          " != scene length " + std::to_string(scene_bits.size()));
    long m = 0;
    for (std::size_t j = 0; j < pattern.size(); ++j)
        m += pattern[j] & scene_bits[j];
    return double(m) * params.y0_mean;
}

std::vector<double> add_awgn(const std::vector<double>& clean, double sigma2,
                             Rng& rng) {
    if (sigma2 < 0.0) throw ConfigError("negative noise variance");
    if (sigma2 == 0.0) return clean;
    const double sigma = std::sqrt(sigma2);
    std::vector<double> out(clean.size());
    for (std::size_t i = 0; i < clean.size(); ++i)
        out[i] = clean[i] + sigma * rng.normal();
    return out;
}

double calibrate_sigma(const std::vector<double>& clean, double snr_db) {
    if (!std::isfinite(snr_db)) throw CalibrationError("non-finite SNR");
    double mean_sq = 0.0;
    for (double v : clean) mean_sq += v * v;
    if (clean.empty() || mean_sq == 0.0)
        throw CalibrationError("cannot calibrate SNR on an all-zero signal");
    mean_sq /= double(clean.size());
    return mean_sq / std::pow(10.0, snr_db / 10.0);
}

MeasurementRecord measure_all(const BinaryScene& scene,
                              const EncodingGraph& graph,
                              const ChannelParams& params, Rng& rng) {
    if (graph.pixel_count != scene.pixel_count())
        throw ConfigError("graph covers " + std::to_string(graph.pixel_count) +
                          " pixels but scene has " +
                          std::to_string(scene.pixel_count()));
    std::vector<double> clean(static_cast<std::size_t>(graph.shot_count()));
    for (int i = 0; i < graph.shot_count(); ++i) {
        long m = 0;
        for (int j : graph.signal_nodes[static_cast<std::size_t>(i)])
            m += scene.pixels[static_cast<std::size_t>(j)];
        clean[static_cast<std::size_t>(i)] = double(m) * params.y0_mean;
    }
    MeasurementRecord rec;
    rec.values = add_awgn(clean, params.sigma2, rng);
    rec.params = params;
    rec.graph_seed = graph.seed;
    return rec;
}

std::string write_measurements(const MeasurementRecord& record) {
    std::ostringstream out;
    out << "# y0_mean=" << fmt_double(record.params.y0_mean)
        << " sigma2=" << fmt_double(record.params.sigma2)
        << " graph_seed=" << record.graph_seed << "\n";
    out << "shot_index,y_value\n";
    for (std::size_t i = 0; i < record.values.size(); ++i)
        out << i << "," << fmt_double(record.values[i]) << "\n";
    return out.str();
}

MeasurementRecord read_measurements(const std::string& payload) {
    std::istringstream in(payload);
    std::string line;
    MeasurementRecord rec;
    bool have_params = false, have_header = false;
    long expect_index = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::size_t y0_at = line.find("y0_mean=");
            std::size_t s2_at = line.find("sigma2=");
            std::size_t seed_at = line.find("graph_seed=");
            if (y0_at == std::string::npos || s2_at == std::string::npos ||
                seed_at == std::string::npos)
                throw ParseError("measurement comment lacks channel parameters");
            rec.params.y0_mean = std::stod(line.substr(y0_at + 8));
            rec.params.sigma2 = std::stod(line.substr(s2_at + 7));
            rec.graph_seed = std::stoull(line.substr(seed_at + 11));
            have_params = true;
            continue;
        }
        if (!have_header) {
            if (line != "shot_index,y_value")
                throw ParseError("bad measurement CSV header: '" + line + "'");
            have_header = true;
            continue;
        }
        std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("bad measurement row: '" + line + "'");
        long idx = std::stol(line.substr(0, comma));
        if (idx != expect_index)
            throw ParseError("measurement rows out of order at index " +
                             std::to_string(idx));
        ++expect_index;
        rec.values.push_back(std::stod(line.substr(comma + 1)));
    }
    if (!have_params || !have_header)
        throw ParseError("measurement CSV missing header");
    return rec;
}

}  // namespace ecci
