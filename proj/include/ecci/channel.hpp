#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ecci/ltcode.hpp"
#include "ecci/rng.hpp"
#include "ecci/scene.hpp"

namespace ecci {

// Detector model: mean response y0_mean per bright illuminated pixel,
// AWGN with variance sigma2 on every reading.
struct ChannelParams {
    double y0_mean = 1.0;
    double sigma2 = 0.0;
};

// One noisy bucket reading per shot.
struct MeasurementRecord {
    std::vector<double> values;
    ChannelParams params;
    std::uint64_t graph_seed = 0;
};

// Noiseless bucket value: y0_mean times the count of pixels that are both
// illuminated and transmissive.
double bucket_sum(std::span<const std::uint8_t> scene_bits,
                  std::span<const std::uint8_t> pattern,
                  const ChannelParams& params);

std::vector<double> add_awgn(const std::vector<double>& clean, double sigma2,
                             Rng& rng);

// Inverts the SNR definition 10*log10((P_s - P_n)/P_n) with
// P_s = mean(clean^2) + sigma2 and P_n = sigma2.
double calibrate_sigma(const std::vector<double>& clean, double snr_db);

MeasurementRecord measure_all(const BinaryScene& scene,
                              const EncodingGraph& graph,
                              const ChannelParams& params, Rng& rng);

// CSV with a comment header carrying the channel parameters and seed,
// then "shot_index,y_value" rows.
std::string write_measurements(const MeasurementRecord& record);
MeasurementRecord read_measurements(const std::string& payload);

}  // namespace ecci
