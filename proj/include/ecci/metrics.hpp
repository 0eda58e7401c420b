#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ecci {

// Mean squared per-pixel error against binary truth. Estimates may be
// binary decisions or normalized analog values in [0,1].
double mse(std::span<const double> estimate, std::span<const std::uint8_t> truth);

// 10*log10((P_s - P_n)/P_n); requires P_s > P_n > 0.
double snr_of(double signal_power, double noise_power);

struct ScoreRow {
    std::string method;
    double snr_db = 0.0;
    std::uint64_t seed = 0;
    double mse = 0.0;
    int iterations = 0;
    double coverage_gap = 0.0;  // uncovered-pixel fraction
};

// CSV schema: method,snr_db,seed,mse,iterations,coverage_gap.
std::string write_scores(const std::vector<ScoreRow>& rows);
std::vector<ScoreRow> read_scores(const std::string& payload);

}  // namespace ecci
