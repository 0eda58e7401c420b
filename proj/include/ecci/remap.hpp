#pragma once

#include <vector>

#include "ecci/channel.hpp"
#include "ecci/ltcode.hpp"

namespace ecci {

// GF(2) view of one analog bucket reading.
struct RemappedSignal {
    double llr = 0.0;    // signed GF(2) LLR; positive means bit 1
    int bit = 0;         // m_star mod 2
    int m_star = 0;      // most likely integer pixel count
    double delta_l = 0.0;  // confidence gap, >= 0 (soft paths only)
};

enum class RemapMode { Hard, Soft, SoftExact };

// LLR of hypothesis m against m = 0: (2y - m*y0)*m*y0 / (2*sigma2).
double integer_llr(double y, int m, const ChannelParams& params);

// Nearest-integer decision with clamping to [0, shot_degree]; half-integer
// ties round to even.
RemappedSignal remap_hard(double y, const ChannelParams& params, int shot_degree);

// Argmax over the integer hypotheses; delta_l is the gap between the two
// largest LLRs, signed by the parity of the winner.
RemappedSignal remap_soft(double y, const ChannelParams& params, int shot_degree);

// Exact binary LLR log(P(odd|y)/P(even|y)) under a uniform prior over m.
// Study variant; the default pipeline uses remap_soft.
RemappedSignal remap_soft_exact(double y, const ChannelParams& params,
                                int shot_degree);

std::vector<RemappedSignal> remap_record(const MeasurementRecord& record,
                                         const EncodingGraph& graph,
                                         RemapMode mode);

// Channel LLR vector for the decoder. Soft entries pass through; hard bits
// map to +/- hard_magnitude.
std::vector<double> channel_llrs(const std::vector<RemappedSignal>& remapped,
                                 RemapMode mode, double hard_magnitude = 20.0);

}  // namespace ecci
