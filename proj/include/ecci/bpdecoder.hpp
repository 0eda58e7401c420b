#pragma once

#include <cstdint>
#include <vector>

#include "ecci/ltcode.hpp"

namespace ecci {

struct BpConfig {
    int max_iterations = 50;
    double message_clamp = 30.0;
    bool stop_on_syndrome = true;
};

struct ReconstructionResult {
    std::vector<std::uint8_t> decoded;  // I_j, one bit per pixel
    std::vector<double> pixel_llrs;     // L_j
    std::vector<double> signal_llrs;    // S_i
    int iterations_used = 0;
    bool converged = false;
    int uncovered_pixels = 0;  // pixels with empty adjacency (decode as ties)
};

// Per-iteration convergence trace.
struct BpTraceRow {
    int iteration;
    int unsatisfied_parities;
    double mean_abs_pixel_llr;
};

// Sum-product decoding over the illumination graph. Channel LLRs use the
// convention positive = bit 1; the tanh-product at a signal node therefore
// carries a parity sign correction for even-degree shots (see decode()
// implementation). Deterministic for fixed inputs.
ReconstructionResult decode(const std::vector<double>& llrs,
                            const EncodingGraph& graph, const BpConfig& cfg,
                            std::vector<BpTraceRow>* trace = nullptr);

// True iff every shot's decoded parity matches the hard sign of its
// channel LLR (LLR >= 0 reads as parity 1).
bool syndrome_ok(const std::vector<std::uint8_t>& decoded,
                 const std::vector<double>& llrs, const EncodingGraph& graph);

// Classical LT peeling on the hard signs of the channel LLRs.
struct PeelResult {
    std::vector<int> assignment;  // -1 unresolved, else 0/1
    int resolved = 0;
};

PeelResult peel_decode(const std::vector<double>& llrs,
                       const EncodingGraph& graph);

}  // namespace ecci
