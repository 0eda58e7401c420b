#include "ecci/bpdecoder.hpp"

#include <cmath>
#include <deque>
#include <limits>

#include "ecci/errors.hpp"

namespace ecci {

namespace {

double clamp_to(double v, double bound) {
    if (v > bound) return bound;
    if (v < -bound) return -bound;
    return v;
}

// 2*atanh with the argument kept strictly inside (-1, 1).
double two_atanh(double p) {
    constexpr double kEdge = 1.0 - 1e-15;
    p = clamp_to(p, kEdge);
    return std::log((1.0 + p) / (1.0 - p));
}

struct EdgeLayout {
    std::vector<int> shot_start;  // size N+1
    std::vector<int> pixel;       // edge -> pixel index
};

EdgeLayout layout_of(const EncodingGraph& g) {
    EdgeLayout l;
    l.shot_start.reserve(static_cast<std::size_t>(g.shot_count()) + 1);
    l.shot_start.push_back(0);
    for (const auto& shot : g.signal_nodes) {
        for (int j : shot) l.pixel.push_back(j);
        l.shot_start.push_back(static_cast<int>(l.pixel.size()));
    }
    return l;
}

}  // namespace

bool syndrome_ok(const std::vector<std::uint8_t>& decoded,
                 const std::vector<double>& llrs, const EncodingGraph& graph) {
    if (static_cast<int>(decoded.size()) != graph.pixel_count ||
        static_cast<int>(llrs.size()) != graph.shot_count())
        throw ConfigError("syndrome_ok: length mismatch");
    for (int i = 0; i < graph.shot_count(); ++i) {
        int parity = 0;
        for (int j : graph.signal_nodes[static_cast<std::size_t>(i)])
            parity ^= decoded[static_cast<std::size_t>(j)];
        const int expected = llrs[static_cast<std::size_t>(i)] >= 0.0 ? 1 : 0;
        if (parity != expected) return false;
    }
    return true;
}

ReconstructionResult decode(const std::vector<double>& llrs,
                            const EncodingGraph& graph, const BpConfig& cfg,
                            std::vector<BpTraceRow>* trace) {
    const int n_shots = graph.shot_count();
    const int n_pixels = graph.pixel_count;
    if (static_cast<int>(llrs.size()) != n_shots)
        throw ConfigError("decode: got " + std::to_string(llrs.size()) +
                          " LLRs for " + std::to_string(n_shots) + " shots");
    for (double l : llrs)
        if (!std::isfinite(l)) throw ConfigError("decode: non-finite channel LLR");
    if (cfg.max_iterations < 0 || cfg.message_clamp <= 0.0)
        throw ConfigError("decode: bad BpConfig");

    const EdgeLayout layout = layout_of(graph);
    const int n_edges = static_cast<int>(layout.pixel.size());
    std::vector<double> v2c(static_cast<std::size_t>(n_edges), 0.0);
    std::vector<double> c2v(static_cast<std::size_t>(n_edges), 0.0);

    // Channel tanh terms. The LLR convention here is positive = bit 1, so
    // tanh(L/2) = P(1) - P(0) = -E[(-1)^bit]; folding the (-1) factors of
    // the |A_i| pixel terms and the result back into LLR form leaves a net
    // parity sign of (-1)^(|A_i|+1) on the plain tanh product.
    std::vector<double> channel_tanh(static_cast<std::size_t>(n_shots));
    for (int i = 0; i < n_shots; ++i) {
        const int deg = layout.shot_start[static_cast<std::size_t>(i) + 1] -
                        layout.shot_start[static_cast<std::size_t>(i)];
        const double sign = (deg & 1) ? 1.0 : -1.0;
        channel_tanh[static_cast<std::size_t>(i)] =
            sign * std::tanh(clamp_to(llrs[static_cast<std::size_t>(i)],
                                      cfg.message_clamp) / 2.0);
    }

    std::vector<double> pixel_llr(static_cast<std::size_t>(n_pixels), 0.0);
    std::vector<std::uint8_t> decoded(static_cast<std::size_t>(n_pixels), 0);

    auto check_update = [&] {
        std::vector<double> prod;  // prefix/suffix scratch
        for (int i = 0; i < n_shots; ++i) {
            const int begin = layout.shot_start[static_cast<std::size_t>(i)];
            const int end = layout.shot_start[static_cast<std::size_t>(i) + 1];
            const int deg = end - begin;
            prod.assign(static_cast<std::size_t>(deg), 0.0);
            for (int e = 0; e < deg; ++e)
                prod[static_cast<std::size_t>(e)] =
                    std::tanh(v2c[static_cast<std::size_t>(begin + e)] / 2.0);
            // message to edge e: channel term times every other edge term
            for (int e = 0; e < deg; ++e) {
                double p = channel_tanh[static_cast<std::size_t>(i)];
                for (int k = 0; k < deg; ++k)
                    if (k != e) p *= prod[static_cast<std::size_t>(k)];
                c2v[static_cast<std::size_t>(begin + e)] =
                    clamp_to(two_atanh(p), cfg.message_clamp);
            }
        }
    };

    auto refresh_posteriors = [&] {
        std::fill(pixel_llr.begin(), pixel_llr.end(), 0.0);
        for (int e = 0; e < n_edges; ++e)
            pixel_llr[static_cast<std::size_t>(layout.pixel[static_cast<std::size_t>(e)])] +=
                c2v[static_cast<std::size_t>(e)];
        for (int j = 0; j < n_pixels; ++j)
            decoded[static_cast<std::size_t>(j)] =
                pixel_llr[static_cast<std::size_t>(j)] >= 0.0 ? 1 : 0;
    };

    auto var_update = [&] {
        for (int e = 0; e < n_edges; ++e)
            v2c[static_cast<std::size_t>(e)] = clamp_to(
                pixel_llr[static_cast<std::size_t>(
                    layout.pixel[static_cast<std::size_t>(e)])] -
                    c2v[static_cast<std::size_t>(e)],
                cfg.message_clamp);
    };

    auto unsatisfied_count = [&] {
        int bad = 0;
        for (int i = 0; i < n_shots; ++i) {
            int parity = 0;
            for (int e = layout.shot_start[static_cast<std::size_t>(i)];
                 e < layout.shot_start[static_cast<std::size_t>(i) + 1]; ++e)
                parity ^= decoded[static_cast<std::size_t>(
                    layout.pixel[static_cast<std::size_t>(e)])];
            if (parity != (llrs[static_cast<std::size_t>(i)] >= 0.0 ? 1 : 0)) ++bad;
        }
        return bad;
    };

    auto record_trace = [&](int iteration) {
        if (!trace) return;
        double sum_abs = 0.0;
        for (double l : pixel_llr) sum_abs += std::abs(l);
        trace->push_back({iteration, unsatisfied_count(),
                          n_pixels ? sum_abs / n_pixels : 0.0});
    };

    ReconstructionResult result;

    // Channel-initialized state: with all pixel messages at zero, only
    // degree-1 shots contribute to the posteriors.
    check_update();
    refresh_posteriors();
    record_trace(0);
    if (cfg.stop_on_syndrome && unsatisfied_count() == 0) result.converged = true;

    for (int it = 1; it <= cfg.max_iterations && !result.converged; ++it) {
        var_update();
        check_update();
        refresh_posteriors();
        result.iterations_used = it;
        record_trace(it);
        if (cfg.stop_on_syndrome && unsatisfied_count() == 0) {
            result.converged = true;
            break;
        }
    }

    result.signal_llrs.assign(static_cast<std::size_t>(n_shots), 0.0);
    for (int i = 0; i < n_shots; ++i) {
        double s = llrs[static_cast<std::size_t>(i)];
        for (int e = layout.shot_start[static_cast<std::size_t>(i)];
             e < layout.shot_start[static_cast<std::size_t>(i) + 1]; ++e)
            s += v2c[static_cast<std::size_t>(e)];
        result.signal_llrs[static_cast<std::size_t>(i)] = s;
    }
    for (int j = 0; j < n_pixels; ++j)
        if (graph.pixel_adjacency[static_cast<std::size_t>(j)].empty())
            ++result.uncovered_pixels;

    result.decoded = std::move(decoded);
    result.pixel_llrs = std::move(pixel_llr);
    return result;
}

PeelResult peel_decode(const std::vector<double>& llrs,
                       const EncodingGraph& graph) {
    const int n_shots = graph.shot_count();
    if (static_cast<int>(llrs.size()) != n_shots)
        throw ConfigError("peel_decode: LLR/shot count mismatch");

    PeelResult result;
    result.assignment.assign(static_cast<std::size_t>(graph.pixel_count), -1);

    std::vector<int> residual_parity(static_cast<std::size_t>(n_shots));
    std::vector<int> unresolved(static_cast<std::size_t>(n_shots));
    std::deque<int> ready;
    for (int i = 0; i < n_shots; ++i) {
        residual_parity[static_cast<std::size_t>(i)] =
            llrs[static_cast<std::size_t>(i)] >= 0.0 ? 1 : 0;
        unresolved[static_cast<std::size_t>(i)] =
            static_cast<int>(graph.signal_nodes[static_cast<std::size_t>(i)].size());
        if (unresolved[static_cast<std::size_t>(i)] == 1) ready.push_back(i);
    }

    while (!ready.empty()) {
        const int i = ready.front();
        ready.pop_front();
        if (unresolved[static_cast<std::size_t>(i)] != 1) continue;
        // the single unresolved pixel takes the residual parity
        int target = -1;
        for (int j : graph.signal_nodes[static_cast<std::size_t>(i)])
            if (result.assignment[static_cast<std::size_t>(j)] < 0) target = j;
        if (target < 0) continue;
        const int value = residual_parity[static_cast<std::size_t>(i)];
        result.assignment[static_cast<std::size_t>(target)] = value;
        ++result.resolved;
        for (int i2 : graph.pixel_adjacency[static_cast<std::size_t>(target)]) {
            residual_parity[static_cast<std::size_t>(i2)] ^= value;
            if (--unresolved[static_cast<std::size_t>(i2)] == 1) ready.push_back(i2);
        }
    }
    return result;
}

}  // namespace ecci
