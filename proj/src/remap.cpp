#include "ecci/remap.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>

#include "ecci/errors.hpp"

namespace ecci {

double integer_llr(double y, int m, const ChannelParams& params) {
    if (params.sigma2 <= 0.0)
        throw ConfigError("integer_llr needs sigma2 > 0; use the hard path");
    if (m == 0) return 0.0;
    const double my0 = double(m) * params.y0_mean;
    return (2.0 * y - my0) * my0 / (2.0 * params.sigma2);
}

RemappedSignal remap_hard(double y, const ChannelParams& params, int shot_degree) {
    if (shot_degree < 1) throw ConfigError("shot degree must be >= 1");
    // nearbyint rounds half to even under the default rounding mode
    double m = std::nearbyint(y / params.y0_mean);
    if (m < 0.0) m = 0.0;
    if (m > double(shot_degree)) m = double(shot_degree);
    RemappedSignal r;
    r.m_star = static_cast<int>(m);
    r.bit = r.m_star & 1;
    return r;
}

RemappedSignal remap_soft(double y, const ChannelParams& params, int shot_degree) {
    if (shot_degree < 1) throw ConfigError("shot degree must be >= 1");
    if (params.sigma2 <= 0.0)
        throw ConfigError("remap_soft needs sigma2 > 0; use the hard path");
    int best = 0, second = -1;
    double best_l = 0.0, second_l = -std::numeric_limits<double>::infinity();
    for (int m = 0; m <= shot_degree; ++m) {
        const double l = integer_llr(y, m, params);
        if (m == 0) {
            best_l = l;
            continue;
        }
        if (l > best_l) {
            second = best;
            second_l = best_l;
            best = m;
            best_l = l;
        } else if (l > second_l) {
            second = m;
            second_l = l;
        }
    }
    (void)second;
    RemappedSignal r;
    r.m_star = best;
    r.bit = best & 1;
    r.delta_l = best_l - second_l;
    r.llr = (best & 1) ? r.delta_l : -r.delta_l;
    return r;
}

RemappedSignal remap_soft_exact(double y, const ChannelParams& params,
                                int shot_degree) {
    if (shot_degree < 1) throw ConfigError("shot degree must be >= 1");
    if (params.sigma2 <= 0.0)
        throw ConfigError("remap_soft_exact needs sigma2 > 0; use the hard path");
    // log-sum-exp of the per-m LLRs, split by parity
    double max_l = 0.0;
    std::vector<double> ls(static_cast<std::size_t>(shot_degree) + 1);
    int best = 0;
    for (int m = 0; m <= shot_degree; ++m) {
        ls[static_cast<std::size_t>(m)] = integer_llr(y, m, params);
        if (ls[static_cast<std::size_t>(m)] > ls[static_cast<std::size_t>(best)])
            best = m;
        max_l = std::max(max_l, ls[static_cast<std::size_t>(m)]);
    }
    double odd = 0.0, even = 0.0;
    for (int m = 0; m <= shot_degree; ++m) {
        const double w = std::exp(ls[static_cast<std::size_t>(m)] - max_l);
        if (m & 1)
            odd += w;
        else
            even += w;
    }
    RemappedSignal r;
    r.m_star = best;
    r.bit = best & 1;
    r.llr = std::log(odd) - std::log(even);
    r.delta_l = std::abs(r.llr);
    return r;
}

std::vector<RemappedSignal> remap_record(const MeasurementRecord& record,
                                         const EncodingGraph& graph,
                                         RemapMode mode) {
    if (static_cast<int>(record.values.size()) != graph.shot_count())
        throw ConfigError("record has " + std::to_string(record.values.size()) +
                          " readings but graph has " +
                          std::to_string(graph.shot_count()) + " shots");
    std::vector<RemappedSignal> out;
    out.reserve(record.values.size());
    for (int i = 0; i < graph.shot_count(); ++i) {
        const int degree =
            static_cast<int>(graph.signal_nodes[static_cast<std::size_t>(i)].size());
        const double y = record.values[static_cast<std::size_t>(i)];
        switch (mode) {
            case RemapMode::Hard:
                out.push_back(remap_hard(y, record.params, degree));
                break;
            case RemapMode::Soft:
                out.push_back(remap_soft(y, record.params, degree));
                break;
            case RemapMode::SoftExact:
                out.push_back(remap_soft_exact(y, record.params, degree));
                break;
        }
    }
    return out;
}

std::vector<double> channel_llrs(const std::vector<RemappedSignal>& remapped,
                                 RemapMode mode, double hard_magnitude) {
    std::vector<double> out(remapped.size());
    for (std::size_t i = 0; i < remapped.size(); ++i)
        out[i] = mode == RemapMode::Hard
                     ? (remapped[i].bit ? hard_magnitude : -hard_magnitude)
                     : remapped[i].llr;
    return out;
}

}  // namespace ecci
