#include "ecci/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ecci/errors.hpp"

namespace ecci {

double mse(std::span<const double> estimate, std::span<const std::uint8_t> truth) {
    if (estimate.size() != truth.size())
        throw ConfigError("mse: estimate length " + std::to_string(estimate.size()) +
                          " != truth length " + std::to_string(truth.size()));
    if (estimate.empty()) throw ConfigError("mse: empty input");
    double acc = 0.0;
    for (std::size_t j = 0; j < estimate.size(); ++j) {
        const double d = estimate[j] - double(truth[j]);
        acc += d * d;
    }
    return acc / double(estimate.size());
}

double snr_of(double signal_power, double noise_power) {
    if (!(noise_power > 0.0) || !(signal_power > noise_power))
        throw CalibrationError("snr_of needs P_s > P_n > 0");
    return 10.0 * std::log10((signal_power - noise_power) / noise_power);
}

std::string write_scores(const std::vector<ScoreRow>& rows) {
    std::ostringstream out;
    out << "method,snr_db,seed,mse,iterations,coverage_gap\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%llu,%.17g,%d,%.17g", r.snr_db,
                      static_cast<unsigned long long>(r.seed), r.mse, r.iterations,
                      r.coverage_gap);
        out << r.method << ',' << buf << '\n';
    }
    return out.str();
}

std::vector<ScoreRow> read_scores(const std::string& payload) {
    std::istringstream in(payload);
    std::string line;
    if (!std::getline(in, line) ||
        line != "method,snr_db,seed,mse,iterations,coverage_gap")
        throw ParseError("bad score CSV header");
    std::vector<ScoreRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        ScoreRow r;
        std::string field;
        auto next = [&](const char* what) {
            if (!std::getline(ls, field, ','))
                throw ParseError(std::string("score row missing ") + what + ": '" +
                                 line + "'");
            return field;
        };
        r.method = next("method");
        r.snr_db = std::stod(next("snr_db"));
        r.seed = std::stoull(next("seed"));
        r.mse = std::stod(next("mse"));
        r.iterations = std::stoi(next("iterations"));
        r.coverage_gap = std::stod(next("coverage_gap"));
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace ecci
