#include "ecci/gibaseline.hpp"

#include <cmath>

#include "ecci/errors.hpp"

namespace ecci {

Eigen::MatrixXd bernoulli_patterns(int pixel_count, int shot_count,
                                   double inclusion_p, Rng& rng) {
    if (!(inclusion_p > 0.0 && inclusion_p < 1.0))
        throw ConfigError("Bernoulli inclusion probability must be in (0,1)");
    Eigen::MatrixXd a(shot_count, pixel_count);
    for (int i = 0; i < shot_count; ++i)
        for (int j = 0; j < pixel_count; ++j)
            a(i, j) = rng.uniform01() < inclusion_p ? 1.0 : 0.0;
    return a;
}

AnalogImage reconstruct_correlation(const GiMeasurement& meas, int width,
                                    int height) {
    const auto n = meas.patterns.rows();
    if (n < 2) throw ConfigError("correlation reconstruction needs N >= 2");
    if (meas.values.size() != n || meas.patterns.cols() != width * height)
        throw ConfigError("correlation reconstruction: shape mismatch");
    const double y_mean = meas.values.mean();
    Eigen::VectorXd cov =
        (meas.patterns.transpose() * meas.values) / double(n) -
        y_mean * meas.patterns.colwise().mean().transpose();
    AnalogImage img{width, height, std::vector<double>(cov.data(), cov.data() + cov.size())};
    return img;
}

AnalogImage reconstruct_gp(const GiMeasurement& meas, int width, int height,
                           int iterations, double tolerance,
                           int* iterations_used) {
    if (iterations < 1) throw ConfigError("gp: iterations must be >= 1");
    const auto k = meas.patterns.cols();
    if (meas.values.size() != meas.patterns.rows() || k != width * height)
        throw ConfigError("gp: shape mismatch");

    const Eigen::MatrixXd& a = meas.patterns;
    const Eigen::VectorXd y_hat = meas.values / meas.params.y0_mean;

    // Lipschitz constant of the gradient via power iteration on A^T A.
    Eigen::VectorXd v = Eigen::VectorXd::Ones(k).normalized();
    double lambda = 1.0;
    for (int p = 0; p < 50; ++p) {
        Eigen::VectorXd w = a.transpose() * (a * v);
        lambda = w.norm();
        if (lambda <= 0.0) break;
        v = w / lambda;
    }
    const double step = lambda > 0.0 ? 1.0 / lambda : 1.0;

    Eigen::VectorXd x = Eigen::VectorXd::Constant(k, 0.5);
    Eigen::VectorXd residual = a * x - y_hat;
    double objective = 0.5 * residual.squaredNorm();
    int used = 0;
    for (int it = 0; it < iterations; ++it) {
        x -= step * (a.transpose() * residual);
        x = x.cwiseMax(0.0).cwiseMin(1.0);
        residual = a * x - y_hat;
        const double next = 0.5 * residual.squaredNorm();
        const double drop = objective - next;
        objective = next;
        used = it + 1;
        if (drop >= 0.0 && drop < tolerance * std::max(objective, 1e-300)) break;
    }
    if (iterations_used) *iterations_used = used;
    return {width, height, std::vector<double>(x.data(), x.data() + x.size())};
}

AnalogImage normalize(const AnalogImage& img) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : img.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    AnalogImage out{img.width, img.height,
                    std::vector<double>(img.values.size())};
    if (!(hi > lo)) {
        std::fill(out.values.begin(), out.values.end(), 0.5);
        return out;
    }
    for (std::size_t j = 0; j < img.values.size(); ++j)
        out.values[j] = (img.values[j] - lo) / (hi - lo);
    return out;
}

}  // namespace ecci
