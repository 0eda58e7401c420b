#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ecci/channel.hpp"
#include "ecci/rng.hpp"
#include "ecci/scene.hpp"

namespace ecci {

// Uncoded ghost-imaging measurement: N x K Bernoulli sensing matrix plus
// bucket readings.
struct GiMeasurement {
    Eigen::MatrixXd patterns;  // entries in {0, 1}
    Eigen::VectorXd values;    // N bucket readings
    ChannelParams params;
};

Eigen::MatrixXd bernoulli_patterns(int pixel_count, int shot_count,
                                   double inclusion_p, Rng& rng);

// Sample covariance of bucket value with pattern bit, per pixel.
AnalogImage reconstruct_correlation(const GiMeasurement& meas, int width,
                                    int height);

// Projected gradient descent on 0.5*||A x - y/y0||^2 over [0,1]^K with a
// fixed step 1/lambda_max(A^T A) (50 power iterations).
AnalogImage reconstruct_gp(const GiMeasurement& meas, int width, int height,
                           int iterations, double tolerance,
                           int* iterations_used = nullptr);

// Min-max rescale to [0,1]; a constant image maps to all 0.5.
AnalogImage normalize(const AnalogImage& img);

}  // namespace ecci
