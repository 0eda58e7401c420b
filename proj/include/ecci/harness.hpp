#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecci/bpdecoder.hpp"
#include "ecci/ltcode.hpp"
#include "ecci/metrics.hpp"
#include "ecci/remap.hpp"
#include "ecci/scene.hpp"

namespace ecci {

struct ExperimentConfig {
    std::string scene_pattern = "glyph-GI";
    std::string scene_path;  // PBM file; overrides scene_pattern when set
    int width = 64;
    int height = 64;
    int block_count = 1;
    int shots = 8192;  // N per block
    std::string degree_dist = "paper";
    DegreeDistribution custom_dist;  // used when degree_dist == "custom"
    std::vector<double> snr_grid = {2, 1, 0, -1, -2, -3, -4, -5};
    std::vector<std::uint64_t> seeds = {1, 2, 3};
    RemapMode remap_mode = RemapMode::Soft;
    BpConfig bp;
    double hard_llr_magnitude = 20.0;
    bool run_coded = true;
    bool run_correlation = true;
    bool run_gp = true;
    int gp_iterations = 200;
    double gp_tolerance = 1e-8;
    double bernoulli_p = 0.5;
    double y0_mean = 1.0;
    bool noiseless = false;  // force sigma2 = 0; requires hard remap
    std::uint64_t master_seed = 1;
    std::string output_dir = "out";
    int workers = 1;
    bool write_images = true;

    void validate() const;
    DegreeDistribution distribution() const;
    std::string coded_method_name() const;
};

// Accepts a JSON document or flat key=value lines; see README for keys.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// One (snr, seed) cell: runs every enabled method, writes per-method
// reconstructions under output_dir, returns one score row per method.
// Deterministic given (cfg, snr_index, seed_index); the RNG streams are
// derived from (master_seed, snr index, seed index) only.
std::vector<ScoreRow> run_cell(const ExperimentConfig& cfg, int snr_index,
                               int seed_index);

struct SweepResult {
    std::vector<ScoreRow> rows;
    std::vector<std::string> failures;  // per-cell diagnostics
    std::string results_csv;            // path of the written results.csv
    std::string summary_csv;
};

// Runs the full grid; partial cell failures are recorded and the sweep
// continues. Rows are sorted by (method, snr, seed) before writing.
SweepResult run_sweep(const ExperimentConfig& cfg);

}  // namespace ecci
