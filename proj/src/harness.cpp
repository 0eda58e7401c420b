#include "ecci/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ecci/channel.hpp"
#include "ecci/errors.hpp"
#include "ecci/gibaseline.hpp"
#include "ecci/netpbm.hpp"

namespace fs = std::filesystem;

namespace ecci {

namespace {

std::string snr_label(double snr_db) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", snr_db);
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RemapMode mode_of(const std::string& s) {
    if (s == "soft") return RemapMode::Soft;
    if (s == "hard") return RemapMode::Hard;
    if (s == "soft-exact") return RemapMode::SoftExact;
    throw ConfigError("unknown remap mode: " + s);
}

bool bool_of(const std::string& s) {
    if (s == "true" || s == "1" || s == "on" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "off" || s == "no") return false;
    throw ConfigError("bad boolean value: " + s);
}

template <typename T>
std::vector<T> split_numeric(const std::string& s) {
    std::vector<T> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        if constexpr (std::is_same_v<T, double>)
            out.push_back(std::stod(tok));
        else
            out.push_back(static_cast<T>(std::stoull(tok)));
    }
    return out;
}

void apply_key(ExperimentConfig& cfg, const std::string& key,
               const std::string& value) {
    if (key == "pattern") cfg.scene_pattern = value;
    else if (key == "scene") cfg.scene_path = value;
    else if (key == "width") cfg.width = std::stoi(value);
    else if (key == "height") cfg.height = std::stoi(value);
    else if (key == "blocks") cfg.block_count = std::stoi(value);
    else if (key == "shots") cfg.shots = std::stoi(value);
    else if (key == "degree_dist") cfg.degree_dist = value;
    else if (key == "snr_grid") cfg.snr_grid = split_numeric<double>(value);
    else if (key == "seeds") cfg.seeds = split_numeric<std::uint64_t>(value);
    else if (key == "mode") cfg.remap_mode = mode_of(value);
    else if (key == "bp_max_iterations") cfg.bp.max_iterations = std::stoi(value);
    else if (key == "bp_message_clamp") cfg.bp.message_clamp = std::stod(value);
    else if (key == "bp_stop_on_syndrome") cfg.bp.stop_on_syndrome = bool_of(value);
    else if (key == "hard_llr_magnitude") cfg.hard_llr_magnitude = std::stod(value);
    else if (key == "coded") cfg.run_coded = bool_of(value);
    else if (key == "correlation") cfg.run_correlation = bool_of(value);
    else if (key == "gp") cfg.run_gp = bool_of(value);
    else if (key == "gp_iterations") cfg.gp_iterations = std::stoi(value);
    else if (key == "gp_tolerance") cfg.gp_tolerance = std::stod(value);
    else if (key == "bernoulli_p") cfg.bernoulli_p = std::stod(value);
    else if (key == "y0_mean") cfg.y0_mean = std::stod(value);
    else if (key == "noiseless") cfg.noiseless = bool_of(value);
    else if (key == "master_seed") cfg.master_seed = std::stoull(value);
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "workers") cfg.workers = std::stoi(value);
    else if (key == "write_images") cfg.write_images = bool_of(value);
    else throw ConfigError("unknown config key: " + key);
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

BinaryScene scene_of(const ExperimentConfig& cfg) {
    if (!cfg.scene_path.empty()) return read_pbm(read_file(cfg.scene_path));
    return make_test_pattern(cfg.scene_pattern, cfg.width, cfg.height);
}

// Stream-id tags for per-cell seed derivation; documented in the README.
constexpr std::uint64_t kTagGraph = 1;
constexpr std::uint64_t kTagCodedNoise = 2;
constexpr std::uint64_t kTagGiPatterns = 3;
constexpr std::uint64_t kTagGiNoise = 4;

struct CellContext {
    const ExperimentConfig& cfg;
    double snr_db;
    int snr_index;
    int seed_index;
    std::uint64_t seed_label;
    BinaryScene scene;
};

fs::path cell_dir(const CellContext& ctx, const std::string& method) {
    return fs::path(ctx.cfg.output_dir) / method / ("snr_" + snr_label(ctx.snr_db)) /
           ("seed_" + std::to_string(ctx.seed_label));
}

ScoreRow run_coded_cell(const CellContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    const BlockPartition blocks = partition(ctx.scene, cfg.block_count);
    const DegreeDistribution dist = cfg.distribution();

    // Per-block graphs and noiseless sums; the graph depends only on the
    // seed index so every SNR point reuses the same illumination set.
    std::vector<EncodingGraph> graphs;
    std::vector<std::vector<double>> clean_per_block;
    std::vector<double> all_clean;
    for (int b = 0; b < blocks.block_count; ++b) {
        const auto& idx = blocks.blocks[static_cast<std::size_t>(b)];
        const int block_k = static_cast<int>(idx.size());
        graphs.push_back(build_graph(
            block_k, cfg.shots, dist,
            derive_seed(cfg.master_seed,
                        {kTagGraph, std::uint64_t(ctx.seed_index), std::uint64_t(b)})));
        std::vector<double> clean(static_cast<std::size_t>(cfg.shots), 0.0);
        const auto& g = graphs.back();
        for (int i = 0; i < cfg.shots; ++i) {
            long m = 0;
            for (int local_j : g.signal_nodes[static_cast<std::size_t>(i)])
                m += ctx.scene.pixels[static_cast<std::size_t>(
                    idx[static_cast<std::size_t>(local_j)])];
            clean[static_cast<std::size_t>(i)] = double(m) * cfg.y0_mean;
        }
        all_clean.insert(all_clean.end(), clean.begin(), clean.end());
        clean_per_block.push_back(std::move(clean));
    }

    ChannelParams params;
    params.y0_mean = cfg.y0_mean;
    params.sigma2 = cfg.noiseless ? 0.0 : calibrate_sigma(all_clean, ctx.snr_db);
    if (params.sigma2 == 0.0 && cfg.remap_mode != RemapMode::Hard)
        throw ConfigError("noiseless cells require the hard remap path");

    Rng noise_rng(derive_seed(cfg.master_seed,
                              {kTagCodedNoise, std::uint64_t(ctx.snr_index),
                               std::uint64_t(ctx.seed_index)}));

    std::vector<std::uint8_t> decoded(ctx.scene.pixels.size(), 0);
    int iterations = 0;
    long uncovered = 0;
    for (int b = 0; b < blocks.block_count; ++b) {
        MeasurementRecord rec;
        rec.values = add_awgn(clean_per_block[static_cast<std::size_t>(b)],
                              params.sigma2, noise_rng);
        rec.params = params;
        rec.graph_seed = graphs[static_cast<std::size_t>(b)].seed;
        const auto remapped =
            remap_record(rec, graphs[static_cast<std::size_t>(b)], cfg.remap_mode);
        const auto llrs =
            channel_llrs(remapped, cfg.remap_mode, cfg.hard_llr_magnitude);
        const auto result =
            ecci::decode(llrs, graphs[static_cast<std::size_t>(b)], cfg.bp);
        const auto& idx = blocks.blocks[static_cast<std::size_t>(b)];
        for (std::size_t local = 0; local < idx.size(); ++local)
            decoded[static_cast<std::size_t>(idx[local])] = result.decoded[local];
        iterations = std::max(iterations, result.iterations_used);
        uncovered += result.uncovered_pixels;
    }

    ScoreRow row;
    row.method = cfg.coded_method_name();
    row.snr_db = ctx.snr_db;
    row.seed = ctx.seed_label;
    std::vector<double> estimate(decoded.begin(), decoded.end());
    row.mse = mse(estimate, ctx.scene.pixels);
    row.iterations = iterations;
    row.coverage_gap = double(uncovered) / double(ctx.scene.pixel_count());

    if (cfg.write_images) {
        BinaryScene recon{ctx.scene.width, ctx.scene.height, decoded};
        write_file(cell_dir(ctx, row.method) / "recon.pbm", write_pbm(recon));
    }
    return row;
}

std::vector<ScoreRow> run_gi_cells(const CellContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    Rng pattern_rng(derive_seed(cfg.master_seed,
                                {kTagGiPatterns, std::uint64_t(ctx.seed_index)}));
    const int total = ctx.scene.pixel_count();
    GiMeasurement meas;
    meas.patterns = bernoulli_patterns(total, cfg.shots, cfg.bernoulli_p, pattern_rng);
    meas.params.y0_mean = cfg.y0_mean;

    Eigen::VectorXd truth(total);
    for (int j = 0; j < total; ++j)
        truth(j) = double(ctx.scene.pixels[static_cast<std::size_t>(j)]);
    Eigen::VectorXd clean = (meas.patterns * truth) * cfg.y0_mean;
    std::vector<double> clean_v(clean.data(), clean.data() + clean.size());
    meas.params.sigma2 =
        cfg.noiseless ? 0.0 : calibrate_sigma(clean_v, ctx.snr_db);

    Rng noise_rng(derive_seed(cfg.master_seed,
                              {kTagGiNoise, std::uint64_t(ctx.snr_index),
                               std::uint64_t(ctx.seed_index)}));
    const auto noisy = add_awgn(clean_v, meas.params.sigma2, noise_rng);
    meas.values = Eigen::Map<const Eigen::VectorXd>(noisy.data(),
                                                    Eigen::Index(noisy.size()));

    std::vector<ScoreRow> rows;
    auto score = [&](const std::string& method, const AnalogImage& raw,
                     int iterations) {
        const AnalogImage img = normalize(raw);
        ScoreRow row;
        row.method = method;
        row.snr_db = ctx.snr_db;
        row.seed = ctx.seed_label;
        row.mse = mse(img.values, ctx.scene.pixels);
        row.iterations = iterations;
        row.coverage_gap = 0.0;
        if (cfg.write_images)
            write_file(cell_dir(ctx, method) / "recon.pgm", write_pgm(img));
        rows.push_back(std::move(row));
    };

    if (cfg.run_correlation)
        score("gi-corr",
              reconstruct_correlation(meas, ctx.scene.width, ctx.scene.height), 0);
    if (cfg.run_gp) {
        int used = 0;
        AnalogImage img = reconstruct_gp(meas, ctx.scene.width, ctx.scene.height,
                                         cfg.gp_iterations, cfg.gp_tolerance, &used);
        score("gi-gp", img, used);
    }
    return rows;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (snr_grid.empty()) throw ConfigError("empty SNR grid");
    if (seeds.empty()) throw ConfigError("empty seed list");
    if (shots < 1) throw ConfigError("shots must be >= 1");
    if (workers < 1) throw ConfigError("workers must be >= 1");
    if (noiseless && remap_mode != RemapMode::Hard)
        throw ConfigError("noiseless runs require mode=hard");
    distribution();  // validates support/mass when custom
}

DegreeDistribution ExperimentConfig::distribution() const {
    if (degree_dist == "paper") return omega_paper();
    if (degree_dist == "custom") {
        if (custom_dist.support.empty())
            throw ConfigError("degree_dist=custom requires a degree table");
        return custom_dist;
    }
    throw ConfigError("unknown degree distribution: " + degree_dist);
}

std::string ExperimentConfig::coded_method_name() const {
    switch (remap_mode) {
        case RemapMode::Hard: return "coded-hard";
        case RemapMode::Soft: return "coded-soft";
        case RemapMode::SoftExact: return "coded-soft-exact";
    }
    return "coded";
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    const std::string body = trim(text);
    if (!body.empty() && body[0] == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(body);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("bad JSON config: ") + e.what());
        }
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            const auto& v = it.value();
            if (it.key() == "snr_grid") {
                cfg.snr_grid = v.get<std::vector<double>>();
            } else if (it.key() == "seeds") {
                cfg.seeds = v.get<std::vector<std::uint64_t>>();
            } else if (it.key() == "degree_support") {
                cfg.custom_dist.support = v.get<std::vector<int>>();
            } else if (it.key() == "degree_mass") {
                cfg.custom_dist.mass = v.get<std::vector<double>>();
            } else if (v.is_string()) {
                apply_key(cfg, it.key(), v.get<std::string>());
            } else if (v.is_boolean()) {
                apply_key(cfg, it.key(), v.get<bool>() ? "true" : "false");
            } else {
                std::ostringstream num;
                num << v;
                apply_key(cfg, it.key(), num.str());
            }
        }
    } else {
        std::istringstream in(body);
        std::string line;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw ParseError("config line without '=': " + line);
            apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    return parse_config(read_file(path));
}

std::vector<ScoreRow> run_cell(const ExperimentConfig& cfg, int snr_index,
                               int seed_index) {
    if (snr_index < 0 || snr_index >= static_cast<int>(cfg.snr_grid.size()) ||
        seed_index < 0 || seed_index >= static_cast<int>(cfg.seeds.size()))
        throw ConfigError("cell index out of range");
    CellContext ctx{cfg,
                    cfg.snr_grid[static_cast<std::size_t>(snr_index)],
                    snr_index,
                    seed_index,
                    cfg.seeds[static_cast<std::size_t>(seed_index)],
                    scene_of(cfg)};

    std::vector<ScoreRow> rows;
    auto stage = [&](const char* name, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            throw ConfigError("cell snr=" + snr_label(ctx.snr_db) + " seed=" +
                              std::to_string(ctx.seed_label) + " failed in " +
                              name + ": " + e.what());
        }
    };
    if (cfg.run_coded)
        stage("coded pipeline", [&] { rows.push_back(run_coded_cell(ctx)); });
    if (cfg.run_correlation || cfg.run_gp)
        stage("gi baselines", [&] {
            auto gi = run_gi_cells(ctx);
            rows.insert(rows.end(), gi.begin(), gi.end());
        });
    return rows;
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const int n_snr = static_cast<int>(cfg.snr_grid.size());
    const int n_seed = static_cast<int>(cfg.seeds.size());
    const int n_cells = n_snr * n_seed;

    std::vector<std::vector<ScoreRow>> cell_rows(static_cast<std::size_t>(n_cells));
    std::vector<std::string> cell_errors(static_cast<std::size_t>(n_cells));

    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int c = next.fetch_add(1);
            if (c >= n_cells) return;
            const int snr_index = c / n_seed;
            const int seed_index = c % n_seed;
            try {
                cell_rows[static_cast<std::size_t>(c)] =
                    run_cell(cfg, snr_index, seed_index);
            } catch (const std::exception& e) {
                cell_errors[static_cast<std::size_t>(c)] = e.what();
            }
        }
    };
    const int n_workers = std::min(cfg.workers, n_cells);
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SweepResult result;
    for (auto& rows : cell_rows)
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    for (auto& err : cell_errors)
        if (!err.empty()) result.failures.push_back(err);

    std::sort(result.rows.begin(), result.rows.end(),
              [](const ScoreRow& a, const ScoreRow& b) {
                  if (a.method != b.method) return a.method < b.method;
                  if (a.snr_db != b.snr_db) return a.snr_db > b.snr_db;
                  return a.seed < b.seed;
              });

    const fs::path out_dir(cfg.output_dir);
    fs::create_directories(out_dir);
    result.results_csv = (out_dir / "results.csv").string();
    write_file(out_dir / "results.csv", write_scores(result.rows));

    // per-(method, snr) mean MSE
    std::map<std::pair<std::string, double>, std::pair<double, int>> agg;
    for (const auto& r : result.rows) {
        auto& slot = agg[{r.method, r.snr_db}];
        slot.first += r.mse;
        slot.second += 1;
    }
    std::ostringstream summary;
    summary << "method,snr_db,mean_mse\n";
    char buf[64];
    for (const auto& [key, slot] : agg) {
        std::snprintf(buf, sizeof buf, "%g,%.17g", key.second,
                      slot.first / slot.second);
        summary << key.first << ',' << buf << '\n';
    }
    result.summary_csv = (out_dir / "summary.csv").string();
    write_file(out_dir / "summary.csv", summary.str());
    return result;
}

}  // namespace ecci
