#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ecci/errors.hpp"
#include "ecci/harness.hpp"

using namespace ecci;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const char* tag) {
        path = fs::temp_directory_path() / (std::string("ecci_test_") + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

ExperimentConfig small_config(const fs::path& out) {
    ExperimentConfig cfg;
    cfg.width = 16;
    cfg.height = 16;
    cfg.shots = 1024;
    cfg.snr_grid = {2.0, -5.0};
    cfg.seeds = {1, 2};
    cfg.gp_iterations = 30;
    cfg.output_dir = out.string();
    return cfg;
}

}  // namespace

TEST_CASE("key=value config parsing") {
    auto cfg = parse_config(
        "# comment\n"
        "pattern = checkerboard\n"
        "width=32\nheight = 32\n"
        "shots=2048\n"
        "snr_grid = 2,0,-2\n"
        "seeds=7,8\n"
        "mode=hard\n"
        "gp=false\n"
        "workers=4\n"
        "master_seed=99\n");
    CHECK(cfg.scene_pattern == "checkerboard");
    CHECK(cfg.width == 32);
    CHECK(cfg.shots == 2048);
    CHECK(cfg.snr_grid == std::vector<double>{2, 0, -2});
    CHECK(cfg.seeds == std::vector<std::uint64_t>{7, 8});
    CHECK(cfg.remap_mode == RemapMode::Hard);
    CHECK_FALSE(cfg.run_gp);
    CHECK(cfg.workers == 4);
    CHECK(cfg.master_seed == 99);

    CHECK_THROWS_AS(parse_config("nonsense=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("width 32\n"), ParseError);
    CHECK_THROWS_AS(parse_config("mode=fuzzy\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("noiseless=true\nmode=soft\n"), ConfigError);
}

TEST_CASE("json config parsing") {
    auto cfg = parse_config(R"({
        "pattern": "glyph-GI",
        "width": 16, "height": 16,
        "shots": 512,
        "snr_grid": [1, -1],
        "seeds": [5],
        "mode": "soft-exact",
        "degree_dist": "custom",
        "degree_support": [1, 2],
        "degree_mass": [0.5, 0.5],
        "noiseless": false,
        "bp_max_iterations": 30
    })");
    CHECK(cfg.shots == 512);
    CHECK(cfg.remap_mode == RemapMode::SoftExact);
    CHECK(cfg.snr_grid == std::vector<double>{1, -1});
    CHECK(cfg.bp.max_iterations == 30);
    auto dist = cfg.distribution();
    CHECK(dist.support == std::vector<int>{1, 2});

    CHECK_THROWS_AS(parse_config("{ bad json"), ParseError);
    CHECK_THROWS_AS(parse_config(R"({"degree_dist": "custom"})"), ConfigError);
}

TEST_CASE("defaults survive an empty config") {
    auto cfg = parse_config("");
    CHECK(cfg.width == 64);
    CHECK(cfg.shots == 8192);
    CHECK(cfg.snr_grid.size() == 8);
    CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2, 3});
    CHECK(cfg.remap_mode == RemapMode::Soft);
}

TEST_CASE("run_cell is deterministic") {
    TempDir tmp("cell");
    auto cfg = small_config(tmp.path / "a");
    auto rows1 = run_cell(cfg, 0, 1);
    cfg.output_dir = (tmp.path / "b").string();
    auto rows2 = run_cell(cfg, 0, 1);
    REQUIRE(rows1.size() == 3);  // coded-soft, gi-corr, gi-gp
    REQUIRE(rows2.size() == 3);
    for (std::size_t i = 0; i < rows1.size(); ++i) {
        CHECK(rows1[i].method == rows2[i].method);
        CHECK(rows1[i].mse == rows2[i].mse);
        CHECK(rows1[i].iterations == rows2[i].iterations);
    }
    // images are byte-identical too
    auto rel = fs::path("coded-soft") / "snr_2" / "seed_2" / "recon.pbm";
    CHECK(slurp((tmp.path / "a" / rel).string()) ==
          slurp((tmp.path / "b" / rel).string()));

    CHECK_THROWS_AS(run_cell(cfg, 5, 0), ConfigError);
}

TEST_CASE("sweep covers the full grid and writes csv") {
    TempDir tmp("sweep");
    auto cfg = small_config(tmp.path / "out");
    cfg.write_images = false;
    cfg.workers = 2;
    auto result = run_sweep(cfg);
    CHECK(result.failures.empty());
    REQUIRE(result.rows.size() == 3 * 2 * 2);  // methods x snrs x seeds
    // sorted by (method, snr desc, seed)
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
        const auto& a = result.rows[i - 1];
        const auto& b = result.rows[i];
        bool ordered = a.method < b.method ||
                       (a.method == b.method &&
                        (a.snr_db > b.snr_db ||
                         (a.snr_db == b.snr_db && a.seed < b.seed)));
        CHECK(ordered);
    }
    auto parsed = read_scores(slurp(result.results_csv));
    REQUIRE(parsed.size() == result.rows.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        CHECK(parsed[i].method == result.rows[i].method);
        CHECK(parsed[i].mse == result.rows[i].mse);
    }
    auto summary = slurp(result.summary_csv);
    CHECK(summary.rfind("method,snr_db,mean_mse\n", 0) == 0);

    // a single-threaded sweep produces identical rows
    cfg.workers = 1;
    cfg.output_dir = (tmp.path / "out1").string();
    auto serial = run_sweep(cfg);
    REQUIRE(serial.rows.size() == result.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i)
        CHECK(serial.rows[i].mse == result.rows[i].mse);
}

TEST_CASE("noiseless hard-path cell recovers everything it covers") {
    TempDir tmp("noiseless");
    ExperimentConfig cfg;
    cfg.width = 16;
    cfg.height = 16;
    cfg.shots = 1024;
    cfg.snr_grid = {0.0};  // ignored when noiseless
    cfg.seeds = {42};
    cfg.remap_mode = RemapMode::Hard;
    cfg.noiseless = true;
    cfg.run_correlation = false;
    cfg.run_gp = false;
    cfg.write_images = false;
    cfg.output_dir = (tmp.path / "out").string();
    auto rows = run_cell(cfg, 0, 0);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].method == "coded-hard");
    // errors can only come from uncovered pixels (which decode to 1)
    CHECK(rows[0].mse <= rows[0].coverage_gap);
    CHECK(rows[0].coverage_gap < 0.01);
}

TEST_CASE("failed cells are reported and the sweep continues") {
    TempDir tmp("fail");
    auto cfg = small_config(tmp.path / "out");
    cfg.scene_pattern = "blank";  // all-zero buckets: calibration must fail
    cfg.write_images = false;
    auto result = run_sweep(cfg);
    CHECK(result.rows.empty());
    CHECK(result.failures.size() == 4);
    CHECK(result.failures[0].find("failed in") != std::string::npos);
}

TEST_CASE("blocked scenes decode per block") {
    TempDir tmp("blocks");
    ExperimentConfig cfg;
    cfg.width = 16;
    cfg.height = 16;
    cfg.block_count = 4;  // four 8x8 tiles
    cfg.shots = 512;      // per block
    cfg.snr_grid = {0.0};
    cfg.seeds = {1};
    cfg.remap_mode = RemapMode::Hard;
    cfg.noiseless = true;
    cfg.run_correlation = false;
    cfg.run_gp = false;
    cfg.write_images = false;
    cfg.output_dir = (tmp.path / "out").string();
    auto rows = run_cell(cfg, 0, 0);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].mse <= rows[0].coverage_gap);
}
