#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ecci/bpdecoder.hpp"
#include "ecci/channel.hpp"
#include "ecci/errors.hpp"
#include "ecci/harness.hpp"
#include "ecci/netpbm.hpp"
#include "ecci/remap.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ecci::ConfigError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ecci::ConfigError("cannot write " + path);
    out << content;
}

int cmd_run(const std::string& config_path, const std::string& output_override) {
    ecci::ExperimentConfig cfg = ecci::load_config(config_path);
    if (!output_override.empty()) cfg.output_dir = output_override;
    const ecci::SweepResult result = ecci::run_sweep(cfg);
    std::cout << "wrote " << result.results_csv << " (" << result.rows.size()
              << " rows) and " << result.summary_csv << "\n";
    for (const auto& f : result.failures) std::cerr << "cell failed: " << f << "\n";
    return result.failures.empty() ? 0 : 2;
}

int cmd_decode(const std::string& graph_path, const std::string& meas_path,
               const std::string& out_path, const std::string& mode_name,
               double hard_magnitude, const ecci::BpConfig& bp,
               const std::string& remap_dump, const std::string& trace_dump,
               int width, int height) {
    const ecci::EncodingGraph graph = ecci::read_graph(slurp(graph_path));
    const ecci::MeasurementRecord record =
        ecci::read_measurements(slurp(meas_path));

    ecci::RemapMode mode = ecci::RemapMode::Soft;
    if (mode_name == "hard") mode = ecci::RemapMode::Hard;
    else if (mode_name == "soft-exact") mode = ecci::RemapMode::SoftExact;
    else if (mode_name != "soft")
        throw ecci::ConfigError("unknown mode: " + mode_name);

    const auto remapped = ecci::remap_record(record, graph, mode);
    if (!remap_dump.empty()) {
        std::ostringstream csv;
        csv << "shot,y,m_star,delta_l,llr\n";
        char buf[128];
        for (std::size_t i = 0; i < remapped.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%d,%.17g,%.17g", i,
                          record.values[i], remapped[i].m_star,
                          remapped[i].delta_l, remapped[i].llr);
            csv << buf << '\n';
        }
        spit(remap_dump, csv.str());
    }

    const auto llrs = ecci::channel_llrs(remapped, mode, hard_magnitude);
    std::vector<ecci::BpTraceRow> trace;
    const auto result = ecci::decode(llrs, graph, bp,
                                     trace_dump.empty() ? nullptr : &trace);
    if (!trace_dump.empty()) {
        std::ostringstream csv;
        csv << "iteration,unsatisfied_parities,mean_abs_pixel_llr\n";
        char buf[96];
        for (const auto& row : trace) {
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g", row.iteration,
                          row.unsatisfied_parities, row.mean_abs_pixel_llr);
            csv << buf << '\n';
        }
        spit(trace_dump, csv.str());
    }

    if (width * height != graph.pixel_count)
        throw ecci::ConfigError("width*height must equal the graph pixel count " +
                                std::to_string(graph.pixel_count));
    ecci::BinaryScene img{width, height, result.decoded};
    spit(out_path, ecci::write_pbm(img));
    std::cout << "decoded " << graph.pixel_count << " pixels in "
              << result.iterations_used << " iterations ("
              << (result.converged ? "syndrome satisfied" : "iteration cap")
              << "), " << result.uncovered_pixels << " uncovered\n";
    return 0;
}

int cmd_gen_pattern(const std::string& name, int width, int height,
                    const std::string& out_path) {
    spit(out_path, ecci::write_pbm(ecci::make_test_pattern(name, width, height)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LT-coded single-pixel imaging simulator"};
    app.require_subcommand(1);

    std::string config_path, output_override;
    auto* run = app.add_subcommand(
        "run", "Run the configured SNR x seed sweep and write results.csv");
    run->add_option("--config", config_path,
                    "Experiment config (JSON or key=value); keys: pattern, scene, "
                    "width, height, blocks, shots, degree_dist, snr_grid, seeds, "
                    "mode, bp_max_iterations, bp_message_clamp, "
                    "bp_stop_on_syndrome, hard_llr_magnitude, coded, correlation, "
                    "gp, gp_iterations, gp_tolerance, bernoulli_p, y0_mean, "
                    "noiseless, master_seed, output_dir, workers, write_images")
        ->required();
    run->add_option("--output", output_override, "Override output_dir");

    std::string graph_path, meas_path, out_path, mode_name = "soft";
    std::string remap_dump, trace_dump;
    double hard_magnitude = 20.0;
    int width = 0, height = 0;
    ecci::BpConfig bp;
    auto* decode = app.add_subcommand(
        "decode", "Replay a graph file plus measurement CSV into an image");
    decode->add_option("--graph", graph_path, "Graph text file")->required();
    decode->add_option("--measurements", meas_path, "Measurement CSV")->required();
    decode->add_option("--out", out_path, "Output PBM path")->required();
    decode->add_option("--width", width, "Image width")->required();
    decode->add_option("--height", height, "Image height")->required();
    decode->add_option("--mode", mode_name, "soft | hard | soft-exact");
    decode->add_option("--hard-llr", hard_magnitude,
                       "LLR magnitude assigned to hard bits");
    decode->add_option("--max-iterations", bp.max_iterations, "BP iteration cap");
    decode->add_option("--clamp", bp.message_clamp, "BP message clamp");
    decode->add_option("--dump-remap", remap_dump,
                       "Write per-shot remap CSV (shot,y,m_star,delta_l,llr)");
    decode->add_option("--trace", trace_dump, "Write per-iteration BP trace CSV");

    std::string pattern_name = "glyph-GI", pattern_out;
    int pat_w = 64, pat_h = 64;
    auto* gen = app.add_subcommand("gen-pattern", "Emit a built-in test PBM");
    gen->add_option("--name", pattern_name,
                    "glyph-GI | checkerboard | solid | blank");
    gen->add_option("--width", pat_w, "Pattern width");
    gen->add_option("--height", pat_h, "Pattern height");
    gen->add_option("--out", pattern_out, "Output PBM path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, output_override);
        if (decode->parsed())
            return cmd_decode(graph_path, meas_path, out_path, mode_name,
                              hard_magnitude, bp, remap_dump, trace_dump, width,
                              height);
        if (gen->parsed())
            return cmd_gen_pattern(pattern_name, pat_w, pat_h, pattern_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
