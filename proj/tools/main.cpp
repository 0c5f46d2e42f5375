// eo-downlink: LEO downlink capacity prediction and capacity-constrained
// change transmission for multi-spectral image pairs.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eodl/codec.hpp"
#include "eodl/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint32_t> intervals;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_config = true) {
    auto* opt = cmd->add_option("--config", args.config_path, "scenario config JSON");
    if (needs_config) opt->required();
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--seed", args.seed, "override the config seed");
    cmd->add_option("--intervals", args.intervals, "override the pass discretization");
}

eodl::ScenarioConfig load_scenario(const CommonArgs& args) {
    eodl::ScenarioConfig cfg = eodl::load_config(args.config_path);
    if (args.seed) cfg.seed = *args.seed;
    if (args.intervals) cfg.intervals = *args.intervals;
    return cfg;
}

std::vector<double> parse_doubles(const std::vector<std::string>& items) {
    std::vector<double> out;
    for (const auto& s : items) out.push_back(std::stod(s));
    return out;
}

std::vector<std::uint64_t> parse_seeds(const std::vector<std::string>& items) {
    std::vector<std::uint64_t> out;
    for (const auto& s : items) out.push_back(std::stoull(s));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LEO Earth-observation downlink simulator"};
    app.require_subcommand(1);

    // ---- pass ----
    CommonArgs pass_args;
    auto* pass_cmd = app.add_subcommand("pass", "predict one pass: rates and capacity");
    add_common(pass_cmd, pass_args);

    // ---- capacity-sweep ----
    CommonArgs sweep_args;
    std::vector<std::string> sweep_eps{"5", "10", "15", "20", "25", "30"};
    std::vector<std::string> sweep_nf{"0", "1", "1.5", "2", "2.5"};
    auto* sweep_cmd =
        app.add_subcommand("capacity-sweep", "capacity grid over elevation and noise figure");
    add_common(sweep_cmd, sweep_args);
    sweep_cmd->add_option("--epsilons", sweep_eps, "min elevation angles, degrees");
    sweep_cmd->add_option("--noise-figures", sweep_nf, "noise figures, dB");

    // ---- simulate ----
    CommonArgs sim_args;
    std::string sim_ref, sim_acq, sim_truth;
    auto* sim_cmd =
        app.add_subcommand("simulate", "select, encode and reconstruct one image pair");
    add_common(sim_cmd, sim_args);
    sim_cmd->add_option("--reference", sim_ref, "reference MSR image")->required();
    sim_cmd->add_option("--acquired", sim_acq, "acquired MSR image")->required();
    sim_cmd->add_option("--truth", sim_truth, "ground-truth change mask (MSR)");

    // ---- compare ----
    CommonArgs cmp_args;
    std::string cmp_ref, cmp_acq, cmp_truth;
    std::vector<std::string> cmp_budgets{"0.6", "0.7", "0.8", "0.9", "0.95", "0.99"};
    std::vector<std::string> cmp_seeds{"1"};
    auto* cmp_cmd =
        app.add_subcommand("compare", "greedy vs random baseline over budget fractions");
    add_common(cmp_cmd, cmp_args);
    cmp_cmd->add_option("--reference", cmp_ref, "reference MSR image")->required();
    cmp_cmd->add_option("--acquired", cmp_acq, "acquired MSR image")->required();
    cmp_cmd->add_option("--truth", cmp_truth, "ground-truth change mask (MSR)")->required();
    cmp_cmd->add_option("--budgets", cmp_budgets, "budget fractions of changed-pixel bits");
    cmp_cmd->add_option("--seeds", cmp_seeds, "baseline shuffle seeds");

    // ---- synth ----
    std::uint32_t synth_h = 64, synth_w = 64, synth_bands = 4;
    std::uint32_t synth_depth = 16;
    double synth_fraction = 0.1;
    std::uint64_t synth_seed = 1;
    std::string synth_out = ".";
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic change pair");
    synth_cmd->add_option("--height", synth_h, "image height");
    synth_cmd->add_option("--width", synth_w, "image width");
    synth_cmd->add_option("--bands", synth_bands, "band count");
    synth_cmd->add_option("--bit-depth", synth_depth, "8 or 16");
    synth_cmd->add_option("--change-fraction", synth_fraction, "fraction of changed pixels");
    synth_cmd->add_option("--seed", synth_seed, "generator seed");
    synth_cmd->add_option("--out", synth_out, "output directory");

    // ---- convert ----
    std::vector<std::string> conv_inputs;
    std::string conv_output;
    std::optional<std::uint32_t> conv_band;
    std::vector<std::string> conv_rgb;
    auto* conv_cmd = app.add_subcommand("convert", "convert between PGM/PPM and MSR");
    conv_cmd->add_option("--input", conv_inputs, "input file(s); PGMs stack into MSR bands")
        ->required();
    conv_cmd->add_option("--output", conv_output, "output file (.msr, .pgm or .ppm)")
        ->required();
    conv_cmd->add_option("--band", conv_band, "band to export for .pgm output");
    conv_cmd->add_option("--rgb", conv_rgb, "three band indices for .ppm output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (pass_cmd->parsed()) {
            const auto out = eodl::cmd_pass(load_scenario(pass_args), pass_args.out_dir);
            std::printf("T_pass = %.3f s, d_max = %.3f km, C_orbit = %.6f Tb\n",
                        out.t_pass_s, out.d_max_m / 1e3, out.c_orbit_bits / 1e12);
        } else if (sweep_cmd->parsed()) {
            const auto cells = eodl::cmd_capacity_sweep(
                load_scenario(sweep_args), parse_doubles(sweep_eps),
                parse_doubles(sweep_nf), sweep_args.out_dir);
            std::printf("wrote %zu sweep cells\n", cells.size());
        } else if (sim_cmd->parsed()) {
            std::optional<fs::path> truth;
            if (!sim_truth.empty()) truth = sim_truth;
            const auto out = eodl::cmd_simulate(load_scenario(sim_args), sim_ref, sim_acq,
                                                truth, sim_args.out_dir);
            std::printf("PSNR = %s dB, bits used = %llu of %.0f\n",
                        eodl::psnr_to_string(out.fidelity).c_str(),
                        static_cast<unsigned long long>(out.bits_used), out.c_orbit_bits);
        } else if (cmp_cmd->parsed()) {
            const auto rows = eodl::cmd_compare(
                load_scenario(cmp_args), cmp_ref, cmp_acq, cmp_truth,
                parse_doubles(cmp_budgets), parse_seeds(cmp_seeds), cmp_args.out_dir);
            std::printf("wrote %zu compare rows\n", rows.size());
        } else if (synth_cmd->parsed()) {
            if (synth_depth != 8 && synth_depth != 16) {
                throw eodl::ConfigError("--bit-depth must be 8 or 16");
            }
            const auto synth =
                eodl::synth_pair(synth_seed, synth_h, synth_w, synth_bands, synth_fraction,
                                 static_cast<std::uint8_t>(synth_depth));
            fs::create_directories(synth_out);
            eodl::save_raster(synth.pair.reference, fs::path(synth_out) / "reference.msr");
            eodl::save_raster(synth.pair.acquired, fs::path(synth_out) / "acquired.msr");
            eodl::ChangeMap truth{synth_h, synth_w, synth.change_mask};
            eodl::save_change_map(truth, fs::path(synth_out) / "truth.msr");
            std::printf("wrote reference.msr, acquired.msr, truth.msr (%zu changed)\n",
                        truth.count());
        } else if (conv_cmd->parsed()) {
            const fs::path out_path(conv_output);
            const auto ext = out_path.extension().string();
            if (ext == ".msr") {
                std::vector<eodl::MultiSpectralImage> planes;
                for (const auto& p : conv_inputs) planes.push_back(eodl::load_band_pgm(p));
                eodl::save_raster(eodl::stack_bands(planes), out_path);
            } else if (ext == ".pgm") {
                if (conv_inputs.size() != 1) {
                    throw eodl::ConfigError("pgm export takes exactly one MSR input");
                }
                const auto img = eodl::load_raster(conv_inputs.front());
                eodl::save_band_pgm(img, conv_band.value_or(0), out_path);
            } else if (ext == ".ppm") {
                if (conv_inputs.size() != 1) {
                    throw eodl::ConfigError("ppm export takes exactly one MSR input");
                }
                if (conv_rgb.size() != 3) {
                    throw eodl::ConfigError("--rgb needs exactly three band indices");
                }
                const auto img = eodl::load_raster(conv_inputs.front());
                eodl::save_ppm(img, static_cast<std::uint32_t>(std::stoul(conv_rgb[0])),
                               static_cast<std::uint32_t>(std::stoul(conv_rgb[1])),
                               static_cast<std::uint32_t>(std::stoul(conv_rgb[2])), out_path);
            } else {
                throw eodl::ConfigError("unsupported output extension: " + ext);
            }
            std::printf("wrote %s\n", conv_output.c_str());
        }
    } catch (const eodl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
