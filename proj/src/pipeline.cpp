#include "eodl/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "eodl/codec.hpp"
#include "eodl/numeric.hpp"

namespace eodl {

namespace {

using nlohmann::json;

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

template <typename T>
void read_field(const json& obj, const char* section, const char* key, T& out) {
    if (!obj.contains(key) || obj.at(key).is_null()) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string(section) + "." + key + ": invalid value");
    }
}

template <typename T>
void read_field(const json& obj, const char* section, const char* key,
                std::optional<T>& out) {
    if (!obj.contains(key)) return;
    if (obj.at(key).is_null()) {
        out.reset();
        return;
    }
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string(section) + "." + key + ": invalid value");
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("I/O error writing " + path.string());
}

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        throw StageError(std::string(name) + ": " + e.what());
    }
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string psnr_to_string(const PsnrResult& result) {
    return result.infinite ? "inf" : format_double(result.psnr_db);
}

// ---------------------------------------------------------------------
// configuration
// ---------------------------------------------------------------------

ScenarioConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");

    ScenarioConfig cfg;
    read_field(doc, "config", "schema_version", cfg.schema_version);
    if (cfg.schema_version != 1) {
        throw ConfigError("schema_version: only version 1 is supported");
    }

    const json orbit = doc.value("orbit", json::object());
    read_field(orbit, "orbit", "altitude_m", cfg.altitude_m);
    read_field(orbit, "orbit", "earth_radius_m", cfg.earth_radius_m);
    read_field(orbit, "orbit", "min_elevation_deg", cfg.min_elevation_deg);
    read_field(orbit, "orbit", "max_elevation_deg", cfg.max_elevation_deg);
    read_field(orbit, "orbit", "gravity_constant", cfg.gravity_constant);
    read_field(orbit, "orbit", "earth_mass_kg", cfg.earth_mass_kg);

    const json link = doc.value("link", json::object());
    read_field(link, "link", "tx_power_w", cfg.tx_power_w);
    read_field(link, "link", "carrier_hz", cfg.carrier_hz);
    read_field(link, "link", "bandwidth_hz", cfg.bandwidth_hz);
    read_field(link, "link", "noise_temperature_k", cfg.noise_temperature_k);
    read_field(link, "link", "noise_figure_db", cfg.noise_figure_db);
    read_field(link, "link", "light_speed_m_s", cfg.light_speed_m_s);
    read_field(link, "link", "tx_gain_dbi", cfg.tx_gain_dbi);
    read_field(link, "link", "rx_gain_dbi", cfg.rx_gain_dbi);
    read_field(link, "link", "tx_antenna_diameter_m", cfg.tx_antenna_diameter_m);
    read_field(link, "link", "rx_antenna_diameter_m", cfg.rx_antenna_diameter_m);
    read_field(link, "link", "antenna_efficiency", cfg.antenna_efficiency);

    const json pipe = doc.value("pipeline", json::object());
    read_field(pipe, "pipeline", "modcod_csv", cfg.modcod_csv);
    read_field(pipe, "pipeline", "intervals", cfg.intervals);
    read_field(pipe, "pipeline", "scorer", cfg.scorer);
    read_field(pipe, "pipeline", "scorer_map_path", cfg.scorer_map_path);
    read_field(pipe, "pipeline", "bands", cfg.bands);
    read_field(pipe, "pipeline", "bits_per_pixel_override", cfg.bits_per_pixel_override);
    read_field(pipe, "pipeline", "seed", cfg.seed);

    // field-level validation beyond what the domain types enforce
    if (cfg.intervals == 0) throw ConfigError("pipeline.intervals: must be at least 1");
    if (cfg.scorer != "spectral_magnitude" && cfg.scorer != "external_map") {
        throw ConfigError("pipeline.scorer: must be spectral_magnitude or external_map");
    }
    if (cfg.scorer == "external_map" && !cfg.scorer_map_path) {
        throw ConfigError("pipeline.scorer_map_path: required for the external_map scorer");
    }
    if (!cfg.tx_gain_dbi && !cfg.tx_antenna_diameter_m) {
        throw ConfigError("link.tx_gain_dbi: either a gain or an antenna diameter is needed");
    }
    if (!cfg.rx_gain_dbi && !cfg.rx_antenna_diameter_m) {
        throw ConfigError("link.rx_gain_dbi: either a gain or an antenna diameter is needed");
    }
    if (cfg.modcod_csv && !std::filesystem::exists(*cfg.modcod_csv)) {
        throw ConfigError("pipeline.modcod_csv: file does not exist: " + *cfg.modcod_csv);
    }
    if (cfg.scorer_map_path && !std::filesystem::exists(*cfg.scorer_map_path)) {
        throw ConfigError("pipeline.scorer_map_path: file does not exist: " +
                          *cfg.scorer_map_path);
    }
    try {
        make_orbit_geometry(cfg).validate();
        make_link_budget(cfg).validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string config_to_json(const ScenarioConfig& cfg) {
    json doc;
    doc["schema_version"] = cfg.schema_version;

    json& orbit = doc["orbit"];
    orbit["altitude_m"] = cfg.altitude_m;
    orbit["earth_radius_m"] = cfg.earth_radius_m;
    orbit["min_elevation_deg"] = cfg.min_elevation_deg;
    orbit["max_elevation_deg"] = cfg.max_elevation_deg;
    orbit["gravity_constant"] = cfg.gravity_constant;
    orbit["earth_mass_kg"] = cfg.earth_mass_kg;

    json& link = doc["link"];
    link["tx_power_w"] = cfg.tx_power_w;
    link["carrier_hz"] = cfg.carrier_hz;
    link["bandwidth_hz"] = cfg.bandwidth_hz;
    link["noise_temperature_k"] = cfg.noise_temperature_k;
    link["noise_figure_db"] = cfg.noise_figure_db;
    link["light_speed_m_s"] = cfg.light_speed_m_s;
    // gains and diameters default to the Table values, so an unset state
    // must serialize as an explicit null to round-trip
    link["tx_gain_dbi"] = cfg.tx_gain_dbi ? json(*cfg.tx_gain_dbi) : json(nullptr);
    link["rx_gain_dbi"] = cfg.rx_gain_dbi ? json(*cfg.rx_gain_dbi) : json(nullptr);
    link["tx_antenna_diameter_m"] =
        cfg.tx_antenna_diameter_m ? json(*cfg.tx_antenna_diameter_m) : json(nullptr);
    link["rx_antenna_diameter_m"] =
        cfg.rx_antenna_diameter_m ? json(*cfg.rx_antenna_diameter_m) : json(nullptr);
    link["antenna_efficiency"] = cfg.antenna_efficiency;

    json& pipe = doc["pipeline"];
    if (cfg.modcod_csv) pipe["modcod_csv"] = *cfg.modcod_csv;
    pipe["intervals"] = cfg.intervals;
    pipe["scorer"] = cfg.scorer;
    if (cfg.scorer_map_path) pipe["scorer_map_path"] = *cfg.scorer_map_path;
    pipe["bands"] = cfg.bands;
    if (cfg.bits_per_pixel_override) {
        pipe["bits_per_pixel_override"] = *cfg.bits_per_pixel_override;
    }
    pipe["seed"] = cfg.seed;

    return doc.dump(2) + "\n";
}

OrbitGeometry make_orbit_geometry(const ScenarioConfig& cfg) {
    OrbitGeometry geom;
    geom.altitude_m = cfg.altitude_m;
    geom.earth_radius_m = cfg.earth_radius_m;
    geom.min_elevation_rad = deg_to_rad(cfg.min_elevation_deg);
    geom.max_elevation_rad = deg_to_rad(cfg.max_elevation_deg);
    geom.gravitational_parameter = cfg.gravity_constant * cfg.earth_mass_kg;
    return geom;
}

LinkBudget make_link_budget(const ScenarioConfig& cfg) {
    LinkBudget link;
    link.tx_power_w = cfg.tx_power_w;
    link.carrier_hz = cfg.carrier_hz;
    link.bandwidth_hz = cfg.bandwidth_hz;
    link.noise_temperature_k = cfg.noise_temperature_k;
    link.noise_figure_db = cfg.noise_figure_db;
    link.light_speed_m_s = cfg.light_speed_m_s;
    link.tx_gain_linear =
        cfg.tx_gain_dbi ? db_to_linear(*cfg.tx_gain_dbi)
                        : antenna_gain(*cfg.tx_antenna_diameter_m, cfg.antenna_efficiency,
                                       cfg.carrier_hz, cfg.light_speed_m_s);
    link.rx_gain_linear =
        cfg.rx_gain_dbi ? db_to_linear(*cfg.rx_gain_dbi)
                        : antenna_gain(*cfg.rx_antenna_diameter_m, cfg.antenna_efficiency,
                                       cfg.carrier_hz, cfg.light_speed_m_s);
    return link;
}

ModcodTable make_modcod_table(const ScenarioConfig& cfg) {
    return cfg.modcod_csv ? ModcodTable::from_csv(*cfg.modcod_csv)
                          : ModcodTable::dvb_s2_default();
}

// ---------------------------------------------------------------------
// change-map file helpers (MSR container, 1 band, 8-bit, 0/1 samples)
// ---------------------------------------------------------------------

ChangeMap load_change_map(const std::filesystem::path& path) {
    const MultiSpectralImage raw = load_raster(path);
    if (raw.bands != 1) {
        throw std::runtime_error("change map must be a single-band raster: " + path.string());
    }
    ChangeMap map;
    map.height = raw.height;
    map.width = raw.width;
    map.flags.resize(raw.samples.size());
    for (std::size_t i = 0; i < raw.samples.size(); ++i) {
        map.flags[i] = raw.samples[i] != 0 ? 1 : 0;
    }
    return map;
}

void save_change_map(const ChangeMap& map, const std::filesystem::path& path) {
    map.validate();
    MultiSpectralImage img = MultiSpectralImage::zeros(map.height, map.width, 1, 8);
    for (std::size_t i = 0; i < map.flags.size(); ++i) img.samples[i] = map.flags[i];
    save_raster(img, path);
}

// ---------------------------------------------------------------------
// cmd_pass
// ---------------------------------------------------------------------

PassOutputs cmd_pass(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
    const OrbitGeometry geom = make_orbit_geometry(cfg);
    const LinkBudget link = make_link_budget(cfg);
    const ModcodTable table = make_modcod_table(cfg);

    PassOutputs out;
    out.t_pass_s = visibility_duration(geom);
    out.d_max_m = max_slant_range(geom);
    out.orbital_velocity_m_s = orbital_velocity(geom);

    const PassProfile pass = pass_distance_profile(geom, cfg.intervals);
    const RateProfile rates = rate_profile(link, pass, table);
    const std::vector<double> snrs = interval_midpoint_snrs(link, pass);
    out.c_orbit_bits = orbit_capacity(rates);
    out.intervals = pass.interval_count();

    std::filesystem::create_directories(out_dir);

    std::ostringstream profile_csv;
    profile_csv << "time_s,distance_m\n";
    for (std::size_t k = 0; k < pass.sample_times_s.size(); ++k) {
        profile_csv << format_double(pass.sample_times_s[k]) << ","
                    << format_double(pass.distances_m[k]) << "\n";
    }
    write_text_file(out_dir / "pass_profile.csv", profile_csv.str());

    std::ostringstream rate_csv;
    rate_csv << "t_start_s,t_end_s,rate_bps,shannon_bps\n";
    for (std::size_t k = 0; k < rates.rates_bps.size(); ++k) {
        rate_csv << format_double(pass.sample_times_s[k]) << ","
                 << format_double(pass.sample_times_s[k + 1]) << ","
                 << format_double(rates.rates_bps[k]) << ","
                 << format_double(shannon_rate(snrs[k], link.bandwidth_hz)) << "\n";
    }
    write_text_file(out_dir / "rate_profile.csv", rate_csv.str());

    json summary;
    summary["t_pass_s"] = out.t_pass_s;
    summary["d_max_m"] = out.d_max_m;
    summary["orbital_velocity_m_s"] = out.orbital_velocity_m_s;
    summary["c_orbit_bits"] = out.c_orbit_bits;
    summary["c_orbit_tb"] = out.c_orbit_bits / 1e12;
    summary["intervals"] = out.intervals;
    write_text_file(out_dir / "pass_summary.json", summary.dump(2) + "\n");

    return out;
}

// ---------------------------------------------------------------------
// cmd_capacity_sweep
// ---------------------------------------------------------------------

std::vector<SweepCell> cmd_capacity_sweep(const ScenarioConfig& cfg,
                                          const std::vector<double>& min_elevations_deg,
                                          const std::vector<double>& noise_figures_db,
                                          const std::filesystem::path& out_dir) {
    if (min_elevations_deg.empty() || noise_figures_db.empty()) {
        throw ConfigError("capacity sweep needs at least one elevation and one noise figure");
    }
    const ModcodTable table = make_modcod_table(cfg);

    std::vector<SweepCell> cells(min_elevations_deg.size() * noise_figures_db.size());
    parallel_for(cells.size(), [&](std::size_t i) {
        const std::size_t ei = i / noise_figures_db.size();
        const std::size_t ni = i % noise_figures_db.size();
        ScenarioConfig point = cfg;
        point.min_elevation_deg = min_elevations_deg[ei];
        point.noise_figure_db = noise_figures_db[ni];
        const PassProfile pass =
            pass_distance_profile(make_orbit_geometry(point), point.intervals);
        const RateProfile rates = rate_profile(make_link_budget(point), pass, table);
        cells[i] = SweepCell{min_elevations_deg[ei], noise_figures_db[ni],
                             orbit_capacity(rates)};
    });

    std::filesystem::create_directories(out_dir);
    std::ostringstream csv;
    csv << "min_elevation_deg,noise_figure_db,c_orbit_tb\n";
    for (const auto& cell : cells) {
        csv << format_double(cell.min_elevation_deg) << ","
            << format_double(cell.noise_figure_db) << ","
            << format_double(cell.c_orbit_bits / 1e12) << "\n";
    }
    write_text_file(out_dir / "capacity_sweep.csv", csv.str());
    return cells;
}

// ---------------------------------------------------------------------
// cmd_simulate
// ---------------------------------------------------------------------

namespace {

struct LoadedPair {
    MultiSpectralImage reference;
    MultiSpectralImage acquired;
};

LoadedPair load_and_select(const ScenarioConfig& cfg,
                           const std::filesystem::path& reference_path,
                           const std::filesystem::path& acquired_path) {
    LoadedPair loaded;
    loaded.reference = load_raster(reference_path);
    loaded.acquired = load_raster(acquired_path);
    ImagePair pair{loaded.reference, loaded.acquired};
    pair.validate();
    if (!cfg.bands.empty()) {
        loaded.reference = select_bands(loaded.reference, cfg.bands);
        loaded.acquired = select_bands(loaded.acquired, cfg.bands);
    }
    return loaded;
}

ScorerSpec make_scorer_spec(const ScenarioConfig& cfg) {
    if (cfg.scorer == "external_map") {
        return ScorerSpec::external_map(*cfg.scorer_map_path);
    }
    return ScorerSpec::spectral_magnitude();
}

}  // namespace

SimulateOutputs cmd_simulate(const ScenarioConfig& cfg,
                             const std::filesystem::path& reference_path,
                             const std::filesystem::path& acquired_path,
                             const std::optional<std::filesystem::path>& truth_path,
                             const std::filesystem::path& out_dir) {
    SimulateOutputs out;

    const LoadedPair loaded = stage("load", [&] {
        return load_and_select(cfg, reference_path, acquired_path);
    });

    out.c_orbit_bits = stage("capacity", [&] {
        const PassProfile pass =
            pass_distance_profile(make_orbit_geometry(cfg), cfg.intervals);
        return orbit_capacity(rate_profile(make_link_budget(cfg), pass,
                                           make_modcod_table(cfg)));
    });

    const NormalizedImage norm_ref =
        stage("normalize", [&] { return normalize_zscore(loaded.reference); });
    const NormalizedImage norm_acq =
        stage("normalize", [&] { return normalize_zscore(loaded.acquired); });

    const ChangeScoreMap scores = stage("score", [&] {
        return score_changes(norm_ref, norm_acq, make_scorer_spec(cfg));
    });

    out.bits_per_pixel = cfg.bits_per_pixel_override
                             ? *cfg.bits_per_pixel_override
                             : bits_per_pixel(loaded.reference.bands,
                                              loaded.reference.bit_depth);

    out.tau = stage("calibrate", [&] {
        return calibrate_tau(scores, out.bits_per_pixel, out.c_orbit_bits);
    });

    // a tau above every score means nothing fits: empty change map
    const ChangeMap change_map = stage("threshold", [&] {
        return out.tau <= 1.0 ? threshold_map(scores, out.tau)
                              : ChangeMap::zeros(scores.height, scores.width);
    });

    const SelectionResult selection = stage("select", [&] {
        const auto candidates = build_candidates(scores, change_map, out.bits_per_pixel);
        const auto capacity = static_cast<std::uint64_t>(std::max(0.0, out.c_orbit_bits));
        return solve_p2_greedy(candidates, capacity);
    });
    out.bits_used = selection.total_bits;
    out.selected_pixels = selection.selected.size();

    std::filesystem::create_directories(out_dir);

    const std::vector<std::uint8_t> payload_bytes =
        stage("encode", [&] { return encode(loaded.acquired, selection); });
    out.payload_bytes = payload_bytes.size();
    stage("encode", [&] {
        std::ofstream file(out_dir / "payload.msp", std::ios::binary | std::ios::trunc);
        if (!file) throw std::runtime_error("cannot write payload.msp");
        file.write(reinterpret_cast<const char*>(payload_bytes.data()),
                   static_cast<std::streamsize>(payload_bytes.size()));
        return 0;
    });

    const Payload payload = stage("decode", [&] { return decode(payload_bytes); });
    const MultiSpectralImage reconstructed =
        stage("reconstruct", [&] { return reconstruct(loaded.reference, payload); });
    stage("reconstruct", [&] {
        save_raster(reconstructed, out_dir / "reconstructed.msr");
        return 0;
    });

    out.fidelity = stage("metrics", [&] { return psnr(loaded.acquired, reconstructed); });

    json metrics;
    metrics["psnr_db"] = out.fidelity.infinite ? json("inf") : json(out.fidelity.psnr_db);
    metrics["mse"] = out.fidelity.mse;
    metrics["c_orbit_bits"] = out.c_orbit_bits;
    metrics["tau"] = out.tau;
    metrics["bits_per_pixel"] = out.bits_per_pixel;
    metrics["bits_used"] = out.bits_used;
    metrics["selected_pixels"] = out.selected_pixels;
    metrics["payload_bytes"] = out.payload_bytes;

    if (truth_path) {
        stage("metrics", [&] {
            const ChangeMap truth = load_change_map(*truth_path);
            out.encoding_rate = change_encoding_rate(selection, truth);
            save_confusion_ppm(confusion_map(selection, truth), out_dir / "confusion.ppm");
            return 0;
        });
        metrics["encoding_rate"] = *out.encoding_rate;
    }

    write_text_file(out_dir / "selection.json", selection_to_json(selection) + "\n");
    write_text_file(out_dir / "metrics.json", metrics.dump(2) + "\n");
    return out;
}

// ---------------------------------------------------------------------
// cmd_compare
// ---------------------------------------------------------------------

std::vector<CompareRow> cmd_compare(const ScenarioConfig& cfg,
                                    const std::filesystem::path& reference_path,
                                    const std::filesystem::path& acquired_path,
                                    const std::filesystem::path& truth_path,
                                    const std::vector<double>& budget_fractions,
                                    const std::vector<std::uint64_t>& seeds,
                                    const std::filesystem::path& out_dir) {
    if (budget_fractions.empty() || seeds.empty()) {
        throw ConfigError("compare needs at least one budget fraction and one seed");
    }

    const LoadedPair loaded = stage("load", [&] {
        return load_and_select(cfg, reference_path, acquired_path);
    });
    const ChangeMap truth = stage("load", [&] { return load_change_map(truth_path); });

    const ChangeScoreMap scores = stage("score", [&] {
        return score_changes(normalize_zscore(loaded.reference),
                             normalize_zscore(loaded.acquired), make_scorer_spec(cfg));
    });

    const std::uint64_t bpp =
        cfg.bits_per_pixel_override
            ? *cfg.bits_per_pixel_override
            : bits_per_pixel(loaded.reference.bands, loaded.reference.bit_depth);

    // candidate pool: every ground-truth changed pixel, ranked by score
    const std::vector<PixelCandidate> candidates =
        stage("select", [&] { return build_candidates(scores, truth, bpp); });
    const std::uint64_t full_bits = static_cast<std::uint64_t>(candidates.size()) * bpp;

    std::vector<CompareRow> rows(budget_fractions.size() * seeds.size());
    std::vector<std::string> errors(rows.size());
    parallel_for(rows.size(), [&](std::size_t i) {
        try {
            const double budget = budget_fractions[i / seeds.size()];
            const std::uint64_t seed = seeds[i % seeds.size()];
            const auto capacity = static_cast<std::uint64_t>(
                std::llround(budget * static_cast<double>(full_bits)));

            const SelectionResult greedy = solve_p2_greedy(candidates, capacity);
            const SelectionResult baseline =
                solve_random_baseline(candidates, capacity, seed);

            CompareRow row;
            row.budget_fraction = budget;
            row.seed = seed;
            row.encoded_bits = greedy.total_bits;
            row.encoding_rate = change_encoding_rate(greedy, truth);
            row.greedy = psnr(loaded.acquired,
                              reconstruct(loaded.reference,
                                          decode(encode(loaded.acquired, greedy))));
            row.baseline = psnr(loaded.acquired,
                                reconstruct(loaded.reference,
                                            decode(encode(loaded.acquired, baseline))));
            rows[i] = row;
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (const auto& err : errors) {
        if (!err.empty()) throw StageError("compare: " + err);
    }

    std::filesystem::create_directories(out_dir);
    std::ostringstream csv;
    csv << "budget_fraction,seed,encoding_rate,encoded_bits,greedy_psnr_db,"
           "baseline_psnr_db\n";
    for (const auto& row : rows) {
        csv << format_double(row.budget_fraction) << "," << row.seed << ","
            << format_double(row.encoding_rate) << "," << row.encoded_bits << ","
            << psnr_to_string(row.greedy) << "," << psnr_to_string(row.baseline) << "\n";
    }
    write_text_file(out_dir / "compare.csv", csv.str());
    return rows;
}

}  // namespace eodl
