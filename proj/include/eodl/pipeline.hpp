#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eodl/link.hpp"
#include "eodl/metrics.hpp"
#include "eodl/orbit.hpp"
#include "eodl/scoring.hpp"

namespace eodl {

/// Scenario inputs for the experiment commands. Defaults reproduce the
/// standard Ka-band LEO downlink configuration the library ships with.
struct ScenarioConfig {
    int schema_version = 1;

    // orbit
    double altitude_m = 600'000.0;
    double earth_radius_m = DEFAULT_EARTH_RADIUS_M;
    double min_elevation_deg = 30.0;
    double max_elevation_deg = 90.0;
    double gravity_constant = DEFAULT_GRAVITY_CONSTANT;
    double earth_mass_kg = DEFAULT_EARTH_MASS_KG;

    // link; direct dBi gains win over aperture-derived ones when both
    // are present
    double tx_power_w = 10.0;
    double carrier_hz = 26e9;
    double bandwidth_hz = 500e6;
    double noise_temperature_k = 290.0;
    double noise_figure_db = 0.0;
    double light_speed_m_s = DEFAULT_LIGHT_SPEED_M_S;
    std::optional<double> tx_gain_dbi = 32.13;
    std::optional<double> rx_gain_dbi = 34.2;
    std::optional<double> tx_antenna_diameter_m = 0.26;
    std::optional<double> rx_antenna_diameter_m = 0.26;
    double antenna_efficiency = 0.55;

    // pipeline
    std::optional<std::string> modcod_csv;
    std::uint32_t intervals = 1000;
    std::string scorer = "spectral_magnitude";  // or "external_map"
    std::optional<std::string> scorer_map_path;
    std::vector<std::uint32_t> bands;  // empty keeps every band
    std::optional<std::uint64_t> bits_per_pixel_override;
    std::uint64_t seed = 1;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Raised for configuration problems; carries a field-level message.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a pipeline stage fails; the message names the stage.
struct StageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ScenarioConfig& config);

OrbitGeometry make_orbit_geometry(const ScenarioConfig& config);
LinkBudget make_link_budget(const ScenarioConfig& config);
ModcodTable make_modcod_table(const ScenarioConfig& config);

// ---------------------------------------------------------------------
// Experiment commands. Each writes its artifacts under out_dir and
// returns the headline numbers for direct inspection.
// ---------------------------------------------------------------------

struct PassOutputs {
    double t_pass_s = 0.0;
    double d_max_m = 0.0;
    double orbital_velocity_m_s = 0.0;
    double c_orbit_bits = 0.0;
    std::size_t intervals = 0;
};

/// One-pass link prediction: writes pass_profile.csv, rate_profile.csv
/// and pass_summary.json.
PassOutputs cmd_pass(const ScenarioConfig& config, const std::filesystem::path& out_dir);

struct SweepCell {
    double min_elevation_deg = 0.0;
    double noise_figure_db = 0.0;
    double c_orbit_bits = 0.0;
};

/// Capacity grid over elevation angles and noise figures: writes
/// capacity_sweep.csv, rows in the given grid order (elevations outer).
std::vector<SweepCell> cmd_capacity_sweep(const ScenarioConfig& config,
                                          const std::vector<double>& min_elevations_deg,
                                          const std::vector<double>& noise_figures_db,
                                          const std::filesystem::path& out_dir);

struct SimulateOutputs {
    double c_orbit_bits = 0.0;
    double tau = 0.0;
    std::uint64_t bits_per_pixel = 0;
    std::uint64_t bits_used = 0;
    std::size_t selected_pixels = 0;
    std::size_t payload_bytes = 0;
    PsnrResult fidelity;
    std::optional<double> encoding_rate;  // present when truth was given
};

/// Full downlink simulation for one image pair: writes payload.msp,
/// reconstructed.msr, selection.json, metrics.json and, when ground
/// truth is given, confusion.ppm.
SimulateOutputs cmd_simulate(const ScenarioConfig& config,
                             const std::filesystem::path& reference_path,
                             const std::filesystem::path& acquired_path,
                             const std::optional<std::filesystem::path>& truth_path,
                             const std::filesystem::path& out_dir);

struct CompareRow {
    double budget_fraction = 0.0;
    std::uint64_t seed = 0;
    double encoding_rate = 0.0;
    std::uint64_t encoded_bits = 0;
    PsnrResult greedy;
    PsnrResult baseline;
};

/// Ranked-greedy vs random-baseline sweep at budgets expressed as
/// fractions of the bits needed to send every ground-truth changed
/// pixel: writes compare.csv.
std::vector<CompareRow> cmd_compare(const ScenarioConfig& config,
                                    const std::filesystem::path& reference_path,
                                    const std::filesystem::path& acquired_path,
                                    const std::filesystem::path& truth_path,
                                    const std::vector<double>& budget_fractions,
                                    const std::vector<std::uint64_t>& seeds,
                                    const std::filesystem::path& out_dir);

// shared helpers used by the CLI and tests
ChangeMap load_change_map(const std::filesystem::path& path);
void save_change_map(const ChangeMap& map, const std::filesystem::path& path);
std::string format_double(double value);
std::string psnr_to_string(const PsnrResult& result);

}  // namespace eodl
