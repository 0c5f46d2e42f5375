#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "eodl/codec.hpp"
#include "eodl/link.hpp"
#include "eodl/metrics.hpp"
#include "eodl/orbit.hpp"
#include "eodl/pipeline.hpp"
#include "eodl/raster.hpp"
#include "eodl/scoring.hpp"
#include "eodl/selection.hpp"

namespace py = pybind11;
using namespace eodl;

PYBIND11_MODULE(_core, m) {
    m.doc() = "LEO Earth-observation downlink simulator core";

    // ---- raster ----
    py::class_<MultiSpectralImage>(m, "MultiSpectralImage")
        .def(py::init<>())
        .def_readwrite("height", &MultiSpectralImage::height)
        .def_readwrite("width", &MultiSpectralImage::width)
        .def_readwrite("bands", &MultiSpectralImage::bands)
        .def_readwrite("bit_depth", &MultiSpectralImage::bit_depth)
        .def_readwrite("samples", &MultiSpectralImage::samples)
        .def("at", &MultiSpectralImage::at)
        .def("validate", &MultiSpectralImage::validate)
        .def_static("zeros", &MultiSpectralImage::zeros);

    py::class_<BandStats>(m, "BandStats")
        .def_readonly("mean", &BandStats::mean)
        .def_readonly("stddev", &BandStats::stddev);

    py::class_<NormalizedImage>(m, "NormalizedImage")
        .def_readonly("height", &NormalizedImage::height)
        .def_readonly("width", &NormalizedImage::width)
        .def_readonly("bands", &NormalizedImage::bands)
        .def_readonly("samples", &NormalizedImage::samples)
        .def_readonly("band_stats", &NormalizedImage::band_stats);

    py::class_<ImagePair>(m, "ImagePair")
        .def(py::init<>())
        .def_readwrite("reference", &ImagePair::reference)
        .def_readwrite("acquired", &ImagePair::acquired)
        .def("validate", &ImagePair::validate);

    py::class_<SynthResult>(m, "SynthResult")
        .def_readonly("pair", &SynthResult::pair)
        .def_readonly("change_mask", &SynthResult::change_mask);

    m.def("load_raster", &load_raster);
    m.def("save_raster", &save_raster);
    m.def("select_bands", &select_bands);
    m.def("normalize_zscore", &normalize_zscore);
    m.def("synth_pair", &synth_pair, py::arg("seed"), py::arg("height"), py::arg("width"),
          py::arg("bands"), py::arg("change_fraction"), py::arg("bit_depth") = 16);

    // ---- orbit ----
    py::class_<OrbitGeometry>(m, "OrbitGeometry")
        .def(py::init<>())
        .def_readwrite("altitude_m", &OrbitGeometry::altitude_m)
        .def_readwrite("earth_radius_m", &OrbitGeometry::earth_radius_m)
        .def_readwrite("min_elevation_rad", &OrbitGeometry::min_elevation_rad)
        .def_readwrite("gravitational_parameter", &OrbitGeometry::gravitational_parameter)
        .def_readwrite("max_elevation_rad", &OrbitGeometry::max_elevation_rad);

    py::class_<PassProfile>(m, "PassProfile")
        .def_readonly("sample_times_s", &PassProfile::sample_times_s)
        .def_readonly("distances_m", &PassProfile::distances_m)
        .def("interval_count", &PassProfile::interval_count)
        .def("duration_s", &PassProfile::duration_s);

    m.def("orbital_velocity", &orbital_velocity);
    m.def("max_slant_range", &max_slant_range);
    m.def("visibility_duration", &visibility_duration);
    m.def("pass_distance_profile", &pass_distance_profile);

    // ---- link ----
    py::class_<LinkBudget>(m, "LinkBudget")
        .def(py::init<>())
        .def_readwrite("tx_power_w", &LinkBudget::tx_power_w)
        .def_readwrite("tx_gain_linear", &LinkBudget::tx_gain_linear)
        .def_readwrite("rx_gain_linear", &LinkBudget::rx_gain_linear)
        .def_readwrite("carrier_hz", &LinkBudget::carrier_hz)
        .def_readwrite("bandwidth_hz", &LinkBudget::bandwidth_hz)
        .def_readwrite("noise_temperature_k", &LinkBudget::noise_temperature_k)
        .def_readwrite("noise_figure_db", &LinkBudget::noise_figure_db)
        .def_readwrite("light_speed_m_s", &LinkBudget::light_speed_m_s);

    py::class_<ModcodEntry>(m, "ModcodEntry")
        .def(py::init<>())
        .def_readwrite("name", &ModcodEntry::name)
        .def_readwrite("spectral_efficiency", &ModcodEntry::spectral_efficiency)
        .def_readwrite("min_snr_db", &ModcodEntry::min_snr_db)
        .def("min_snr_linear", &ModcodEntry::min_snr_linear);

    py::class_<ModcodTable>(m, "ModcodTable")
        .def(py::init<std::vector<ModcodEntry>>())
        .def("entries", &ModcodTable::entries)
        .def_static("dvb_s2_default", &ModcodTable::dvb_s2_default)
        .def_static("from_csv", &ModcodTable::from_csv);

    py::class_<RateProfile>(m, "RateProfile")
        .def_readonly("durations_s", &RateProfile::durations_s)
        .def_readonly("rates_bps", &RateProfile::rates_bps);

    m.def("db_to_linear", &db_to_linear);
    m.def("linear_to_db", &linear_to_db);
    m.def("antenna_gain", &antenna_gain, py::arg("diameter_m"), py::arg("efficiency"),
          py::arg("frequency_hz"), py::arg("light_speed_m_s") = DEFAULT_LIGHT_SPEED_M_S);
    m.def("noise_power", &noise_power);
    m.def("snr", &snr);
    m.def("modcod_rate", &modcod_rate);
    m.def("shannon_rate", &shannon_rate);
    m.def("rate_profile", &rate_profile);
    m.def("orbit_capacity", &orbit_capacity);

    // ---- scoring ----
    py::class_<ChangeScoreMap>(m, "ChangeScoreMap")
        .def(py::init<>())
        .def_readwrite("height", &ChangeScoreMap::height)
        .def_readwrite("width", &ChangeScoreMap::width)
        .def_readwrite("scores", &ChangeScoreMap::scores);

    py::class_<ChangeMap>(m, "ChangeMap")
        .def(py::init<>())
        .def_readwrite("height", &ChangeMap::height)
        .def_readwrite("width", &ChangeMap::width)
        .def_readwrite("flags", &ChangeMap::flags)
        .def("count", &ChangeMap::count);

    py::class_<ScorerSpec>(m, "ScorerSpec")
        .def_static("spectral_magnitude", &ScorerSpec::spectral_magnitude)
        .def_static("external_map", &ScorerSpec::external_map);

    m.def("score_changes", &score_changes);
    m.def("threshold_map", &threshold_map);
    m.def("calibrate_tau", &calibrate_tau);

    // ---- selection ----
    py::class_<PixelCandidate>(m, "PixelCandidate")
        .def(py::init<>())
        .def(py::init([](std::uint32_t row, std::uint32_t col, double score,
                         std::uint64_t bits) {
                 return PixelCandidate{row, col, score, bits, true};
             }),
             py::arg("row"), py::arg("col"), py::arg("score"), py::arg("bits"))
        .def_readwrite("row", &PixelCandidate::row)
        .def_readwrite("col", &PixelCandidate::col)
        .def_readwrite("score", &PixelCandidate::score)
        .def_readwrite("bits", &PixelCandidate::bits)
        .def_readwrite("changed", &PixelCandidate::changed);

    py::class_<SelectionResult>(m, "SelectionResult")
        .def(py::init<>())
        .def_readwrite("selected", &SelectionResult::selected)
        .def_readwrite("total_bits", &SelectionResult::total_bits)
        .def_readwrite("total_score", &SelectionResult::total_score);

    m.def("build_candidates", &build_candidates);
    m.def("solve_p2_greedy", [](const std::vector<PixelCandidate>& c, std::uint64_t cap) {
        return solve_p2_greedy(c, cap);
    });
    m.def("solve_p2_exact", [](const std::vector<PixelCandidate>& c, std::uint64_t cap) {
        return solve_p2_exact(c, cap);
    });
    m.def("solve_random_baseline",
          [](const std::vector<PixelCandidate>& c, std::uint64_t cap, std::uint64_t seed) {
              return solve_random_baseline(c, cap, seed);
          });
    m.def("selection_to_json", &selection_to_json);
    m.def("selection_from_json", &selection_from_json);

    // ---- codec ----
    py::class_<Payload::Entry>(m, "PayloadEntry")
        .def_readonly("row", &Payload::Entry::row)
        .def_readonly("col", &Payload::Entry::col)
        .def_readonly("values", &Payload::Entry::values);

    py::class_<Payload>(m, "Payload")
        .def_readonly("height", &Payload::height)
        .def_readonly("width", &Payload::width)
        .def_readonly("bands", &Payload::bands)
        .def_readonly("bit_depth", &Payload::bit_depth)
        .def_readonly("entries", &Payload::entries);

    m.def("bits_per_pixel", &bits_per_pixel);
    m.def("encode", [](const MultiSpectralImage& img, const SelectionResult& sel) {
        const std::vector<std::uint8_t> bytes = encode(img, sel);
        return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    });
    m.def("decode", [](const py::bytes& data) {
        const std::string buffer = data;
        return decode(std::vector<std::uint8_t>(buffer.begin(), buffer.end()));
    });
    m.def("reconstruct", &reconstruct);

    // ---- metrics ----
    py::class_<PsnrResult>(m, "PsnrResult")
        .def_readonly("mse", &PsnrResult::mse)
        .def_readonly("infinite", &PsnrResult::infinite)
        .def_readonly("psnr_db", &PsnrResult::psnr_db);

    m.def("psnr", &psnr);
    m.def("change_encoding_rate", &change_encoding_rate);

    // ---- pipeline ----
    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("altitude_m", &ScenarioConfig::altitude_m)
        .def_readwrite("min_elevation_deg", &ScenarioConfig::min_elevation_deg)
        .def_readwrite("noise_figure_db", &ScenarioConfig::noise_figure_db)
        .def_readwrite("intervals", &ScenarioConfig::intervals)
        .def_readwrite("seed", &ScenarioConfig::seed);

    m.def("parse_config", &parse_config);
    m.def("config_to_json", &config_to_json);
    m.def("make_orbit_geometry", &make_orbit_geometry);
    m.def("make_link_budget", &make_link_budget);
    m.def("make_modcod_table", &make_modcod_table);
}
