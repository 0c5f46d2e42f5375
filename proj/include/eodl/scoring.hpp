#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "eodl/raster.hpp"

namespace eodl {

/// Per-pixel change scores in [0, 1], row-major.
struct ChangeScoreMap {
    std::uint32_t height = 0;
    std::uint32_t width = 0;
    std::vector<double> scores;

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(height) * width;
    }
    void validate() const;
};

/// Binary change map, row-major 0/1 flags.
struct ChangeMap {
    std::uint32_t height = 0;
    std::uint32_t width = 0;
    std::vector<std::uint8_t> flags;

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(height) * width;
    }
    std::size_t count() const;
    void validate() const;

    static ChangeMap zeros(std::uint32_t height, std::uint32_t width);
};

/// Score source: the built-in spectral-magnitude scorer, or a score map
/// produced by an external pipeline (MSR container, 1 band, 16-bit,
/// values interpreted as v / 65535).
struct ScorerSpec {
    enum class Kind { spectral_magnitude, external_map };
    Kind kind = Kind::spectral_magnitude;
    std::filesystem::path map_path;

    static ScorerSpec spectral_magnitude() { return {}; }
    static ScorerSpec external_map(std::filesystem::path path) {
        return {Kind::external_map, std::move(path)};
    }
};

/// Score each pixel of a normalized pair. The spectral-magnitude scorer
/// takes the per-pixel Euclidean norm of the band differences and
/// rescales by the maximum (all zero when the images match).
ChangeScoreMap score_changes(const NormalizedImage& reference,
                             const NormalizedImage& acquired, const ScorerSpec& spec);

/// Flag pixels whose score is >= tau (boundary inclusive). tau must lie
/// in [0, 1].
ChangeMap threshold_map(const ChangeScoreMap& scores, double tau);

/// Smallest threshold from the map's score values (plus sentinels 0 and
/// one ulp above 1) whose selection fits the capacity:
/// count(score >= tau) * bits_per_pixel <= capacity. Returns the
/// above-one sentinel when nothing fits.
double calibrate_tau(const ChangeScoreMap& scores, std::uint64_t bits_per_pixel,
                     double capacity_bits);

}  // namespace eodl
