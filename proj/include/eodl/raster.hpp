#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace eodl {

/// Multi-spectral raster: H x W pixels, D bands, band-sequential sample
/// layout (all of band 0, then band 1, ...). Samples are unsigned and
/// bounded by the container bit depth (8 or 16).
struct MultiSpectralImage {
    std::uint32_t height = 0;
    std::uint32_t width = 0;
    std::uint32_t bands = 0;
    std::uint8_t bit_depth = 16;
    std::vector<std::uint16_t> samples;

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(height) * width;
    }
    std::size_t sample_count() const { return pixel_count() * bands; }
    std::uint32_t max_value() const {
        return (1u << bit_depth) - 1u;
    }

    std::size_t index(std::uint32_t row, std::uint32_t col, std::uint32_t band) const {
        return static_cast<std::size_t>(band) * pixel_count() +
               static_cast<std::size_t>(row) * width + col;
    }
    std::uint16_t at(std::uint32_t row, std::uint32_t col, std::uint32_t band) const {
        return samples[index(row, col, band)];
    }
    void set(std::uint32_t row, std::uint32_t col, std::uint32_t band, std::uint16_t v) {
        samples[index(row, col, band)] = v;
    }

    bool same_shape(const MultiSpectralImage& other) const {
        return height == other.height && width == other.width &&
               bands == other.bands && bit_depth == other.bit_depth;
    }

    /// Throws std::invalid_argument on any invariant violation.
    void validate() const;

    static MultiSpectralImage zeros(std::uint32_t height, std::uint32_t width,
                                    std::uint32_t bands, std::uint8_t bit_depth);
};

struct BandStats {
    double mean = 0.0;
    double stddev = 0.0;  // population standard deviation
};

/// Z-score normalized raster. Bands with zero variance are all-zero and
/// record stddev = 0.
struct NormalizedImage {
    std::uint32_t height = 0;
    std::uint32_t width = 0;
    std::uint32_t bands = 0;
    std::vector<double> samples;  // band-sequential, same layout as the source
    std::vector<BandStats> band_stats;

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(height) * width;
    }
    double at(std::uint32_t row, std::uint32_t col, std::uint32_t band) const {
        return samples[static_cast<std::size_t>(band) * pixel_count() +
                       static_cast<std::size_t>(row) * width + col];
    }
};

/// Coregistered reference/acquired pair. Shapes must agree.
struct ImagePair {
    MultiSpectralImage reference;
    MultiSpectralImage acquired;

    void validate() const;
};

struct SynthResult {
    ImagePair pair;
    std::vector<std::uint8_t> change_mask;  // row-major 0/1, ground truth
};

// ---------------------------------------------------------------------
// MSR container I/O (little-endian):
//   "MSR1" | u32 height | u32 width | u32 bands | u8 bit_depth |
//   3 reserved zero bytes | H*W*D samples band-sequential (u8 or u16)
// ---------------------------------------------------------------------

MultiSpectralImage load_raster(const std::filesystem::path& path);
void save_raster(const MultiSpectralImage& image, const std::filesystem::path& path);

// Per-band PGM (P5) interop and PPM (P6) visualization export.
MultiSpectralImage load_band_pgm(const std::filesystem::path& path);
void save_band_pgm(const MultiSpectralImage& image, std::uint32_t band,
                   const std::filesystem::path& path);
void save_ppm(const MultiSpectralImage& image, std::uint32_t red_band,
              std::uint32_t green_band, std::uint32_t blue_band,
              const std::filesystem::path& path);

/// Stack single-band images into one raster (bands in argument order).
MultiSpectralImage stack_bands(const std::vector<MultiSpectralImage>& bands);

/// Keep the listed bands, in the given order. Indices must be distinct
/// and in range.
MultiSpectralImage select_bands(const MultiSpectralImage& image,
                                const std::vector<std::uint32_t>& indices);

/// Per-band z-score: (x - mean) / population stddev. Zero-variance bands
/// map to all-zero output.
NormalizedImage normalize_zscore(const MultiSpectralImage& image);

/// Deterministic synthetic change pair. Exactly round(change_fraction*H*W)
/// pixels differ between reference and acquired; the returned mask flags
/// precisely those pixels. Change magnitudes vary per pixel so that score
/// ranking is informative.
SynthResult synth_pair(std::uint64_t seed, std::uint32_t height, std::uint32_t width,
                       std::uint32_t bands, double change_fraction,
                       std::uint8_t bit_depth = 16);

}  // namespace eodl
