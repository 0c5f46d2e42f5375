#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "eodl/raster.hpp"
#include "eodl/scoring.hpp"
#include "eodl/selection.hpp"

namespace eodl {

/// Reconstruction fidelity. A zero MSE carries an explicit infinite
/// marker instead of a sentinel value.
struct PsnrResult {
    double mse = 0.0;
    bool infinite = false;
    double psnr_db = 0.0;  // meaningful only when not infinite
};

enum class PixelCategory : std::uint8_t {
    background = 0,
    encoded_only = 1,   // selected but not a true change (red)
    true_positive = 2,  // selected true change (green)
    missed_change = 3,  // unselected true change (white)
};

struct ConfusionMap {
    std::uint32_t height = 0;
    std::uint32_t width = 0;
    std::vector<PixelCategory> categories;

    std::size_t count(PixelCategory category) const;
};

/// MSE over every sample of every band; PSNR against the bit-depth peak
/// (2^depth - 1).
PsnrResult psnr(const MultiSpectralImage& original,
                const MultiSpectralImage& reconstructed);

/// Recall of ground-truth changed pixels: |selected AND truth| / |truth|.
/// Throws when the truth map has no changed pixel.
double change_encoding_rate(const SelectionResult& selection, const ChangeMap& truth);

ConfusionMap confusion_map(const SelectionResult& selection, const ChangeMap& truth);

/// Palette export: red encoded_only, green true_positive, white
/// missed_change, black background.
void save_confusion_ppm(const ConfusionMap& map, const std::filesystem::path& path);

}  // namespace eodl
