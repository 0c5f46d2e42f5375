#include "eodl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "eodl/numeric.hpp"

namespace eodl {

std::size_t ConfusionMap::count(PixelCategory category) const {
    return static_cast<std::size_t>(
        std::count(categories.begin(), categories.end(), category));
}

PsnrResult psnr(const MultiSpectralImage& original,
                const MultiSpectralImage& reconstructed) {
    original.validate();
    reconstructed.validate();
    if (!original.same_shape(reconstructed)) {
        throw std::invalid_argument("PSNR requires identical dimensions and bit depth");
    }

    CompensatedSum sq;
    for (std::size_t i = 0; i < original.samples.size(); ++i) {
        const double d = static_cast<double>(original.samples[i]) -
                         static_cast<double>(reconstructed.samples[i]);
        sq.add(d * d);
    }
    PsnrResult result;
    result.mse = sq.value() / static_cast<double>(original.samples.size());
    if (result.mse == 0.0) {
        result.infinite = true;
        return result;
    }
    const double peak = static_cast<double>(original.max_value());
    result.psnr_db = 10.0 * std::log10(peak * peak / result.mse);
    return result;
}

double change_encoding_rate(const SelectionResult& selection, const ChangeMap& truth) {
    truth.validate();
    const std::size_t total = truth.count();
    if (total == 0) {
        throw std::invalid_argument(
            "change encoding rate is undefined for an empty truth map");
    }
    std::size_t hits = 0;
    for (const auto& [r, c] : selection.selected) {
        if (r >= truth.height || c >= truth.width) {
            throw std::invalid_argument("selection coordinate outside the truth map");
        }
        hits += truth.flags[static_cast<std::size_t>(r) * truth.width + c];
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

ConfusionMap confusion_map(const SelectionResult& selection, const ChangeMap& truth) {
    truth.validate();
    ConfusionMap map;
    map.height = truth.height;
    map.width = truth.width;
    map.categories.assign(truth.pixel_count(), PixelCategory::background);

    for (std::size_t i = 0; i < truth.flags.size(); ++i) {
        if (truth.flags[i]) map.categories[i] = PixelCategory::missed_change;
    }
    for (const auto& [r, c] : selection.selected) {
        if (r >= truth.height || c >= truth.width) {
            throw std::invalid_argument("selection coordinate outside the truth map");
        }
        const std::size_t i = static_cast<std::size_t>(r) * truth.width + c;
        map.categories[i] = truth.flags[i] ? PixelCategory::true_positive
                                           : PixelCategory::encoded_only;
    }
    return map;
}

void save_confusion_ppm(const ConfusionMap& map, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write PPM file: " + path.string());
    out << "P6\n" << map.width << " " << map.height << "\n255\n";
    for (PixelCategory cat : map.categories) {
        switch (cat) {
            case PixelCategory::encoded_only:
                out.put(char(255)); out.put(char(0)); out.put(char(0));
                break;
            case PixelCategory::true_positive:
                out.put(char(0)); out.put(char(255)); out.put(char(0));
                break;
            case PixelCategory::missed_change:
                out.put(char(255)); out.put(char(255)); out.put(char(255));
                break;
            case PixelCategory::background:
                out.put(char(0)); out.put(char(0)); out.put(char(0));
                break;
        }
    }
    if (!out) throw std::runtime_error("I/O error writing " + path.string());
}

}  // namespace eodl
