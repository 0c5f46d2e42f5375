#include "eodl/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace eodl {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

}  // namespace

void ChangeScoreMap::validate() const {
    require(height > 0 && width > 0, "score map dimensions must be positive");
    require(scores.size() == pixel_count(), "score count mismatch");
    for (double s : scores) {
        require(s >= 0.0 && s <= 1.0, "change score outside [0, 1]");
    }
}

void ChangeMap::validate() const {
    require(height > 0 && width > 0, "change map dimensions must be positive");
    require(flags.size() == pixel_count(), "flag count mismatch");
    for (std::uint8_t f : flags) require(f == 0 || f == 1, "change flag must be 0 or 1");
}

std::size_t ChangeMap::count() const {
    return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), 1));
}

ChangeMap ChangeMap::zeros(std::uint32_t height, std::uint32_t width) {
    ChangeMap map;
    map.height = height;
    map.width = width;
    map.flags.assign(static_cast<std::size_t>(height) * width, 0);
    return map;
}

ChangeScoreMap score_changes(const NormalizedImage& reference,
                             const NormalizedImage& acquired, const ScorerSpec& spec) {
    require(reference.height == acquired.height && reference.width == acquired.width &&
                reference.bands == acquired.bands,
            "normalized pair dimension mismatch");

    ChangeScoreMap map;
    map.height = reference.height;
    map.width = reference.width;

    if (spec.kind == ScorerSpec::Kind::external_map) {
        const MultiSpectralImage raw = load_raster(spec.map_path);
        require(raw.bands == 1 && raw.bit_depth == 16,
                "external score map must be a 1-band 16-bit raster");
        require(raw.height == reference.height && raw.width == reference.width,
                "external score map dimension mismatch");
        map.scores.resize(raw.samples.size());
        for (std::size_t i = 0; i < raw.samples.size(); ++i) {
            map.scores[i] = static_cast<double>(raw.samples[i]) / 65535.0;
        }
        map.validate();
        return map;
    }

    const std::size_t pixels = map.pixel_count();
    map.scores.assign(pixels, 0.0);
    double max_raw = 0.0;
    for (std::size_t p = 0; p < pixels; ++p) {
        double sq = 0.0;
        for (std::uint32_t b = 0; b < reference.bands; ++b) {
            const std::size_t idx = static_cast<std::size_t>(b) * pixels + p;
            const double d = acquired.samples[idx] - reference.samples[idx];
            sq += d * d;
        }
        const double raw = std::sqrt(sq);
        map.scores[p] = raw;
        max_raw = std::max(max_raw, raw);
    }
    if (max_raw > 0.0) {
        for (double& s : map.scores) s /= max_raw;
        // guard against rounding drift above 1 at the maximum itself
        for (double& s : map.scores) s = std::min(s, 1.0);
    }
    map.validate();
    return map;
}

ChangeMap threshold_map(const ChangeScoreMap& scores, double tau) {
    scores.validate();
    require(tau >= 0.0 && tau <= 1.0, "tau must lie in [0, 1]");
    ChangeMap map;
    map.height = scores.height;
    map.width = scores.width;
    map.flags.resize(scores.scores.size());
    for (std::size_t i = 0; i < map.flags.size(); ++i) {
        map.flags[i] = scores.scores[i] >= tau ? 1 : 0;
    }
    return map;
}

double calibrate_tau(const ChangeScoreMap& scores, std::uint64_t bits_per_pixel,
                     double capacity_bits) {
    scores.validate();
    require(bits_per_pixel > 0, "bits per pixel must be positive");

    // candidate thresholds: every distinct score plus the sentinels
    std::vector<double> candidates = scores.scores;
    candidates.push_back(0.0);
    candidates.push_back(std::nextafter(1.0, 2.0));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<double> sorted_scores = scores.scores;
    std::sort(sorted_scores.begin(), sorted_scores.end());

    const auto selected_bits = [&](double tau) {
        // number of scores >= tau, from the sorted array
        const auto it = std::lower_bound(sorted_scores.begin(), sorted_scores.end(), tau);
        const auto count = static_cast<std::uint64_t>(sorted_scores.end() - it);
        return static_cast<double>(count * bits_per_pixel);
    };

    // feasibility is monotone in tau: search for the smallest feasible one
    std::size_t lo = 0, hi = candidates.size() - 1;
    if (!(selected_bits(candidates[hi]) <= capacity_bits)) {
        // even the empty selection fails only if capacity is negative
        return candidates[hi];
    }
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (selected_bits(candidates[mid]) <= capacity_bits) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return candidates[lo];
}

}  // namespace eodl
