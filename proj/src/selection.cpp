#include "eodl/selection.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include <json.hpp>

#include "eodl/numeric.hpp"

namespace eodl {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

bool ranked_before(const PixelCandidate& a, const PixelCandidate& b) {
    // density order with deterministic tie-breaking
    const double da = a.score * static_cast<double>(b.bits);
    const double db = b.score * static_cast<double>(a.bits);
    if (da != db) return da > db;
    if (a.score != b.score) return a.score > b.score;
    if (a.row != b.row) return a.row < b.row;
    return a.col < b.col;
}

// Sum scores in row-major coordinate order so that every solver reports
// bit-identical totals for the same selected set.
double canonical_score_total(std::vector<PixelCandidate> chosen) {
    std::sort(chosen.begin(), chosen.end(), [](const auto& a, const auto& b) {
        if (a.row != b.row) return a.row < b.row;
        return a.col < b.col;
    });
    CompensatedSum score;
    for (const auto& c : chosen) score.add(c.score);
    return score.value();
}

SelectionResult pack_in_order(const std::vector<PixelCandidate>& ordered,
                              std::uint64_t capacity_bits) {
    SelectionResult result;
    std::vector<PixelCandidate> chosen;
    for (const auto& c : ordered) {
        if (!c.changed) continue;
        if (result.total_bits + c.bits > capacity_bits) continue;
        result.total_bits += c.bits;
        chosen.push_back(c);
        result.selected.emplace_back(c.row, c.col);
    }
    result.total_score = canonical_score_total(std::move(chosen));
    return result;
}

}  // namespace

std::vector<PixelCandidate> build_candidates(const ChangeScoreMap& scores,
                                             const ChangeMap& change_map,
                                             std::uint64_t bits_per_pixel) {
    scores.validate();
    change_map.validate();
    require(scores.height == change_map.height && scores.width == change_map.width,
            "score map and change map dimension mismatch");
    require(bits_per_pixel >= 1, "bits per pixel must be positive");

    std::vector<PixelCandidate> candidates;
    for (std::uint32_t r = 0; r < scores.height; ++r) {
        for (std::uint32_t c = 0; c < scores.width; ++c) {
            const std::size_t idx = static_cast<std::size_t>(r) * scores.width + c;
            if (change_map.flags[idx] == 0) continue;
            candidates.push_back(
                PixelCandidate{r, c, scores.scores[idx], bits_per_pixel, true});
        }
    }
    return candidates;
}

SelectionResult solve_p2_greedy(std::span<const PixelCandidate> candidates,
                                std::uint64_t capacity_bits) {
    std::vector<PixelCandidate> ordered(candidates.begin(), candidates.end());
    std::sort(ordered.begin(), ordered.end(), ranked_before);
    return pack_in_order(ordered, capacity_bits);
}

SelectionResult solve_p2_exact(std::span<const PixelCandidate> candidates,
                               std::uint64_t capacity_bits) {
    require(candidates.size() <= 25, "exact solver is limited to 25 candidates");

    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].changed) eligible.push_back(i);
    }
    const std::size_t n = eligible.size();

    // canonical candidate order for lexicographic subset comparison
    std::sort(eligible.begin(), eligible.end(), [&](std::size_t a, std::size_t b) {
        if (candidates[a].row != candidates[b].row) {
            return candidates[a].row < candidates[b].row;
        }
        return candidates[a].col < candidates[b].col;
    });

    std::uint32_t best_mask = 0;
    double best_score = 0.0;
    std::uint64_t best_bits = 0;
    bool have_best = false;

    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::uint64_t bits = 0;
        double score = 0.0;
        bool feasible = true;
        for (std::size_t i = 0; i < n && feasible; ++i) {
            if (!(mask & (1u << i))) continue;
            bits += candidates[eligible[i]].bits;
            score += candidates[eligible[i]].score;
            feasible = bits <= capacity_bits;
        }
        if (!feasible) continue;
        bool better = !have_best || score > best_score ||
                      (score == best_score && bits < best_bits);
        if (!better && score == best_score && bits == best_bits && mask != best_mask) {
            // lexicographically smaller coordinate list: at the first
            // row-major position where the subsets differ, the one that
            // contains that pixel compares smaller
            const std::uint32_t diff = mask ^ best_mask;
            better = (mask >> std::countr_zero(diff)) & 1u;
        }
        if (better) {
            have_best = true;
            best_mask = mask;
            best_score = score;
            best_bits = bits;
        }
    }

    SelectionResult result;
    result.total_bits = best_bits;
    std::vector<PixelCandidate> chosen;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(best_mask & (1u << i))) continue;
        const auto& c = candidates[eligible[i]];
        result.selected.emplace_back(c.row, c.col);
        chosen.push_back(c);
    }
    result.total_score = canonical_score_total(std::move(chosen));
    return result;
}

SelectionResult solve_random_baseline(std::span<const PixelCandidate> candidates,
                                      std::uint64_t capacity_bits, std::uint64_t seed) {
    const std::uint64_t volume = solve_p2_greedy(candidates, capacity_bits).total_bits;

    std::vector<PixelCandidate> shuffled(candidates.begin(), candidates.end());
    DeterministicRng rng(seed);
    rng.shuffle(shuffled);
    return pack_in_order(shuffled, volume);
}

std::string selection_to_json(const SelectionResult& result) {
    nlohmann::json doc;
    doc["selected"] = nlohmann::json::array();
    for (const auto& [r, c] : result.selected) {
        doc["selected"].push_back({r, c});
    }
    doc["total_bits"] = result.total_bits;
    doc["total_score"] = result.total_score;
    return doc.dump(2);
}

SelectionResult selection_from_json(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    SelectionResult result;
    for (const auto& pair : doc.at("selected")) {
        result.selected.emplace_back(pair.at(0).get<std::uint32_t>(),
                                     pair.at(1).get<std::uint32_t>());
    }
    result.total_bits = doc.at("total_bits").get<std::uint64_t>();
    result.total_score = doc.at("total_score").get<double>();
    return result;
}

}  // namespace eodl
