#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eodl/scoring.hpp"

namespace eodl {

/// One transmission candidate: a changed pixel with its importance score
/// and encoding cost.
struct PixelCandidate {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    double score = 0.0;
    std::uint64_t bits = 1;
    bool changed = true;
};

/// Solver output: chosen coordinates with the totals they imply. Only
/// changed candidates are eligible and the bit total never exceeds the
/// capacity the solve ran with.
struct SelectionResult {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> selected;
    std::uint64_t total_bits = 0;
    double total_score = 0.0;
};

/// One candidate per flagged pixel of the change map, uniform cost.
std::vector<PixelCandidate> build_candidates(const ChangeScoreMap& scores,
                                             const ChangeMap& change_map,
                                             std::uint64_t bits_per_pixel);

/// Ranked greedy: sort by score/bits descending (ties: score descending,
/// then row-major coordinates), then take every candidate that still
/// fits the remaining budget.
SelectionResult solve_p2_greedy(std::span<const PixelCandidate> candidates,
                                std::uint64_t capacity_bits);

/// Exhaustive optimum over at most 25 candidates. Among equal-score
/// optima prefers fewer bits, then the lexicographically smallest
/// row-major coordinate list.
SelectionResult solve_p2_exact(std::span<const PixelCandidate> candidates,
                               std::uint64_t capacity_bits);

/// Reference baseline: a seeded uniform shuffle packed greedily up to the
/// data volume the ranked greedy used on the same inputs.
SelectionResult solve_random_baseline(std::span<const PixelCandidate> candidates,
                                      std::uint64_t capacity_bits, std::uint64_t seed);

/// JSON pipeline handoff: {"selected": [[i,j],...], "total_bits": n,
/// "total_score": x}.
std::string selection_to_json(const SelectionResult& result);
SelectionResult selection_from_json(const std::string& text);

}  // namespace eodl
