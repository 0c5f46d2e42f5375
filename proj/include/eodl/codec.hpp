#pragma once

#include <cstdint>
#include <vector>

#include "eodl/raster.hpp"
#include "eodl/selection.hpp"

namespace eodl {

/// Decoded transmission payload: image geometry plus the transmitted
/// pixels with their per-band samples.
struct Payload {
    std::uint32_t height = 0;
    std::uint32_t width = 0;
    std::uint32_t bands = 0;
    std::uint8_t bit_depth = 16;

    struct Entry {
        std::uint16_t row = 0;
        std::uint16_t col = 0;
        std::vector<std::uint16_t> values;  // one per band
    };
    std::vector<Entry> entries;
};

/// Encoding cost of one multi-spectral pixel: band samples plus two
/// 16-bit coordinates.
std::uint64_t bits_per_pixel(std::uint32_t bands, std::uint32_t bit_depth);

// Wire format (little-endian):
//   "MSP1" | u32 height | u32 width | u32 bands | u8 bit_depth |
//   3 reserved zero bytes | u32 pixel_count |
//   pixel_count * (u16 row, u16 col, bands samples) row-major

/// Serialize the selected pixels of `acquired`. Entries are written in
/// row-major order regardless of selection order.
std::vector<std::uint8_t> encode(const MultiSpectralImage& acquired,
                                 const SelectionResult& selection);

Payload decode(const std::vector<std::uint8_t>& bytes);

/// Overlay payload pixels on the reference image.
MultiSpectralImage reconstruct(const MultiSpectralImage& reference, const Payload& payload);

}  // namespace eodl
