#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "eodl/codec.hpp"
#include "eodl/metrics.hpp"
#include "eodl/numeric.hpp"

using namespace eodl;

namespace {

MultiSpectralImage random_image(std::uint64_t seed, std::uint32_t h, std::uint32_t w,
                                std::uint32_t d, std::uint8_t depth) {
    DeterministicRng rng(seed);
    MultiSpectralImage img = MultiSpectralImage::zeros(h, w, d, depth);
    for (auto& s : img.samples) {
        s = static_cast<std::uint16_t>(rng.next_below(img.max_value() + 1ull));
    }
    return img;
}

SelectionResult selection_of(const std::vector<std::pair<std::uint32_t, std::uint32_t>>&
                                 coords,
                             std::uint64_t bits_each) {
    SelectionResult sel;
    sel.selected = coords;
    sel.total_bits = coords.size() * bits_each;
    return sel;
}

SelectionResult random_selection(std::uint64_t seed, const MultiSpectralImage& img,
                                 std::size_t count) {
    DeterministicRng rng(seed);
    std::vector<std::size_t> order(img.pixel_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> coords;
    for (std::size_t i = 0; i < count; ++i) {
        coords.emplace_back(static_cast<std::uint32_t>(order[i] / img.width),
                            static_cast<std::uint32_t>(order[i] % img.width));
    }
    return selection_of(coords, bits_per_pixel(img.bands, img.bit_depth));
}

}  // namespace

TEST_CASE("bits per pixel accounting") {
    CHECK(bits_per_pixel(4, 16) == 96);
    CHECK(bits_per_pixel(1, 8) == 40);
    CHECK_THROWS_AS(bits_per_pixel(0, 16), std::invalid_argument);
}

TEST_CASE("empty selection encodes to a header-only payload") {
    const auto img = random_image(1, 4, 4, 2, 16);
    const auto bytes = encode(img, SelectionResult{});
    CHECK(bytes.size() == 24);
    const Payload payload = decode(bytes);
    CHECK(payload.entries.empty());
    CHECK(payload.height == 4);

    const auto back = reconstruct(img, payload);
    CHECK(back.samples == img.samples);
}

TEST_CASE("full-image selection carries every pixel") {
    const auto reference = random_image(2, 5, 3, 2, 8);
    const auto acquired = random_image(3, 5, 3, 2, 8);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> coords;
    for (std::uint32_t r = 0; r < 5; ++r) {
        for (std::uint32_t c = 0; c < 3; ++c) coords.emplace_back(r, c);
    }
    const auto sel = selection_of(coords, bits_per_pixel(2, 8));
    const Payload payload = decode(encode(acquired, sel));
    CHECK(payload.entries.size() == 15);
    const auto back = reconstruct(reference, payload);
    CHECK(back.samples == acquired.samples);
}

TEST_CASE("encode/decode round-trips bit exactly on random fixtures") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::uint8_t depth = seed % 2 == 0 ? 16 : 8;
        const auto img = random_image(seed, 6, 7, 3, depth);
        DeterministicRng rng(seed + 77);
        const std::size_t count = rng.next_below(img.pixel_count() + 1);
        const auto sel = random_selection(seed + 1, img, count);

        const auto bytes = encode(img, sel);
        CHECK(bytes.size() == 24 + count * bits_per_pixel(3, depth) / 8);

        const Payload payload = decode(bytes);
        REQUIRE(payload.entries.size() == count);
        auto sorted = sel.selected;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < count; ++i) {
            CHECK(payload.entries[i].row == sorted[i].first);
            CHECK(payload.entries[i].col == sorted[i].second);
            for (std::uint32_t b = 0; b < 3; ++b) {
                CHECK(payload.entries[i].values[b] ==
                      img.at(sorted[i].first, sorted[i].second, b));
            }
        }
    }
}

TEST_CASE("wire format is bit exact against the golden bytes") {
    MultiSpectralImage img = MultiSpectralImage::zeros(2, 2, 2, 8);
    img.samples = {10, 20, 30, 40,    // band 0
                   50, 60, 70, 80};   // band 1
    const auto sel = selection_of({{1, 0}, {0, 1}}, bits_per_pixel(2, 8));
    const std::vector<std::uint8_t> expected{
        'M', 'S', 'P', '1',
        2, 0, 0, 0,     // height
        2, 0, 0, 0,     // width
        2, 0, 0, 0,     // bands
        8, 0, 0, 0,     // bit depth + reserved
        2, 0, 0, 0,     // pixel count
        0, 0, 1, 0, 20, 60,  // (0,1): band0=20 band1=60
        1, 0, 0, 0, 30, 70,  // (1,0): band0=30 band1=70
    };
    CHECK(encode(img, sel) == expected);
}

TEST_CASE("decode rejects corrupted streams") {
    const auto img = random_image(4, 4, 4, 2, 16);
    const auto bytes = encode(img, random_selection(5, img, 6));

    auto truncated = bytes;
    truncated.resize(bytes.size() / 2);
    CHECK_THROWS_WITH_AS(decode(truncated), doctest::Contains("truncated"),
                         std::runtime_error);

    auto bad_magic = bytes;
    bad_magic[0] = 'X';
    CHECK_THROWS_WITH_AS(decode(bad_magic), doctest::Contains("magic"),
                         std::runtime_error);

    // duplicate coordinate: duplicate the first record over the second
    auto duplicated = bytes;
    const std::size_t rec = 4 + 2 * 16 / 8;
    std::copy(duplicated.begin() + 24, duplicated.begin() + 24 + rec,
              duplicated.begin() + 24 + rec);
    CHECK_THROWS_WITH_AS(decode(duplicated), doctest::Contains("duplicate"),
                         std::runtime_error);

    // out-of-range coordinate
    auto out_of_range = bytes;
    out_of_range[24] = 0xff;  // row low byte
    out_of_range[25] = 0xff;  // row high byte
    CHECK_THROWS_WITH_AS(decode(out_of_range), doctest::Contains("out of range"),
                         std::runtime_error);

    auto trailing = bytes;
    trailing.push_back(0);
    CHECK_THROWS_AS(decode(trailing), std::runtime_error);
}

TEST_CASE("encode validates the selection against the image") {
    const auto img = random_image(6, 3, 3, 1, 8);
    const auto bad = selection_of({{3, 0}}, 40);
    CHECK_THROWS_AS(encode(img, bad), std::invalid_argument);
    const auto dup = selection_of({{1, 1}, {1, 1}}, 40);
    CHECK_THROWS_AS(encode(img, dup), std::invalid_argument);
}

TEST_CASE("reconstruct overlays exactly the transmitted pixels") {
    const auto reference = random_image(7, 4, 4, 2, 16);
    auto acquired = reference;
    acquired.set(2, 3, 0, static_cast<std::uint16_t>(acquired.at(2, 3, 0) ^ 0x1));
    acquired.set(2, 3, 1, static_cast<std::uint16_t>(acquired.at(2, 3, 1) ^ 0x2));

    const auto sel = selection_of({{2, 3}}, bits_per_pixel(2, 16));
    const Payload payload = decode(encode(acquired, sel));
    const auto once = reconstruct(reference, payload);

    std::size_t diffs = 0;
    for (std::size_t i = 0; i < once.samples.size(); ++i) {
        diffs += once.samples[i] != reference.samples[i] ? 1 : 0;
    }
    CHECK(diffs == 2);  // one pixel, two bands
    CHECK(once.at(2, 3, 0) == acquired.at(2, 3, 0));

    // idempotent overlay
    const auto twice = reconstruct(once, payload);
    CHECK(twice.samples == once.samples);

    MultiSpectralImage small = MultiSpectralImage::zeros(2, 2, 2, 16);
    CHECK_THROWS_AS(reconstruct(small, payload), std::invalid_argument);
}

TEST_CASE("fidelity never drops while growing the payload along the ranking") {
    const auto reference = random_image(8, 8, 8, 2, 16);
    auto acquired = random_image(9, 8, 8, 2, 16);

    // rank all pixels by raw difference magnitude, mimicking the greedy order
    std::vector<std::pair<double, std::pair<std::uint32_t, std::uint32_t>>> ranked;
    for (std::uint32_t r = 0; r < 8; ++r) {
        for (std::uint32_t c = 0; c < 8; ++c) {
            double sq = 0.0;
            for (std::uint32_t b = 0; b < 2; ++b) {
                const double d = static_cast<double>(acquired.at(r, c, b)) -
                                 static_cast<double>(reference.at(r, c, b));
                sq += d * d;
            }
            ranked.push_back({sq, {r, c}});
        }
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    double prev = -1.0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> coords;
    for (std::size_t k = 0; k <= ranked.size(); k += 8) {
        coords.clear();
        for (std::size_t i = 0; i < k; ++i) coords.push_back(ranked[i].second);
        const auto sel = selection_of(coords, bits_per_pixel(2, 16));
        const auto back = reconstruct(reference, decode(encode(acquired, sel)));
        const PsnrResult fidelity = psnr(acquired, back);
        const double value = fidelity.infinite ? 1e300 : fidelity.psnr_db;
        CHECK(value >= prev);
        prev = value;
    }
}
