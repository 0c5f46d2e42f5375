#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "eodl/numeric.hpp"
#include "eodl/raster.hpp"

using namespace eodl;
namespace fs = std::filesystem;

namespace {

fs::path test_dir() {
    const auto dir = fs::temp_directory_path() / "eodl_raster_test";
    fs::create_directories(dir);
    return dir;
}

MultiSpectralImage random_image(std::uint64_t seed, std::uint32_t h, std::uint32_t w,
                                std::uint32_t d, std::uint8_t depth) {
    DeterministicRng rng(seed);
    MultiSpectralImage img = MultiSpectralImage::zeros(h, w, d, depth);
    for (auto& s : img.samples) {
        s = static_cast<std::uint16_t>(rng.next_below(img.max_value() + 1ull));
    }
    return img;
}

std::vector<char> file_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

double band_mean(const NormalizedImage& img, std::uint32_t band) {
    CompensatedSum sum;
    const std::size_t plane = img.pixel_count();
    for (std::size_t i = 0; i < plane; ++i) sum.add(img.samples[band * plane + i]);
    return sum.value() / static_cast<double>(plane);
}

double band_std(const NormalizedImage& img, std::uint32_t band) {
    const double mean = band_mean(img, band);
    CompensatedSum sq;
    const std::size_t plane = img.pixel_count();
    for (std::size_t i = 0; i < plane; ++i) {
        const double d = img.samples[band * plane + i] - mean;
        sq.add(d * d);
    }
    return std::sqrt(sq.value() / static_cast<double>(plane));
}

}  // namespace

TEST_CASE("msr round-trip is bit exact") {
    const auto img = random_image(11, 2, 2, 4, 16);
    const auto path = test_dir() / "roundtrip.msr";
    save_raster(img, path);
    const auto loaded = load_raster(path);
    CHECK(loaded.same_shape(img));
    CHECK(loaded.samples == img.samples);

    // save -> load -> save produces byte-identical files
    const auto path2 = test_dir() / "roundtrip2.msr";
    save_raster(loaded, path2);
    CHECK(file_bytes(path) == file_bytes(path2));
}

TEST_CASE("msr container layout is bit exact against the golden bytes") {
    MultiSpectralImage img = MultiSpectralImage::zeros(1, 2, 1, 8);
    img.samples = {7, 9};
    const auto path = test_dir() / "golden.msr";
    save_raster(img, path);
    const std::vector<char> expected{
        'M', 'S', 'R', '1',
        1, 0, 0, 0,   // height
        2, 0, 0, 0,   // width
        1, 0, 0, 0,   // bands
        8, 0, 0, 0,   // bit depth + reserved
        7, 9,
    };
    CHECK(file_bytes(path) == expected);

    // 16-bit samples are little-endian
    MultiSpectralImage wide = MultiSpectralImage::zeros(1, 1, 1, 16);
    wide.samples = {0x0102};
    save_raster(wide, path);
    const auto bytes = file_bytes(path);
    REQUIRE(bytes.size() == 22);
    CHECK(bytes[20] == 0x02);
    CHECK(bytes[21] == 0x01);
}

TEST_CASE("8-bit boundary value and minimal image survive the container") {
    MultiSpectralImage img = MultiSpectralImage::zeros(1, 1, 1, 8);
    img.samples[0] = 255;
    const auto path = test_dir() / "tiny.msr";
    save_raster(img, path);
    const auto loaded = load_raster(path);
    CHECK(loaded.samples[0] == 255);
    CHECK(loaded.bit_depth == 8);
}

TEST_CASE("payload length mismatches are rejected") {
    const auto img = random_image(3, 4, 4, 2, 16);
    const auto path = test_dir() / "mismatch.msr";
    save_raster(img, path);

    auto bytes = file_bytes(path);
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() - 6));
    }
    CHECK_THROWS_WITH_AS(load_raster(path), doctest::Contains("sample count mismatch"),
                         std::runtime_error);

    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.put(0);  // trailing garbage
    }
    CHECK_THROWS_WITH_AS(load_raster(path), doctest::Contains("sample count mismatch"),
                         std::runtime_error);
}

TEST_CASE("malformed headers are rejected") {
    const auto path = test_dir() / "badmagic.msr";
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << "NOPE" << std::string(16, '\0');
    }
    CHECK_THROWS_WITH_AS(load_raster(path), doctest::Contains("magic"), std::runtime_error);
    CHECK_THROWS_AS(load_raster(test_dir() / "does_not_exist.msr"), std::runtime_error);
}

TEST_CASE("saving into a directory path fails cleanly") {
    const auto img = random_image(5, 2, 2, 1, 8);
    CHECK_THROWS_AS(save_raster(img, test_dir()), std::runtime_error);
}

TEST_CASE("select_bands keeps the chosen planes in order") {
    const auto img = random_image(7, 3, 5, 13, 16);
    const std::vector<std::uint32_t> indices{3, 2, 1, 7};
    const auto out = select_bands(img, indices);
    CHECK(out.bands == 4);
    CHECK(out.height == img.height);
    for (std::uint32_t r = 0; r < img.height; ++r) {
        for (std::uint32_t c = 0; c < img.width; ++c) {
            for (std::uint32_t k = 0; k < indices.size(); ++k) {
                CHECK(out.at(r, c, k) == img.at(r, c, indices[k]));
            }
        }
    }

    // identity selection
    std::vector<std::uint32_t> all;
    for (std::uint32_t k = 0; k < img.bands; ++k) all.push_back(k);
    CHECK(select_bands(img, all).samples == img.samples);

    CHECK_THROWS_AS(select_bands(img, {13}), std::invalid_argument);
    CHECK_THROWS_AS(select_bands(img, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(select_bands(img, {}), std::invalid_argument);
}

TEST_CASE("z-score normalization matches the hand evaluation") {
    MultiSpectralImage img = MultiSpectralImage::zeros(1, 3, 1, 8);
    img.samples = {1, 2, 3};
    const NormalizedImage norm = normalize_zscore(img);
    CHECK(norm.samples[0] == doctest::Approx(-1.2247).epsilon(1e-4));
    CHECK(norm.samples[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(norm.samples[2] == doctest::Approx(1.2247).epsilon(1e-4));
    CHECK(norm.band_stats[0].mean == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(norm.band_stats[0].stddev ==
          doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("constant bands normalize to zeros with zero recorded stddev") {
    MultiSpectralImage img = MultiSpectralImage::zeros(2, 2, 2, 8);
    for (std::size_t i = 0; i < 4; ++i) img.samples[i] = 5;       // band 0 constant
    img.samples[4] = 1; img.samples[5] = 9; img.samples[6] = 2;   // band 1 varies
    img.samples[7] = 7;
    const NormalizedImage norm = normalize_zscore(img);
    for (std::size_t i = 0; i < 4; ++i) CHECK(norm.samples[i] == 0.0);
    CHECK(norm.band_stats[0].stddev == 0.0);
    CHECK(norm.band_stats[1].stddev > 0.0);
}

TEST_CASE("normalized bands have zero mean and unit deviation") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const auto img = random_image(seed, 32, 32, 4, 16);
        const NormalizedImage norm = normalize_zscore(img);
        for (std::uint32_t b = 0; b < img.bands; ++b) {
            CHECK(std::abs(band_mean(norm, b)) < 1e-9);
            CHECK(std::abs(band_std(norm, b) - 1.0) < 1e-6);
        }
    }
}

TEST_CASE("synthetic pairs are deterministic with an exact mask") {
    const auto a = synth_pair(42, 16, 16, 3, 0.25);
    const auto b = synth_pair(42, 16, 16, 3, 0.25);
    CHECK(a.pair.reference.samples == b.pair.reference.samples);
    CHECK(a.pair.acquired.samples == b.pair.acquired.samples);
    CHECK(a.change_mask == b.change_mask);

    // cardinality is exact
    std::size_t flagged = 0;
    for (auto f : a.change_mask) flagged += f;
    CHECK(flagged == 64);  // round(0.25 * 256)

    // the mask flags exactly the differing pixels
    for (std::uint32_t r = 0; r < 16; ++r) {
        for (std::uint32_t c = 0; c < 16; ++c) {
            bool differs = false;
            for (std::uint32_t k = 0; k < 3; ++k) {
                differs = differs ||
                          a.pair.reference.at(r, c, k) != a.pair.acquired.at(r, c, k);
            }
            CHECK(differs == (a.change_mask[r * 16 + c] == 1));
        }
    }
}

TEST_CASE("synthetic pair fraction extremes") {
    const auto none = synth_pair(9, 8, 8, 2, 0.0);
    CHECK(none.pair.reference.samples == none.pair.acquired.samples);
    for (auto f : none.change_mask) CHECK(f == 0);

    const auto all = synth_pair(9, 8, 8, 2, 1.0);
    for (std::uint32_t r = 0; r < 8; ++r) {
        for (std::uint32_t c = 0; c < 8; ++c) {
            bool differs = false;
            for (std::uint32_t k = 0; k < 2; ++k) {
                differs = differs ||
                          all.pair.reference.at(r, c, k) != all.pair.acquired.at(r, c, k);
            }
            CHECK(differs);
        }
    }
}

TEST_CASE("pgm round-trip preserves samples for both depths") {
    for (std::uint8_t depth : {std::uint8_t{8}, std::uint8_t{16}}) {
        const auto img = random_image(20 + depth, 5, 7, 1, depth);
        const auto path = test_dir() / "band.pgm";
        save_band_pgm(img, 0, path);
        const auto loaded = load_band_pgm(path);
        CHECK(loaded.bit_depth == depth);
        CHECK(loaded.samples == img.samples);
    }
}

TEST_CASE("stacked pgm bands rebuild a raster") {
    const auto img = random_image(33, 4, 6, 3, 16);
    std::vector<MultiSpectralImage> planes;
    for (std::uint32_t k = 0; k < img.bands; ++k) {
        const auto path = test_dir() / ("plane" + std::to_string(k) + ".pgm");
        save_band_pgm(img, k, path);
        planes.push_back(load_band_pgm(path));
    }
    const auto stacked = stack_bands(planes);
    CHECK(stacked.samples == img.samples);
}

TEST_CASE("ppm export writes the expected header and size") {
    const auto img = random_image(44, 3, 4, 5, 16);
    const auto path = test_dir() / "view.ppm";
    save_ppm(img, 2, 1, 0, path);
    const auto bytes = file_bytes(path);
    const std::string header(bytes.begin(), bytes.begin() + 11);
    CHECK(header == "P6\n4 3\n255\n");
    CHECK(bytes.size() == 11 + 3u * 4u * 3u);
}
