#include "eodl/raster.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "eodl/numeric.hpp"

namespace eodl {

namespace {

constexpr char MSR_MAGIC[4] = {'M', 'S', 'R', '1'};

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

void write_u32_le(std::ostream& out, std::uint32_t v) {
    const unsigned char b[4] = {
        static_cast<unsigned char>(v & 0xff),
        static_cast<unsigned char>((v >> 8) & 0xff),
        static_cast<unsigned char>((v >> 16) & 0xff),
        static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32_le(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void MultiSpectralImage::validate() const {
    require(height > 0 && width > 0 && bands > 0, "raster dimensions must be positive");
    require(bit_depth == 8 || bit_depth == 16, "bit depth must be 8 or 16");
    require(samples.size() == sample_count(), "sample count mismatch");
    const std::uint32_t cap = max_value();
    for (std::uint16_t s : samples) {
        require(s <= cap, "sample exceeds bit depth");
    }
}

MultiSpectralImage MultiSpectralImage::zeros(std::uint32_t height, std::uint32_t width,
                                             std::uint32_t bands, std::uint8_t bit_depth) {
    MultiSpectralImage img;
    img.height = height;
    img.width = width;
    img.bands = bands;
    img.bit_depth = bit_depth;
    img.samples.assign(static_cast<std::size_t>(height) * width * bands, 0);
    img.validate();
    return img;
}

void ImagePair::validate() const {
    reference.validate();
    acquired.validate();
    require(reference.same_shape(acquired),
            "reference and acquired images must agree in height, width, bands and bit depth");
}

// ---------------------------------------------------------------------
// MSR container
// ---------------------------------------------------------------------

MultiSpectralImage load_raster(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open raster file: " + path.string());

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, MSR_MAGIC, 4) != 0) {
        throw std::runtime_error("malformed header: bad MSR magic in " + path.string());
    }

    MultiSpectralImage img;
    img.height = read_u32_le(in);
    img.width = read_u32_le(in);
    img.bands = read_u32_le(in);
    unsigned char depth_and_reserved[4];
    in.read(reinterpret_cast<char*>(depth_and_reserved), 4);
    if (!in) throw std::runtime_error("malformed header: truncated MSR header");
    img.bit_depth = depth_and_reserved[0];
    if (img.bit_depth != 8 && img.bit_depth != 16) {
        throw std::runtime_error("malformed header: unsupported bit depth");
    }
    if (img.height == 0 || img.width == 0 || img.bands == 0) {
        throw std::runtime_error("malformed header: zero dimension");
    }

    const std::size_t n = img.sample_count();
    img.samples.resize(n);
    if (img.bit_depth == 8) {
        std::vector<unsigned char> raw(n);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in.gcount()) != n) {
            throw std::runtime_error("sample count mismatch in " + path.string());
        }
        for (std::size_t i = 0; i < n; ++i) img.samples[i] = raw[i];
    } else {
        std::vector<unsigned char> raw(n * 2);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n * 2));
        if (static_cast<std::size_t>(in.gcount()) != n * 2) {
            throw std::runtime_error("sample count mismatch in " + path.string());
        }
        for (std::size_t i = 0; i < n; ++i) {
            img.samples[i] = static_cast<std::uint16_t>(raw[2 * i]) |
                             static_cast<std::uint16_t>(raw[2 * i + 1]) << 8;
        }
    }
    // any trailing bytes mean the header undercounts the payload
    if (in.peek() != std::char_traits<char>::eof()) {
        throw std::runtime_error("sample count mismatch in " + path.string());
    }
    img.validate();
    return img;
}

void save_raster(const MultiSpectralImage& image, const std::filesystem::path& path) {
    image.validate();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write raster file: " + path.string());

    out.write(MSR_MAGIC, 4);
    write_u32_le(out, image.height);
    write_u32_le(out, image.width);
    write_u32_le(out, image.bands);
    const unsigned char depth_and_reserved[4] = {image.bit_depth, 0, 0, 0};
    out.write(reinterpret_cast<const char*>(depth_and_reserved), 4);

    if (image.bit_depth == 8) {
        std::vector<unsigned char> raw(image.samples.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            raw[i] = static_cast<unsigned char>(image.samples[i]);
        }
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size()));
    } else {
        std::vector<unsigned char> raw(image.samples.size() * 2);
        for (std::size_t i = 0; i < image.samples.size(); ++i) {
            raw[2 * i] = static_cast<unsigned char>(image.samples[i] & 0xff);
            raw[2 * i + 1] = static_cast<unsigned char>(image.samples[i] >> 8);
        }
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size()));
    }
    if (!out) throw std::runtime_error("I/O error writing " + path.string());
}

// ---------------------------------------------------------------------
// PGM / PPM interop
// ---------------------------------------------------------------------

namespace {

int read_pnm_token(std::istream& in) {
    // skips whitespace and '#' comments
    while (true) {
        int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int value = 0;
    in >> value;
    return value;
}

}  // namespace

MultiSpectralImage load_band_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open PGM file: " + path.string());
    std::string magic;
    in >> magic;
    if (magic != "P5") throw std::runtime_error("not a binary PGM (P5): " + path.string());

    MultiSpectralImage img;
    img.width = static_cast<std::uint32_t>(read_pnm_token(in));
    img.height = static_cast<std::uint32_t>(read_pnm_token(in));
    const int maxval = read_pnm_token(in);
    in.get();  // single whitespace before the raster
    if (maxval <= 0 || maxval > 65535) {
        throw std::runtime_error("unsupported PGM maxval in " + path.string());
    }
    img.bands = 1;
    img.bit_depth = maxval > 255 ? 16 : 8;

    const std::size_t n = img.sample_count();
    img.samples.resize(n);
    if (img.bit_depth == 8) {
        std::vector<unsigned char> raw(n);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in.gcount()) != n) {
            throw std::runtime_error("truncated PGM payload in " + path.string());
        }
        for (std::size_t i = 0; i < n; ++i) img.samples[i] = raw[i];
    } else {
        std::vector<unsigned char> raw(n * 2);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n * 2));
        if (static_cast<std::size_t>(in.gcount()) != n * 2) {
            throw std::runtime_error("truncated PGM payload in " + path.string());
        }
        // PGM stores 16-bit big-endian
        for (std::size_t i = 0; i < n; ++i) {
            img.samples[i] = static_cast<std::uint16_t>(raw[2 * i]) << 8 |
                             static_cast<std::uint16_t>(raw[2 * i + 1]);
        }
    }
    img.validate();
    return img;
}

void save_band_pgm(const MultiSpectralImage& image, std::uint32_t band,
                   const std::filesystem::path& path) {
    image.validate();
    require(band < image.bands, "band index out of range");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write PGM file: " + path.string());
    out << "P5\n" << image.width << " " << image.height << "\n"
        << image.max_value() << "\n";
    const std::size_t base = static_cast<std::size_t>(band) * image.pixel_count();
    if (image.bit_depth == 8) {
        for (std::size_t i = 0; i < image.pixel_count(); ++i) {
            out.put(static_cast<char>(image.samples[base + i]));
        }
    } else {
        for (std::size_t i = 0; i < image.pixel_count(); ++i) {
            const std::uint16_t v = image.samples[base + i];
            out.put(static_cast<char>(v >> 8));
            out.put(static_cast<char>(v & 0xff));
        }
    }
    if (!out) throw std::runtime_error("I/O error writing " + path.string());
}

void save_ppm(const MultiSpectralImage& image, std::uint32_t red_band,
              std::uint32_t green_band, std::uint32_t blue_band,
              const std::filesystem::path& path) {
    image.validate();
    require(red_band < image.bands && green_band < image.bands && blue_band < image.bands,
            "band index out of range");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write PPM file: " + path.string());
    out << "P6\n" << image.width << " " << image.height << "\n255\n";
    const std::uint32_t shift = image.bit_depth == 16 ? 8 : 0;
    const std::uint32_t chans[3] = {red_band, green_band, blue_band};
    for (std::uint32_t r = 0; r < image.height; ++r) {
        for (std::uint32_t c = 0; c < image.width; ++c) {
            for (std::uint32_t k : chans) {
                out.put(static_cast<char>(image.at(r, c, k) >> shift));
            }
        }
    }
    if (!out) throw std::runtime_error("I/O error writing " + path.string());
}

MultiSpectralImage stack_bands(const std::vector<MultiSpectralImage>& bands) {
    require(!bands.empty(), "cannot stack an empty band list");
    for (const auto& b : bands) {
        b.validate();
        require(b.bands == 1, "stack_bands expects single-band inputs");
        require(b.height == bands.front().height && b.width == bands.front().width &&
                    b.bit_depth == bands.front().bit_depth,
                "stacked bands must share shape and bit depth");
    }
    MultiSpectralImage out = MultiSpectralImage::zeros(
        bands.front().height, bands.front().width,
        static_cast<std::uint32_t>(bands.size()), bands.front().bit_depth);
    for (std::size_t k = 0; k < bands.size(); ++k) {
        std::copy(bands[k].samples.begin(), bands[k].samples.end(),
                  out.samples.begin() + static_cast<std::ptrdiff_t>(k * out.pixel_count()));
    }
    return out;
}

MultiSpectralImage select_bands(const MultiSpectralImage& image,
                                const std::vector<std::uint32_t>& indices) {
    image.validate();
    require(!indices.empty(), "band index list must not be empty");
    std::unordered_set<std::uint32_t> seen;
    for (std::uint32_t idx : indices) {
        require(idx < image.bands, "band index out of range");
        require(seen.insert(idx).second, "duplicate band index");
    }

    MultiSpectralImage out;
    out.height = image.height;
    out.width = image.width;
    out.bands = static_cast<std::uint32_t>(indices.size());
    out.bit_depth = image.bit_depth;
    out.samples.resize(out.sample_count());
    const std::size_t plane = image.pixel_count();
    for (std::size_t k = 0; k < indices.size(); ++k) {
        const std::size_t src = static_cast<std::size_t>(indices[k]) * plane;
        std::copy(image.samples.begin() + static_cast<std::ptrdiff_t>(src),
                  image.samples.begin() + static_cast<std::ptrdiff_t>(src + plane),
                  out.samples.begin() + static_cast<std::ptrdiff_t>(k * plane));
    }
    return out;
}

NormalizedImage normalize_zscore(const MultiSpectralImage& image) {
    image.validate();
    NormalizedImage out;
    out.height = image.height;
    out.width = image.width;
    out.bands = image.bands;
    out.samples.resize(image.sample_count());
    out.band_stats.resize(image.bands);

    const std::size_t plane = image.pixel_count();
    for (std::uint32_t b = 0; b < image.bands; ++b) {
        const std::size_t base = static_cast<std::size_t>(b) * plane;

        CompensatedSum sum;
        for (std::size_t i = 0; i < plane; ++i) {
            sum.add(static_cast<double>(image.samples[base + i]));
        }
        const double mean = sum.value() / static_cast<double>(plane);

        CompensatedSum sq;
        for (std::size_t i = 0; i < plane; ++i) {
            const double d = static_cast<double>(image.samples[base + i]) - mean;
            sq.add(d * d);
        }
        const double variance = sq.value() / static_cast<double>(plane);
        const double stddev = std::sqrt(variance);

        out.band_stats[b] = BandStats{mean, stddev};
        if (stddev == 0.0) {
            std::fill(out.samples.begin() + static_cast<std::ptrdiff_t>(base),
                      out.samples.begin() + static_cast<std::ptrdiff_t>(base + plane), 0.0);
        } else {
            for (std::size_t i = 0; i < plane; ++i) {
                out.samples[base + i] =
                    (static_cast<double>(image.samples[base + i]) - mean) / stddev;
            }
        }
    }
    return out;
}

SynthResult synth_pair(std::uint64_t seed, std::uint32_t height, std::uint32_t width,
                       std::uint32_t bands, double change_fraction,
                       std::uint8_t bit_depth) {
    require(height > 0 && width > 0 && bands > 0, "raster dimensions must be positive");
    require(change_fraction >= 0.0 && change_fraction <= 1.0,
            "change_fraction must be in [0, 1]");
    require(bit_depth == 8 || bit_depth == 16, "bit depth must be 8 or 16");

    DeterministicRng rng(seed);
    const std::uint32_t cap = (1u << bit_depth) - 1u;

    SynthResult result;
    result.pair.reference = MultiSpectralImage::zeros(height, width, bands, bit_depth);
    for (auto& s : result.pair.reference.samples) {
        s = static_cast<std::uint16_t>(rng.next_below(cap + 1ull));
    }
    result.pair.acquired = result.pair.reference;

    const std::size_t pixels = result.pair.reference.pixel_count();
    const std::size_t changed =
        static_cast<std::size_t>(std::llround(change_fraction * static_cast<double>(pixels)));

    std::vector<std::size_t> order(pixels);
    for (std::size_t i = 0; i < pixels; ++i) order[i] = i;
    rng.shuffle(order);

    result.change_mask.assign(pixels, 0);
    for (std::size_t n = 0; n < changed; ++n) {
        const std::size_t p = order[n];
        result.change_mask[p] = 1;
        // per-pixel magnitude scale so importance ranking has real spread
        const double magnitude = rng.next_double();
        bool differs = false;
        for (std::uint32_t b = 0; b < bands; ++b) {
            const std::size_t idx = static_cast<std::size_t>(b) * pixels + p;
            const double delta =
                (rng.next_double() * 2.0 - 1.0) * magnitude * static_cast<double>(cap);
            const double moved =
                std::clamp(static_cast<double>(result.pair.reference.samples[idx]) + delta,
                           0.0, static_cast<double>(cap));
            const auto v = static_cast<std::uint16_t>(std::llround(moved));
            result.pair.acquired.samples[idx] = v;
            differs = differs || v != result.pair.reference.samples[idx];
        }
        if (!differs) {
            // force a visible change in band 0
            const std::size_t idx = p;
            result.pair.acquired.samples[idx] =
                static_cast<std::uint16_t>(result.pair.reference.samples[idx] ^ 1u);
        }
    }

    result.pair.validate();
    return result;
}

}  // namespace eodl
