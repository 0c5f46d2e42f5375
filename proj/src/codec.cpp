#include "eodl/codec.hpp"

#include <algorithm>
#include <cstring>
#include <set>
#include <stdexcept>

namespace eodl {

namespace {

constexpr char MSP_MAGIC[4] = {'M', 'S', 'P', '1'};
constexpr std::size_t HEADER_BYTES = 4 + 4 + 4 + 4 + 1 + 3 + 4;

void append_u32_le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

void append_u16_le(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

class Reader {
public:
    explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    std::uint32_t u32() {
        need(4);
        const std::uint32_t v = static_cast<std::uint32_t>(bytes_[pos_]) |
                                static_cast<std::uint32_t>(bytes_[pos_ + 1]) << 8 |
                                static_cast<std::uint32_t>(bytes_[pos_ + 2]) << 16 |
                                static_cast<std::uint32_t>(bytes_[pos_ + 3]) << 24;
        pos_ += 4;
        return v;
    }
    std::uint16_t u16() {
        need(2);
        const std::uint16_t v = static_cast<std::uint16_t>(
            bytes_[pos_] | static_cast<std::uint16_t>(bytes_[pos_ + 1]) << 8);
        pos_ += 2;
        return v;
    }
    std::uint8_t u8() {
        need(1);
        return bytes_[pos_++];
    }
    bool exhausted() const { return pos_ == bytes_.size(); }

private:
    void need(std::size_t n) {
        if (pos_ + n > bytes_.size()) throw std::runtime_error("truncated stream");
    }
    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

std::uint64_t bits_per_pixel(std::uint32_t bands, std::uint32_t bit_depth) {
    if (bands == 0) throw std::invalid_argument("band count must be positive");
    if (bit_depth == 0) throw std::invalid_argument("bit depth must be positive");
    return static_cast<std::uint64_t>(bands) * bit_depth + 32;
}

std::vector<std::uint8_t> encode(const MultiSpectralImage& acquired,
                                 const SelectionResult& selection) {
    acquired.validate();
    if (acquired.height > 65536 || acquired.width > 65536) {
        throw std::invalid_argument("payload coordinates are 16-bit; image side exceeds 65536");
    }

    std::vector<std::pair<std::uint32_t, std::uint32_t>> coords = selection.selected;
    std::sort(coords.begin(), coords.end());
    if (std::adjacent_find(coords.begin(), coords.end()) != coords.end()) {
        throw std::invalid_argument("selection contains duplicate coordinates");
    }
    for (const auto& [r, c] : coords) {
        if (r >= acquired.height || c >= acquired.width) {
            throw std::invalid_argument("selection coordinate out of range");
        }
    }

    std::vector<std::uint8_t> out;
    out.reserve(HEADER_BYTES +
                coords.size() * (4 + static_cast<std::size_t>(acquired.bands) *
                                         (acquired.bit_depth / 8)));
    out.insert(out.end(), MSP_MAGIC, MSP_MAGIC + 4);
    append_u32_le(out, acquired.height);
    append_u32_le(out, acquired.width);
    append_u32_le(out, acquired.bands);
    out.push_back(acquired.bit_depth);
    out.insert(out.end(), {0, 0, 0});
    append_u32_le(out, static_cast<std::uint32_t>(coords.size()));

    for (const auto& [r, c] : coords) {
        append_u16_le(out, static_cast<std::uint16_t>(r));
        append_u16_le(out, static_cast<std::uint16_t>(c));
        for (std::uint32_t b = 0; b < acquired.bands; ++b) {
            const std::uint16_t v = acquired.at(r, c, b);
            if (acquired.bit_depth == 8) {
                out.push_back(static_cast<std::uint8_t>(v));
            } else {
                append_u16_le(out, v);
            }
        }
    }
    return out;
}

Payload decode(const std::vector<std::uint8_t>& bytes) {
    Reader reader(bytes);
    char magic[4];
    for (char& ch : magic) ch = static_cast<char>(reader.u8());
    if (std::memcmp(magic, MSP_MAGIC, 4) != 0) {
        throw std::runtime_error("magic mismatch: not an MSP payload");
    }

    Payload payload;
    payload.height = reader.u32();
    payload.width = reader.u32();
    payload.bands = reader.u32();
    payload.bit_depth = reader.u8();
    reader.u8();
    reader.u8();
    reader.u8();
    if (payload.bit_depth != 8 && payload.bit_depth != 16) {
        throw std::runtime_error("unsupported payload bit depth");
    }
    if (payload.height == 0 || payload.width == 0 || payload.bands == 0) {
        throw std::runtime_error("payload header has a zero dimension");
    }

    const std::uint32_t count = reader.u32();
    const std::size_t record_bytes =
        4 + static_cast<std::size_t>(payload.bands) * (payload.bit_depth / 8);
    if (bytes.size() < HEADER_BYTES + count * record_bytes) {
        throw std::runtime_error("truncated stream");
    }
    payload.entries.reserve(count);
    std::set<std::pair<std::uint16_t, std::uint16_t>> seen;
    for (std::uint32_t i = 0; i < count; ++i) {
        Payload::Entry entry;
        entry.row = reader.u16();
        entry.col = reader.u16();
        if (entry.row >= payload.height || entry.col >= payload.width) {
            throw std::runtime_error("payload coordinate out of range");
        }
        if (!seen.emplace(entry.row, entry.col).second) {
            throw std::runtime_error("duplicate payload coordinate");
        }
        entry.values.resize(payload.bands);
        for (std::uint32_t b = 0; b < payload.bands; ++b) {
            // a u8/u16 read can never exceed its bit depth, so the value
            // invariant holds by construction
            entry.values[b] = payload.bit_depth == 8 ? reader.u8() : reader.u16();
        }
        payload.entries.push_back(std::move(entry));
    }
    if (!reader.exhausted()) throw std::runtime_error("trailing bytes after payload");
    return payload;
}

MultiSpectralImage reconstruct(const MultiSpectralImage& reference, const Payload& payload) {
    reference.validate();
    if (payload.height != reference.height || payload.width != reference.width ||
        payload.bands != reference.bands || payload.bit_depth != reference.bit_depth) {
        throw std::invalid_argument("payload header does not match the reference image");
    }
    MultiSpectralImage out = reference;
    for (const auto& entry : payload.entries) {
        for (std::uint32_t b = 0; b < payload.bands; ++b) {
            out.set(entry.row, entry.col, b, entry.values[b]);
        }
    }
    return out;
}

}  // namespace eodl
