#include <fstream>
#include <unordered_map>

#include "omnirep/imaging.hpp"

namespace omnirep {

namespace {

class ByteWriter {
public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(unsigned v) {
        out_.push_back(std::uint8_t(v & 0xff));
        out_.push_back(std::uint8_t((v >> 8) & 0xff));
    }
    void bytes(std::string_view s) { out_.insert(out_.end(), s.begin(), s.end()); }
    std::vector<std::uint8_t>& buffer() { return out_; }

private:
    std::vector<std::uint8_t> out_;
};

// Packs variable-width codes LSB-first and flushes them as 255-byte data sub-blocks.
class CodeStream {
public:
    explicit CodeStream(ByteWriter& w) : w_(w) {}

    void put(unsigned code, int width) {
        acc_ |= std::uint32_t(code) << bits_;
        bits_ += width;
        while (bits_ >= 8) {
            push(std::uint8_t(acc_ & 0xff));
            acc_ >>= 8;
            bits_ -= 8;
        }
    }

    void finish() {
        if (bits_ > 0) push(std::uint8_t(acc_ & 0xff));
        acc_ = 0;
        bits_ = 0;
        flush_block();
        w_.u8(0);
    }

private:
    void push(std::uint8_t b) {
        block_.push_back(b);
        if (block_.size() == 255) flush_block();
    }
    void flush_block() {
        if (block_.empty()) return;
        w_.u8(std::uint8_t(block_.size()));
        w_.buffer().insert(w_.buffer().end(), block_.begin(), block_.end());
        block_.clear();
    }

    ByteWriter& w_;
    std::vector<std::uint8_t> block_;
    std::uint32_t acc_ = 0;
    int bits_ = 0;
};

constexpr unsigned kMaxCode = 4095;

void lzw_encode(ByteWriter& w, const std::vector<std::uint8_t>& indices, int min_code_size) {
    const unsigned clear = 1u << min_code_size;
    const unsigned eoi = clear + 1;
    w.u8(std::uint8_t(min_code_size));
    CodeStream codes(w);

    std::unordered_map<std::uint32_t, unsigned> dict;
    int code_size = min_code_size + 1;
    unsigned max_code = eoi;
    auto reset = [&] {
        dict.clear();
        code_size = min_code_size + 1;
        max_code = eoi;
    };
    auto key = [](unsigned prefix, std::uint8_t next) { return (std::uint32_t(prefix) << 8) | next; };

    codes.put(clear, code_size);
    unsigned current = indices[0];
    for (std::size_t i = 1; i < indices.size(); ++i) {
        const std::uint8_t next = indices[i];
        if (auto it = dict.find(key(current, next)); it != dict.end()) {
            current = it->second;
            continue;
        }
        codes.put(current, code_size);
        dict.emplace(key(current, next), ++max_code);
        if (max_code >= (1u << code_size) && code_size < 12) ++code_size;
        if (max_code == kMaxCode) {
            codes.put(clear, code_size);
            reset();
        }
        current = next;
    }
    codes.put(current, code_size);
    codes.put(eoi, code_size);
    codes.finish();
}

int table_bits(std::size_t colors) {
    int bits = 1;
    while ((std::size_t{1} << bits) < colors) ++bits;
    return bits;
}

}  // namespace

std::vector<std::uint8_t> encode_gif(std::span<const PalettedImage> frames, int frame_delay_cs) {
    if (frames.empty()) throw ImageError("animated GIF needs at least one frame");
    if (frame_delay_cs < 0 || frame_delay_cs > 0xffff) throw ImageError("frame delay out of range");
    const int width = frames[0].width;
    const int height = frames[0].height;
    if (width > 0xffff || height > 0xffff) throw ImageError("image too large for GIF");
    for (const auto& f : frames) {
        f.validate();
        if (f.width != width || f.height != height)
            throw ImageError("frame dimension mismatch: " + std::to_string(f.width) + "x" + std::to_string(f.height) +
                             " vs " + std::to_string(width) + "x" + std::to_string(height));
    }

    ByteWriter w;
    w.bytes("GIF89a");
    w.u16(unsigned(width));
    w.u16(unsigned(height));
    w.u8(0x70);  // no global color table, 8-bit color resolution
    w.u8(0);
    w.u8(0);

    // NETSCAPE2.0: loop forever
    w.u8(0x21);
    w.u8(0xff);
    w.u8(11);
    w.bytes("NETSCAPE2.0");
    w.u8(3);
    w.u8(1);
    w.u16(0);
    w.u8(0);

    for (const auto& f : frames) {
        w.u8(0x21);  // graphic control extension
        w.u8(0xf9);
        w.u8(4);
        w.u8(0x04);  // disposal: leave in place
        w.u16(unsigned(frame_delay_cs));
        w.u8(0);
        w.u8(0);

        const int bits = table_bits(f.palette.size());
        w.u8(0x2c);
        w.u16(0);
        w.u16(0);
        w.u16(unsigned(width));
        w.u16(unsigned(height));
        w.u8(std::uint8_t(0x80 | (bits - 1)));
        for (std::size_t i = 0; i < (std::size_t{1} << bits); ++i) {
            const Rgb c = i < f.palette.size() ? f.palette[i] : Rgb{};
            w.u8(c.r);
            w.u8(c.g);
            w.u8(c.b);
        }
        lzw_encode(w, f.indices, std::max(2, bits));
    }
    w.u8(0x3b);
    return std::move(w.buffer());
}

void assemble_gif(std::span<const PalettedImage> frames, const std::filesystem::path& path, int frame_delay_cs) {
    const auto bytes = encode_gif(frames, frame_delay_cs);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ImageError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    out.close();
    if (!out) throw ImageError("failed writing GIF " + path.string());
}

}  // namespace omnirep
