#include "melsweep/audio/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

namespace melsweep::audio {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatIeeeFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

class ByteReader {
public:
    explicit ByteReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    bool has(std::size_t count) const { return pos_ + count <= bytes_.size(); }
    std::size_t pos() const { return pos_; }
    void seek(std::size_t pos) { pos_ = pos; }

    std::uint32_t u32() {
        require(4, "truncated chunk header");
        std::uint32_t v = static_cast<std::uint32_t>(bytes_[pos_]) |
                          static_cast<std::uint32_t>(bytes_[pos_ + 1]) << 8 |
                          static_cast<std::uint32_t>(bytes_[pos_ + 2]) << 16 |
                          static_cast<std::uint32_t>(bytes_[pos_ + 3]) << 24;
        pos_ += 4;
        return v;
    }

    std::uint16_t u16() {
        require(2, "truncated chunk header");
        std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_] | bytes_[pos_ + 1] << 8);
        pos_ += 2;
        return v;
    }

    std::string tag() {
        require(4, "truncated chunk tag");
        std::string t(reinterpret_cast<const char*>(bytes_.data() + pos_), 4);
        pos_ += 4;
        return t;
    }

    const std::uint8_t* raw(std::size_t count) {
        require(count, "truncated data chunk");
        const std::uint8_t* p = bytes_.data() + pos_;
        pos_ += count;
        return p;
    }

private:
    void require(std::size_t count, const char* what) const {
        if (!has(count)) throw WavFormatError(what);
    }

    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
};

double decode_sample(const std::uint8_t* p, std::uint16_t format, std::uint16_t bits) {
    if (format == kFormatIeeeFloat) {
        std::uint32_t raw = static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
                            static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
        float f;
        std::memcpy(&f, &raw, sizeof(f));
        return static_cast<double>(f);
    }
    switch (bits) {
        case 16: {
            const std::int16_t v = static_cast<std::int16_t>(p[0] | p[1] << 8);
            return v / 32768.0;
        }
        case 24: {
            std::int32_t v = p[0] | p[1] << 8 | p[2] << 16;
            if (v & 0x800000) v |= ~0xFFFFFF;  // sign extend
            return v / 8388608.0;
        }
        case 32: {
            const std::int32_t v = static_cast<std::int32_t>(
                static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
                static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24);
            return v / 2147483648.0;
        }
        default:
            throw UnsupportedCodecError("unsupported PCM bit depth: " + std::to_string(bits));
    }
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 24));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

}  // namespace

AudioClip decode_wav(const std::vector<std::uint8_t>& bytes, std::string source_id) {
    ByteReader r(bytes);
    if (r.tag() != "RIFF") throw WavFormatError("not a RIFF container");
    r.u32();  // riff size, unreliable in the wild; chunk sizes are checked instead
    if (r.tag() != "WAVE") throw WavFormatError("not a WAVE file");

    bool have_fmt = false;
    std::uint16_t format = 0;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t bits = 0;
    const std::uint8_t* data = nullptr;
    std::uint32_t data_size = 0;

    while (r.has(8)) {
        const std::string tag = r.tag();
        const std::uint32_t size = r.u32();
        if (tag == "fmt ") {
            if (size < 16) throw WavFormatError("fmt chunk too small");
            const std::size_t chunk_start = r.pos();
            format = r.u16();
            channels = r.u16();
            sample_rate = r.u32();
            r.u32();  // byte rate
            r.u16();  // block align
            bits = r.u16();
            if (format == kFormatExtensible) {
                if (size < 40) throw WavFormatError("extensible fmt chunk too small");
                r.u16();                        // extension size
                r.u16();                        // valid bits
                r.u32();                        // channel mask
                format = r.u16();               // first two bytes of the subformat GUID
            }
            r.seek(chunk_start + size + (size & 1));
            have_fmt = true;
        } else if (tag == "data") {
            data = r.raw(size);
            data_size = size;
            break;
        } else {
            r.raw(size + (size & 1));  // skip unknown chunk, throws if truncated
        }
    }

    if (!have_fmt) throw WavFormatError("missing fmt chunk");
    if (data == nullptr) throw WavFormatError("missing data chunk");
    if (format != kFormatPcm && format != kFormatIeeeFloat)
        throw UnsupportedCodecError("unsupported format tag: " + std::to_string(format));
    if (format == kFormatIeeeFloat && bits != 32)
        throw UnsupportedCodecError("only 32-bit float WAV is supported");
    if (format == kFormatPcm && bits != 16 && bits != 24 && bits != 32)
        throw UnsupportedCodecError("unsupported PCM bit depth: " + std::to_string(bits));
    if (channels != 1 && channels != 2)
        throw UnsupportedCodecError("unsupported channel count: " + std::to_string(channels));
    if (sample_rate == 0) throw WavFormatError("sample rate is zero");

    const std::size_t bytes_per_sample = bits / 8;
    const std::size_t frame_bytes = bytes_per_sample * channels;
    if (frame_bytes == 0 || data_size % frame_bytes != 0)
        throw WavFormatError("data chunk size is not a whole number of frames");
    const std::size_t frame_count = data_size / frame_bytes;

    AudioClip clip;
    clip.sample_rate = static_cast<int>(sample_rate);
    clip.source_id = std::move(source_id);
    clip.samples.resize(frame_count);
    for (std::size_t i = 0; i < frame_count; ++i) {
        const std::uint8_t* frame = data + i * frame_bytes;
        double acc = 0.0;
        for (std::uint16_t c = 0; c < channels; ++c) {
            acc += decode_sample(frame + c * bytes_per_sample, format, bits);
        }
        double s = acc / channels;
        if (!std::isfinite(s)) s = 0.0;
        clip.samples[i] = std::clamp(s, -1.0, 1.0);
    }
    return clip;
}

AudioClip load_wav(const std::filesystem::path& path, std::string source_id) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw WavFormatError("cannot open file: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (source_id.empty()) source_id = path.stem().string();
    return decode_wav(bytes, std::move(source_id));
}

std::vector<std::uint8_t> encode_wav16(const AudioClip& clip) {
    const std::uint32_t data_size = static_cast<std::uint32_t>(clip.samples.size() * 2);
    std::vector<std::uint8_t> out;
    out.reserve(44 + data_size);

    const auto put_tag = [&out](const char* t) { out.insert(out.end(), t, t + 4); };
    put_tag("RIFF");
    put_u32(out, 36 + data_size);
    put_tag("WAVE");
    put_tag("fmt ");
    put_u32(out, 16);
    put_u16(out, kFormatPcm);
    put_u16(out, 1);  // mono
    put_u32(out, static_cast<std::uint32_t>(clip.sample_rate));
    put_u32(out, static_cast<std::uint32_t>(clip.sample_rate) * 2);
    put_u16(out, 2);   // block align
    put_u16(out, 16);  // bits
    put_tag("data");
    put_u32(out, data_size);

    for (const double s : clip.samples) {
        const double scaled = std::round(s * 32768.0);
        const auto v = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
        put_u16(out, static_cast<std::uint16_t>(v));
    }
    return out;
}

void save_wav16(const std::filesystem::path& path, const AudioClip& clip) {
    const auto bytes = encode_wav16(clip);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw WavFormatError("cannot write file: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace melsweep::audio
