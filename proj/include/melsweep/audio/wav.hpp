#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "melsweep/audio/types.hpp"

namespace melsweep::audio {

// Malformed container: bad RIFF/WAVE header, missing chunks, truncated data.
class WavFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Structurally valid file using an encoding we do not decode (ADPCM, mp3, ...).
class UnsupportedCodecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Decodes RIFF/WAVE, PCM 16/24/32-bit integer or 32-bit float, 1 or 2
// channels. Stereo is mixed to mono by channel averaging, integer samples
// are scaled by full-scale division (int16 -> s/32768).
AudioClip decode_wav(const std::vector<std::uint8_t>& bytes, std::string source_id = "");

AudioClip load_wav(const std::filesystem::path& path, std::string source_id = "");

// 16-bit PCM mono writer. decode_wav(encode_wav16(...)) is bit-exact for
// samples that came from 16-bit sources.
std::vector<std::uint8_t> encode_wav16(const AudioClip& clip);

void save_wav16(const std::filesystem::path& path, const AudioClip& clip);

}  // namespace melsweep::audio
