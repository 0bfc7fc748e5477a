#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "melsweep/audio/types.hpp"

namespace melsweep::harness {

// Seeded two-class demo corpus: source-filter synthesized vowel glides.
// Pathological clips (label 1) carry shifted formant envelopes, wider
// formant bandwidths and more aspiration noise. Pitch register encodes the
// group column (M low, F high) and is independent of the label.
struct SynthSpec {
    int clip_count = 200;
    int sample_rate = 16000;
    std::uint64_t seed = 7;
};

struct SynthClip {
    audio::AudioClip clip;
    int label = 0;
    std::string group;
};

SynthClip synth_clip(const SynthSpec& spec, int index);

// Writes clips/<id>.wav files plus a manifest.csv next to them; returns the
// manifest path.
std::filesystem::path generate_corpus(const SynthSpec& spec, const std::filesystem::path& dir);

}  // namespace melsweep::harness
