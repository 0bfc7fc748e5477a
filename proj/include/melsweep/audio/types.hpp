#pragma once

#include <string>
#include <vector>

namespace melsweep::audio {

// Mono time-domain signal, samples normalized to [-1, 1].
struct AudioClip {
    std::vector<double> samples;
    int sample_rate = 0;
    std::string source_id;

    double duration_seconds() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

// One fixed-length window cut from a clip. `index` is the window position
// in the parent, kept stable even when neighbouring windows are discarded.
struct Segment {
    std::vector<double> samples;
    int sample_rate = 0;
    std::string parent_id;
    int index = 0;

    std::string id() const { return parent_id + "#" + std::to_string(index); }
    double duration_seconds() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

struct IngestConfig {
    int target_sample_rate = 16000;
    double segment_seconds = 3.0;
    double min_keep_seconds = 1.0;
    double silence_frame_ms = 25.0;
};

}  // namespace melsweep::audio
