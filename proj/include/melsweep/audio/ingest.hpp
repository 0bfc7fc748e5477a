#pragma once

#include <optional>
#include <vector>

#include "melsweep/audio/types.hpp"

namespace melsweep::audio {

// Cuts a clip into consecutive non-overlapping windows of
// cfg.segment_seconds. The final remainder is kept iff it is at least
// cfg.min_keep_seconds long. A clip shorter than one window becomes a single
// segment under the same rule.
std::vector<Segment> segment_clip(const AudioClip& clip, const IngestConfig& cfg);

// Energy-based silence trimming. Frame-wise RMS level in dBFS over
// non-overlapping cfg.silence_frame_ms frames; frames strictly below
// mean(dB) - std(dB) are dropped and the survivors concatenated. Returns
// nullopt (discard) when the trimmed segment is shorter than
// cfg.min_keep_seconds, or when the segment is all zero.
std::optional<Segment> remove_silence(const Segment& seg, const IngestConfig& cfg);

// segment_clip then remove_silence on each window, dropping discards.
std::vector<Segment> ingest_clip(const AudioClip& clip, const IngestConfig& cfg);

}  // namespace melsweep::audio
