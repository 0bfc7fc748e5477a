#include "melsweep/audio/ingest.hpp"

#include <cmath>
#include <stdexcept>

namespace melsweep::audio {

namespace {

// Floor for the frame level so all-quiet frames stay finite (-200 dBFS).
constexpr double kRmsFloor = 1e-10;

// Frames are dropped only when strictly below the threshold; this slack
// keeps constant-level signals (where mean - std degenerates to the level
// itself) stable against last-ulp rounding of the per-frame RMS.
constexpr double kThresholdSlackDb = 1e-9;

double frame_level_db(const double* samples, std::size_t count) {
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += samples[i] * samples[i];
    const double rms = std::sqrt(acc / static_cast<double>(count));
    return 20.0 * std::log10(std::max(rms, kRmsFloor));
}

}  // namespace

std::vector<Segment> segment_clip(const AudioClip& clip, const IngestConfig& cfg) {
    if (clip.samples.empty()) throw std::invalid_argument("segment_clip: empty clip");
    if (clip.sample_rate <= 0) throw std::invalid_argument("segment_clip: bad sample rate");

    const auto window = static_cast<std::size_t>(std::llround(cfg.segment_seconds * clip.sample_rate));
    const auto min_keep = static_cast<std::size_t>(std::llround(cfg.min_keep_seconds * clip.sample_rate));
    if (window == 0) throw std::invalid_argument("segment_clip: segment_seconds too small");

    std::vector<Segment> out;
    const std::size_t total = clip.samples.size();
    int index = 0;
    for (std::size_t start = 0; start < total; start += window, ++index) {
        const std::size_t len = std::min(window, total - start);
        if (len < window && len < min_keep) break;  // drop short remainder
        Segment seg;
        seg.samples.assign(clip.samples.begin() + static_cast<std::ptrdiff_t>(start),
                           clip.samples.begin() + static_cast<std::ptrdiff_t>(start + len));
        seg.sample_rate = clip.sample_rate;
        seg.parent_id = clip.source_id;
        seg.index = index;
        out.push_back(std::move(seg));
    }
    return out;
}

std::optional<Segment> remove_silence(const Segment& seg, const IngestConfig& cfg) {
    if (seg.samples.empty()) throw std::invalid_argument("remove_silence: empty segment");

    bool all_zero = true;
    for (const double s : seg.samples) {
        if (s != 0.0) {
            all_zero = false;
            break;
        }
    }
    if (all_zero) return std::nullopt;

    const auto frame_len = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(cfg.silence_frame_ms / 1000.0 * seg.sample_rate)));
    const std::size_t total = seg.samples.size();

    struct Frame {
        std::size_t start;
        std::size_t len;
        double db;
    };
    std::vector<Frame> frames;
    for (std::size_t start = 0; start < total; start += frame_len) {
        const std::size_t len = std::min(frame_len, total - start);
        frames.push_back({start, len, frame_level_db(seg.samples.data() + start, len)});
    }

    double mean = 0.0;
    for (const auto& f : frames) mean += f.db;
    mean /= static_cast<double>(frames.size());
    double var = 0.0;
    for (const auto& f : frames) var += (f.db - mean) * (f.db - mean);
    var /= static_cast<double>(frames.size());
    const double threshold = mean - std::sqrt(var);

    Segment trimmed;
    trimmed.sample_rate = seg.sample_rate;
    trimmed.parent_id = seg.parent_id;
    trimmed.index = seg.index;
    for (const auto& f : frames) {
        if (f.db < threshold - kThresholdSlackDb) continue;
        trimmed.samples.insert(trimmed.samples.end(),
                               seg.samples.begin() + static_cast<std::ptrdiff_t>(f.start),
                               seg.samples.begin() + static_cast<std::ptrdiff_t>(f.start + f.len));
    }

    if (trimmed.duration_seconds() < cfg.min_keep_seconds) return std::nullopt;
    return trimmed;
}

std::vector<Segment> ingest_clip(const AudioClip& clip, const IngestConfig& cfg) {
    std::vector<Segment> out;
    for (const Segment& seg : segment_clip(clip, cfg)) {
        if (auto trimmed = remove_silence(seg, cfg)) out.push_back(std::move(*trimmed));
    }
    return out;
}

}  // namespace melsweep::audio
