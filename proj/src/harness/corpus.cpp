#include "melsweep/harness/corpus.hpp"

#include <array>
#include <cmath>
#include <fstream>

#include "melsweep/audio/wav.hpp"
#include "melsweep/common/rng.hpp"

namespace melsweep::harness {

namespace {

struct Vowel {
    double f1, f2, f3;
};

// Rough adult vowel targets in Hz.
constexpr std::array<Vowel, 4> kVowels = {{
    {800.0, 1200.0, 2500.0},   // a
    {500.0, 1900.0, 2600.0},   // e
    {300.0, 2300.0, 3000.0},   // i
    {500.0, 900.0, 2500.0},    // o
}};

// Two-zero notch, unity gain at DC.
struct AntiResonator {
    double b = 0.0, c = 0.0, gain = 1.0;
    double x1 = 0.0, x2 = 0.0;

    void tune(double freq_hz, double radius, double sample_rate) {
        const double theta = 2.0 * M_PI * freq_hz / sample_rate;
        b = -2.0 * radius * std::cos(theta);
        c = radius * radius;
        gain = 1.0 / (1.0 + b + c);
    }

    double process(double x) {
        const double y = gain * (x + b * x1 + c * x2);
        x2 = x1;
        x1 = x;
        return y;
    }
};

// Two-pole resonator with coefficients refreshed per block.
struct Resonator {
    double b = 0.0, c = 0.0, a = 0.0;
    double y1 = 0.0, y2 = 0.0;

    void tune(double freq_hz, double bandwidth_hz, double sample_rate) {
        const double r = std::exp(-M_PI * bandwidth_hz / sample_rate);
        const double theta = 2.0 * M_PI * freq_hz / sample_rate;
        b = 2.0 * r * std::cos(theta);
        c = -r * r;
        a = 1.0 - b - c;
    }

    double process(double x) {
        const double y = a * x + b * y1 + c * y2;
        y2 = y1;
        y1 = y;
        return y;
    }
};

constexpr double kFloorNoise = 5e-4;  // ~-70 dBFS resting level

}  // namespace

SynthClip synth_clip(const SynthSpec& spec, int index) {
    Rng rng(spec.seed * 0x100000001b3ULL + static_cast<std::uint64_t>(index) + 1);

    SynthClip out;
    out.label = index % 2;
    out.group = (index / 2) % 2 == 0 ? "M" : "F";

    const double fs = spec.sample_rate;
    const double duration = rng.uniform(3.05, 3.6);
    const auto total = static_cast<std::size_t>(duration * fs);

    const double f0_base = out.group == "M" ? rng.uniform(85.0, 155.0) : rng.uniform(165.0, 255.0);
    const double vibrato_rate = rng.uniform(4.0, 7.0);
    const double vibrato_depth = rng.uniform(0.02, 0.05);
    const double vibrato_phase = rng.uniform(0.0, 2.0 * M_PI);

    // Vowel glide between two distinct targets.
    const int v1 = rng.range(0, static_cast<int>(kVowels.size()) - 1);
    int v2 = rng.range(0, static_cast<int>(kVowels.size()) - 2);
    if (v2 >= v1) ++v2;
    const double glide_rate = rng.uniform(0.5, 1.2);
    const double glide_phase = rng.uniform(0.0, 2.0 * M_PI);

    // Class-dependent vocal tract: shifted formants, wider bandwidths,
    // stronger aspiration. The per-clip draws overlap between classes, so no
    // single cue separates them on its own.
    const double formant_shift =
        out.label == 1 ? rng.uniform(1.03, 1.10) : rng.uniform(0.96, 1.03);
    const std::array<double, 3> jitter = {rng.uniform(0.97, 1.03), rng.uniform(0.97, 1.03),
                                          rng.uniform(0.97, 1.03)};
    const double bw_scale = rng.uniform(0.85, 1.25);
    const std::array<double, 3> base_bw = out.label == 1
                                              ? std::array<double, 3>{110.0, 150.0, 205.0}
                                              : std::array<double, 3>{80.0, 110.0, 150.0};
    const std::array<double, 3> bandwidths = {base_bw[0] * bw_scale, base_bw[1] * bw_scale,
                                              base_bw[2] * bw_scale};
    const double aspiration = out.label == 1 ? rng.uniform(0.04, 0.11) : rng.uniform(0.01, 0.05);

    // Nasal-like anti-resonance; pathological clips carry a deeper notch.
    const double notch_hz = rng.uniform(2300.0, 3000.0);
    const double notch_radius = out.label == 1 ? rng.uniform(0.88, 0.97) : rng.uniform(0.70, 0.85);

    const double lead = rng.uniform(0.15, 0.30);
    const double tail = rng.uniform(0.15, 0.30);
    const bool has_pause = rng.uniform() < 0.4;
    const double pause_at = rng.uniform(0.3, 0.7) * duration;
    const double pause_len = rng.uniform(0.20, 0.35);

    const double am_rate = rng.uniform(2.5, 4.0);
    const double am_phase = rng.uniform(0.0, 2.0 * M_PI);
    const double tilt = 0.92;  // one-pole lowpass on the pulse train

    std::array<Resonator, 3> tract;
    AntiResonator notch;
    notch.tune(notch_hz, notch_radius, fs);
    std::vector<double> samples(total);

    double phase = rng.uniform(0.0, 1.0);
    double source_state = 0.0;
    constexpr int kBlock = 32;
    for (std::size_t n = 0; n < total; ++n) {
        const double t = static_cast<double>(n) / fs;

        if (n % kBlock == 0) {
            const double glide = 0.5 - 0.5 * std::cos(2.0 * M_PI * glide_rate * t + glide_phase);
            const Vowel& a = kVowels[static_cast<std::size_t>(v1)];
            const Vowel& b = kVowels[static_cast<std::size_t>(v2)];
            const std::array<double, 3> freqs = {a.f1 + (b.f1 - a.f1) * glide,
                                                 a.f2 + (b.f2 - a.f2) * glide,
                                                 a.f3 + (b.f3 - a.f3) * glide};
            for (int k = 0; k < 3; ++k) {
                tract[static_cast<std::size_t>(k)].tune(
                    freqs[static_cast<std::size_t>(k)] * formant_shift * jitter[static_cast<std::size_t>(k)],
                    bandwidths[static_cast<std::size_t>(k)], fs);
            }
        }

        // Voicing envelope: silence lead/tail, optional mid pause, syllabic AM.
        double env = 0.0;
        const double voiced_end = duration - tail;
        if (t >= lead && t < voiced_end) {
            env = 1.0;
            env *= std::min(1.0, (t - lead) / 0.05);
            env *= std::min(1.0, (voiced_end - t) / 0.08);
            if (has_pause && t >= pause_at && t < pause_at + pause_len) {
                env = 0.0;
            }
            env *= 0.75 + 0.25 * std::sin(2.0 * M_PI * am_rate * t + am_phase);
        }

        const double f0 = f0_base * (1.0 + vibrato_depth * std::sin(2.0 * M_PI * vibrato_rate * t + vibrato_phase));
        phase += f0 / fs;
        double pulse = 0.0;
        if (phase >= 1.0) {
            phase -= 1.0;
            pulse = 1.0;
        }
        source_state = (1.0 - tilt) * pulse + tilt * source_state;

        const double noise = aspiration * (2.0 * rng.uniform() - 1.0);
        double x = (source_state + noise) * env;
        for (auto& r : tract) x = r.process(x);
        x = notch.process(x);

        samples[n] = x + kFloorNoise * (2.0 * rng.uniform() - 1.0);
    }

    double peak = 0.0;
    for (const double s : samples) peak = std::max(peak, std::abs(s));
    const double gain = peak > 0.0 ? rng.uniform(0.35, 0.8) / peak : 0.0;
    for (double& s : samples) s *= gain;

    char id[16];
    std::snprintf(id, sizeof(id), "syn%03d", index);
    out.clip.samples = std::move(samples);
    out.clip.sample_rate = spec.sample_rate;
    out.clip.source_id = id;
    return out;
}

std::filesystem::path generate_corpus(const SynthSpec& spec, const std::filesystem::path& dir) {
    const auto clips_dir = dir / "clips";
    std::filesystem::create_directories(clips_dir);

    std::string manifest = "id,path,label,group\n";
    for (int i = 0; i < spec.clip_count; ++i) {
        const SynthClip clip = synth_clip(spec, i);
        const std::string filename = clip.clip.source_id + ".wav";
        audio::save_wav16(clips_dir / filename, clip.clip);
        manifest += clip.clip.source_id + ",clips/" + filename + "," + std::to_string(clip.label) +
                    "," + clip.group + "\n";
    }

    const auto manifest_path = dir / "manifest.csv";
    std::ofstream out(manifest_path, std::ios::trunc);
    out << manifest;
    return manifest_path;
}

}  // namespace melsweep::harness
