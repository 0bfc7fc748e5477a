#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "melsweep/mfcc/config.hpp"
#include "melsweep/mfcc/feature.hpp"
#include "melsweep/mfcc/fft.hpp"
#include "melsweep/mfcc/filterbank.hpp"

namespace melsweep::mfcc {

class TooShortSignalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Row-major frame storage: frame_count rows of frame_length samples.
struct FrameMatrix {
    std::vector<double> data;
    int frame_count = 0;
    int frame_length = 0;

    std::span<double> row(int i) {
        return {data.data() + static_cast<std::size_t>(i) * frame_length,
                static_cast<std::size_t>(frame_length)};
    }
    std::span<const double> row(int i) const {
        return {data.data() + static_cast<std::size_t>(i) * frame_length,
                static_cast<std::size_t>(frame_length)};
    }
};

struct MfccMatrix {
    std::vector<double> data;
    int frame_count = 0;
    int num_coefficients = 0;

    std::span<const double> row(int i) const {
        return {data.data() + static_cast<std::size_t>(i) * num_coefficients,
                static_cast<std::size_t>(num_coefficients)};
    }
};

// Frame i covers samples [i*M, i*M + N); the trailing partial frame is
// discarded. Throws TooShortSignalError when the signal holds no full frame.
FrameMatrix frame_signal(std::span<const double> samples, const MfccConfig& cfg);

// w(n) = 0.54 - 0.46*cos(2*pi*n/(N-1)); a single-sample window is 1.
std::vector<double> hamming_window(int length);
void apply_window(FrameMatrix& frames);

// |FFT(frame)|^2 for bins 0..K/2, one row per frame. Frames are zero-padded
// to the plan length.
std::vector<std::vector<double>> power_spectrum(const FrameMatrix& frames, const FftPlan& plan);

// log10 with a 1e-10 floor so silent filters stay finite.
std::vector<double> log_energies(const std::vector<double>& energies);

// Precomputed cosine table for C_m = sum_j cos(m*pi/J*(j+0.5)) * logE_j.
class DctTable {
public:
    DctTable(int num_filters, int num_coefficients);
    std::vector<double> apply(const std::vector<double>& log_energies) const;
    int num_filters() const { return num_filters_; }
    int num_coefficients() const { return num_coefficients_; }

private:
    int num_filters_;
    int num_coefficients_;
    std::vector<double> cosines_;  // [m * J + j]
};

std::vector<double> dct_coefficients(const std::vector<double>& log_energies, int num_coefficients);

// Column-wise arithmetic mean over frames.
FeatureVector mean_pool(const MfccMatrix& mfcc);

// Caches the window, FFT plan, filterbank and DCT table for one config so
// per-segment extraction is just the per-frame math.
class MfccExtractor {
public:
    explicit MfccExtractor(const MfccConfig& cfg);

    const MfccConfig& config() const { return cfg_; }
    const MelFilterbank& filterbank() const { return filterbank_; }

    MfccMatrix extract(std::span<const double> samples) const;
    FeatureVector extract_pooled(std::span<const double> samples) const;

private:
    MfccConfig cfg_;
    std::vector<double> window_;
    FftPlan plan_;
    MelFilterbank filterbank_;
    DctTable dct_;
};

// One-shot convenience built on MfccExtractor.
MfccMatrix extract_mfcc(std::span<const double> samples, const MfccConfig& cfg);

}  // namespace melsweep::mfcc
