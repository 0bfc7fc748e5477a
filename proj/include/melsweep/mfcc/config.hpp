#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace melsweep::mfcc {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// All knobs of the extraction pipeline. Frame and hop are configured in
// milliseconds and converted at the configured rate; the FFT length is the
// next power of two >= the frame length in samples.
struct MfccConfig {
    int num_coefficients = 13;   // L, kept DCT outputs
    double frame_length_ms = 25.0;
    double hop_length_ms = 10.0;
    int num_filters = 80;        // J, mel filterbank size
    int sample_rate = 16000;
    double fmin_hz = 0.0;
    double fmax_hz = 8000.0;

    static MfccConfig defaults(int sample_rate) {
        MfccConfig cfg;
        cfg.sample_rate = sample_rate;
        cfg.fmax_hz = sample_rate / 2.0;
        return cfg;
    }

    int frame_samples() const;  // N
    int hop_samples() const;    // M
    int fft_length() const;     // K = 2^ceil(log2 N)
    int spectrum_bins() const { return fft_length() / 2 + 1; }

    // Throws ConfigError when any invariant is violated.
    void validate() const;

    // Fixed-format rendering of every field; two configs are interchangeable
    // iff their canonical strings match.
    std::string canonical_string() const;
    std::uint64_t digest() const;
};

}  // namespace melsweep::mfcc
