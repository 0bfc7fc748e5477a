#include "melsweep/mfcc/config.hpp"

#include <cmath>

#include "melsweep/common/text.hpp"

namespace melsweep::mfcc {

int MfccConfig::frame_samples() const {
    return static_cast<int>(std::max<long long>(1, std::llround(frame_length_ms / 1000.0 * sample_rate)));
}

int MfccConfig::hop_samples() const {
    return static_cast<int>(std::max<long long>(1, std::llround(hop_length_ms / 1000.0 * sample_rate)));
}

int MfccConfig::fft_length() const {
    int k = 1;
    while (k < frame_samples()) k *= 2;
    return k;
}

void MfccConfig::validate() const {
    if (sample_rate <= 0) throw ConfigError("sample_rate must be positive");
    if (frame_length_ms <= 0) throw ConfigError("frame_length_ms must be positive");
    if (hop_length_ms <= 0) throw ConfigError("hop_length_ms must be positive");
    if (num_filters < 1) throw ConfigError("num_filters must be at least 1");
    if (num_coefficients < 1 || num_coefficients > num_filters)
        throw ConfigError("num_coefficients must be in [1, num_filters], got " +
                          std::to_string(num_coefficients) + " with " + std::to_string(num_filters) +
                          " filters");
    if (fmin_hz < 0) throw ConfigError("fmin_hz must be non-negative");
    if (fmax_hz <= fmin_hz) throw ConfigError("fmax_hz must exceed fmin_hz");
    if (fmax_hz > sample_rate / 2.0 + 1e-9) throw ConfigError("fmax_hz must not exceed the Nyquist frequency");
}

std::string MfccConfig::canonical_string() const {
    std::string s;
    s += "L=" + std::to_string(num_coefficients);
    s += ";frame_ms=" + format_double(frame_length_ms);
    s += ";hop_ms=" + format_double(hop_length_ms);
    s += ";J=" + std::to_string(num_filters);
    s += ";rate=" + std::to_string(sample_rate);
    s += ";fmin=" + format_double(fmin_hz);
    s += ";fmax=" + format_double(fmax_hz);
    return s;
}

std::uint64_t MfccConfig::digest() const { return fnv1a64(canonical_string()); }

}  // namespace melsweep::mfcc
