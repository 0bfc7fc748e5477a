#include "melsweep/mfcc/fft.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace melsweep::mfcc {

FftPlan::FftPlan(int length) : length_(length) {
    if (length < 1 || (length & (length - 1)) != 0)
        throw std::invalid_argument("FFT length must be a power of two");

    twiddles_.resize(static_cast<std::size_t>(length / 2));
    for (int k = 0; k < length / 2; ++k) {
        const double angle = -2.0 * M_PI * k / length;
        twiddles_[static_cast<std::size_t>(k)] = {std::cos(angle), std::sin(angle)};
    }

    bit_reversed_.resize(static_cast<std::size_t>(length));
    std::uint32_t bits = 0;
    while ((1 << bits) < length) ++bits;
    for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(length); ++i) {
        std::uint32_t rev = 0;
        for (std::uint32_t b = 0; b < bits; ++b) {
            rev |= ((i >> b) & 1u) << (bits - 1 - b);
        }
        bit_reversed_[i] = rev;
    }
}

void FftPlan::forward(std::vector<std::complex<double>>& buf) const {
    if (static_cast<int>(buf.size()) != length_)
        throw std::invalid_argument("FFT buffer size does not match plan length");
    const auto n = static_cast<std::uint32_t>(length_);

    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t j = bit_reversed_[i];
        if (i < j) std::swap(buf[i], buf[j]);
    }

    for (std::uint32_t half = 1; half < n; half *= 2) {
        const std::uint32_t stride = n / (2 * half);  // twiddle step for this stage
        for (std::uint32_t start = 0; start < n; start += 2 * half) {
            for (std::uint32_t k = 0; k < half; ++k) {
                const std::complex<double> w = twiddles_[k * stride];
                const std::complex<double> even = buf[start + k];
                const std::complex<double> odd = w * buf[start + k + half];
                buf[start + k] = even + odd;
                buf[start + k + half] = even - odd;
            }
        }
    }
}

}  // namespace melsweep::mfcc
