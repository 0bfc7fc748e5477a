#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace melsweep::mfcc {

// Iterative in-place radix-2 FFT with precomputed twiddles and bit-reversal
// table. One plan per transform length, reusable across frames.
class FftPlan {
public:
    explicit FftPlan(int length);  // length must be a power of two >= 1

    int length() const { return length_; }

    // Forward transform, in place. buf.size() must equal length().
    void forward(std::vector<std::complex<double>>& buf) const;

private:
    int length_;
    std::vector<std::complex<double>> twiddles_;  // exp(-2*pi*i*k/K), k < K/2
    std::vector<std::uint32_t> bit_reversed_;
};

}  // namespace melsweep::mfcc
