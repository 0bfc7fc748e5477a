#pragma once

#include <stdexcept>
#include <vector>

#include "melsweep/mfcc/config.hpp"

namespace melsweep::mfcc {

// Raised when a filter ends up with no FFT bin of positive weight (more
// filters than spectral resolution supports).
class DegenerateFilterError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double mel_from_hz(double hz);
double hz_from_mel(double mel);

// Triangular filters with peaks equally spaced on the mel scale between
// fmin and fmax, sampled at FFT bin frequencies and peak-normalized so every
// row has maximum weight 1. Stored sparse (each filter covers a contiguous
// bin range).
class MelFilterbank {
public:
    struct Filter {
        int first_bin = 0;
        std::vector<double> weights;  // contiguous bins starting at first_bin
    };

    int filter_count() const { return static_cast<int>(filters_.size()); }
    int bin_count() const { return bin_count_; }
    const std::vector<double>& edges_hz() const { return edges_hz_; }  // J+2 points
    const std::vector<Filter>& filters() const { return filters_; }

    // Dense view of one weight; zero outside the filter's support.
    double weight(int filter, int bin) const;
    double row_sum(int filter) const;
    int peak_bin(int filter) const;  // lowest bin attaining the row maximum

    friend MelFilterbank build_filterbank(const MfccConfig& cfg);

private:
    int bin_count_ = 0;
    std::vector<double> edges_hz_;
    std::vector<Filter> filters_;
};

MelFilterbank build_filterbank(const MfccConfig& cfg);

// E_j = sum_k weight(j, k) * power[k].
std::vector<double> filterbank_energies(const std::vector<double>& power, const MelFilterbank& fb);

}  // namespace melsweep::mfcc
