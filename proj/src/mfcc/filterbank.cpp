#include "melsweep/mfcc/filterbank.hpp"

#include <algorithm>
#include <cmath>

namespace melsweep::mfcc {

double mel_from_hz(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double hz_from_mel(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

double MelFilterbank::weight(int filter, int bin) const {
    const Filter& f = filters_[static_cast<std::size_t>(filter)];
    const int offset = bin - f.first_bin;
    if (offset < 0 || offset >= static_cast<int>(f.weights.size())) return 0.0;
    return f.weights[static_cast<std::size_t>(offset)];
}

double MelFilterbank::row_sum(int filter) const {
    const Filter& f = filters_[static_cast<std::size_t>(filter)];
    double acc = 0.0;
    for (const double w : f.weights) acc += w;
    return acc;
}

int MelFilterbank::peak_bin(int filter) const {
    const Filter& f = filters_[static_cast<std::size_t>(filter)];
    const auto it = std::max_element(f.weights.begin(), f.weights.end());
    return f.first_bin + static_cast<int>(it - f.weights.begin());
}

MelFilterbank build_filterbank(const MfccConfig& cfg) {
    cfg.validate();
    const int bins = cfg.spectrum_bins();
    const int fft_length = cfg.fft_length();
    const int j = cfg.num_filters;
    const double bin_hz = static_cast<double>(cfg.sample_rate) / fft_length;

    MelFilterbank fb;
    fb.bin_count_ = bins;
    fb.edges_hz_.resize(static_cast<std::size_t>(j) + 2);
    const double mel_lo = mel_from_hz(cfg.fmin_hz);
    const double mel_hi = mel_from_hz(cfg.fmax_hz);
    for (int p = 0; p < j + 2; ++p) {
        const double mel = mel_lo + (mel_hi - mel_lo) * p / (j + 1);
        fb.edges_hz_[static_cast<std::size_t>(p)] = hz_from_mel(mel);
    }

    fb.filters_.resize(static_cast<std::size_t>(j));
    for (int f = 0; f < j; ++f) {
        const double left = fb.edges_hz_[static_cast<std::size_t>(f)];
        const double center = fb.edges_hz_[static_cast<std::size_t>(f) + 1];
        const double right = fb.edges_hz_[static_cast<std::size_t>(f) + 2];

        const int k_lo = std::max(0, static_cast<int>(std::floor(left / bin_hz)) + 1);
        const int k_hi = std::min(bins - 1, static_cast<int>(std::ceil(right / bin_hz)) - 1);

        std::vector<double> weights;
        int first_bin = -1;
        for (int k = k_lo; k <= k_hi; ++k) {
            const double freq = k * bin_hz;
            double w = 0.0;
            if (freq > left && freq < center) {
                w = (freq - left) / (center - left);
            } else if (freq >= center && freq < right) {
                w = (right - freq) / (right - center);
            }
            if (w > 0.0) {
                if (first_bin < 0) first_bin = k;
                weights.resize(static_cast<std::size_t>(k - first_bin) + 1, 0.0);
                weights.back() = w;
            }
        }
        if (first_bin < 0 || weights.empty())
            throw DegenerateFilterError("mel filter " + std::to_string(f) +
                                        " has empty support; reduce num_filters or raise the FFT length");

        const double peak = *std::max_element(weights.begin(), weights.end());
        for (double& w : weights) w /= peak;
        fb.filters_[static_cast<std::size_t>(f)] = {first_bin, std::move(weights)};
    }
    return fb;
}

std::vector<double> filterbank_energies(const std::vector<double>& power, const MelFilterbank& fb) {
    if (static_cast<int>(power.size()) != fb.bin_count())
        throw std::invalid_argument("power spectrum size does not match filterbank bins");
    std::vector<double> energies(static_cast<std::size_t>(fb.filter_count()));
    for (int f = 0; f < fb.filter_count(); ++f) {
        const auto& filter = fb.filters()[static_cast<std::size_t>(f)];
        double acc = 0.0;
        for (std::size_t i = 0; i < filter.weights.size(); ++i) {
            acc += filter.weights[i] * power[static_cast<std::size_t>(filter.first_bin) + i];
        }
        energies[static_cast<std::size_t>(f)] = acc;
    }
    return energies;
}

}  // namespace melsweep::mfcc
