#include "melsweep/mfcc/pipeline.hpp"

#include <cmath>

namespace melsweep::mfcc {

namespace {
constexpr double kLogFloor = 1e-10;
}

FrameMatrix frame_signal(std::span<const double> samples, const MfccConfig& cfg) {
    cfg.validate();
    const int n = cfg.frame_samples();
    const int m = cfg.hop_samples();
    const auto len = static_cast<long long>(samples.size());
    if (len < n)
        throw TooShortSignalError("signal of " + std::to_string(len) + " samples is shorter than one " +
                                  std::to_string(n) + "-sample frame");

    const int frame_count = static_cast<int>((len - n) / m) + 1;
    FrameMatrix frames;
    frames.frame_count = frame_count;
    frames.frame_length = n;
    frames.data.resize(static_cast<std::size_t>(frame_count) * n);
    for (int i = 0; i < frame_count; ++i) {
        const auto start = static_cast<std::size_t>(i) * static_cast<std::size_t>(m);
        std::copy(samples.begin() + static_cast<std::ptrdiff_t>(start),
                  samples.begin() + static_cast<std::ptrdiff_t>(start + static_cast<std::size_t>(n)),
                  frames.data.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(i) * n));
    }
    return frames;
}

std::vector<double> hamming_window(int length) {
    std::vector<double> w(static_cast<std::size_t>(length));
    if (length == 1) {
        w[0] = 1.0;
        return w;
    }
    for (int n = 0; n < length; ++n) {
        w[static_cast<std::size_t>(n)] = 0.54 - 0.46 * std::cos(2.0 * M_PI * n / (length - 1));
    }
    return w;
}

void apply_window(FrameMatrix& frames) {
    const std::vector<double> w = hamming_window(frames.frame_length);
    for (int i = 0; i < frames.frame_count; ++i) {
        auto row = frames.row(i);
        for (int n = 0; n < frames.frame_length; ++n) row[static_cast<std::size_t>(n)] *= w[static_cast<std::size_t>(n)];
    }
}

std::vector<std::vector<double>> power_spectrum(const FrameMatrix& frames, const FftPlan& plan) {
    const int k = plan.length();
    if (frames.frame_length > k)
        throw std::invalid_argument("frame length exceeds FFT length");
    const int bins = k / 2 + 1;

    std::vector<std::vector<double>> spectra(static_cast<std::size_t>(frames.frame_count));
    std::vector<std::complex<double>> buf(static_cast<std::size_t>(k));
    for (int i = 0; i < frames.frame_count; ++i) {
        const auto row = frames.row(i);
        for (int n = 0; n < frames.frame_length; ++n) buf[static_cast<std::size_t>(n)] = {row[static_cast<std::size_t>(n)], 0.0};
        for (int n = frames.frame_length; n < k; ++n) buf[static_cast<std::size_t>(n)] = {0.0, 0.0};
        plan.forward(buf);

        auto& out = spectra[static_cast<std::size_t>(i)];
        out.resize(static_cast<std::size_t>(bins));
        for (int b = 0; b < bins; ++b) {
            out[static_cast<std::size_t>(b)] = std::norm(buf[static_cast<std::size_t>(b)]);
        }
    }
    return spectra;
}

std::vector<double> log_energies(const std::vector<double>& energies) {
    std::vector<double> out(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i) {
        out[i] = std::log10(std::max(energies[i], kLogFloor));
    }
    return out;
}

DctTable::DctTable(int num_filters, int num_coefficients)
    : num_filters_(num_filters), num_coefficients_(num_coefficients) {
    cosines_.resize(static_cast<std::size_t>(num_filters) * static_cast<std::size_t>(num_coefficients));
    for (int m = 0; m < num_coefficients; ++m) {
        for (int j = 0; j < num_filters; ++j) {
            cosines_[static_cast<std::size_t>(m) * num_filters_ + j] =
                std::cos(m * M_PI / num_filters * (j + 0.5));
        }
    }
}

std::vector<double> DctTable::apply(const std::vector<double>& log_energies) const {
    if (static_cast<int>(log_energies.size()) != num_filters_)
        throw std::invalid_argument("log energy count does not match DCT table");
    std::vector<double> coeffs(static_cast<std::size_t>(num_coefficients_));
    for (int m = 0; m < num_coefficients_; ++m) {
        double acc = 0.0;
        const double* row = cosines_.data() + static_cast<std::size_t>(m) * num_filters_;
        for (int j = 0; j < num_filters_; ++j) acc += row[j] * log_energies[static_cast<std::size_t>(j)];
        coeffs[static_cast<std::size_t>(m)] = acc;
    }
    return coeffs;
}

std::vector<double> dct_coefficients(const std::vector<double>& log_energies, int num_coefficients) {
    const int j = static_cast<int>(log_energies.size());
    if (num_coefficients < 1 || num_coefficients > j)
        throw std::invalid_argument("num_coefficients must be in [1, filter count]");
    return DctTable(j, num_coefficients).apply(log_energies);
}

FeatureVector mean_pool(const MfccMatrix& mfcc) {
    if (mfcc.frame_count < 1) throw std::invalid_argument("mean_pool: empty MFCC matrix");
    FeatureVector out;
    out.values.assign(static_cast<std::size_t>(mfcc.num_coefficients), 0.0);
    for (int i = 0; i < mfcc.frame_count; ++i) {
        const auto row = mfcc.row(i);
        for (int c = 0; c < mfcc.num_coefficients; ++c) out.values[static_cast<std::size_t>(c)] += row[static_cast<std::size_t>(c)];
    }
    for (double& v : out.values) v /= mfcc.frame_count;
    return out;
}

namespace {
const MfccConfig& validated(const MfccConfig& cfg) {
    cfg.validate();
    return cfg;
}
}  // namespace

MfccExtractor::MfccExtractor(const MfccConfig& cfg)
    : cfg_(validated(cfg)),
      window_(hamming_window(cfg.frame_samples())),
      plan_(cfg.fft_length()),
      filterbank_(build_filterbank(cfg)),
      dct_(cfg.num_filters, cfg.num_coefficients) {}

MfccMatrix MfccExtractor::extract(std::span<const double> samples) const {
    FrameMatrix frames = frame_signal(samples, cfg_);
    for (int i = 0; i < frames.frame_count; ++i) {
        auto row = frames.row(i);
        for (int n = 0; n < frames.frame_length; ++n) row[static_cast<std::size_t>(n)] *= window_[static_cast<std::size_t>(n)];
    }
    const auto spectra = power_spectrum(frames, plan_);

    MfccMatrix out;
    out.frame_count = frames.frame_count;
    out.num_coefficients = cfg_.num_coefficients;
    out.data.resize(static_cast<std::size_t>(out.frame_count) * out.num_coefficients);
    for (int i = 0; i < out.frame_count; ++i) {
        const auto energies = filterbank_energies(spectra[static_cast<std::size_t>(i)], filterbank_);
        const auto coeffs = dct_.apply(log_energies(energies));
        std::copy(coeffs.begin(), coeffs.end(),
                  out.data.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(i) * out.num_coefficients));
    }
    return out;
}

FeatureVector MfccExtractor::extract_pooled(std::span<const double> samples) const {
    return mean_pool(extract(samples));
}

MfccMatrix extract_mfcc(std::span<const double> samples, const MfccConfig& cfg) {
    return MfccExtractor(cfg).extract(samples);
}

}  // namespace melsweep::mfcc
