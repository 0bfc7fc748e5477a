#include "melsweep/audio/resample.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace melsweep::audio {

namespace {

constexpr double kKaiserBeta = 8.0;
constexpr int kTapsPerPhase = 32;
constexpr double kRolloff = 0.945;
constexpr int kLutPointsPerSample = 512;

// Modified Bessel function of the first kind, order zero (power series).
double bessel_i0(double x) {
    const double half = x * 0.5;
    double sum = 1.0;
    double term = 1.0;
    for (int k = 1; k < 64; ++k) {
        term *= (half / k) * (half / k);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

// Kaiser-windowed sinc low-pass kernel, tabulated on [0, half_width] and
// looked up with linear interpolation.
class SincKernel {
public:
    SincKernel(double cutoff, double half_width) : half_width_(half_width) {
        const double i0_beta = bessel_i0(kKaiserBeta);
        const std::size_t points =
            static_cast<std::size_t>(std::ceil(half_width * kLutPointsPerSample)) + 2;
        step_ = half_width / static_cast<double>(points - 2);
        table_.resize(points);
        for (std::size_t i = 0; i < points; ++i) {
            const double t = static_cast<double>(i) * step_;
            if (t >= half_width) {
                table_[i] = 0.0;
                continue;
            }
            const double x = t / half_width;
            const double window = bessel_i0(kKaiserBeta * std::sqrt(1.0 - x * x)) / i0_beta;
            const double arg = 2.0 * cutoff * t;
            const double sinc = arg == 0.0 ? 1.0 : std::sin(M_PI * arg) / (M_PI * arg);
            table_[i] = 2.0 * cutoff * sinc * window;
        }
    }

    double half_width() const { return half_width_; }

    double operator()(double t) const {
        t = std::abs(t);
        if (t >= half_width_) return 0.0;
        const double pos = t / step_;
        const auto idx = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(idx);
        return table_[idx] + frac * (table_[idx + 1] - table_[idx]);
    }

private:
    double half_width_;
    double step_;
    std::vector<double> table_;
};

}  // namespace

AudioClip resample(const AudioClip& clip, int target_rate) {
    if (target_rate <= 0) throw std::invalid_argument("target_rate must be positive");
    if (clip.sample_rate <= 0) throw std::invalid_argument("clip sample rate must be positive");
    if (target_rate == clip.sample_rate) return clip;

    const double ratio = static_cast<double>(target_rate) / clip.sample_rate;
    const double scale = std::min(1.0, ratio);  // <1 when downsampling
    const double cutoff = 0.5 * scale * kRolloff;
    const double half_width = (kTapsPerPhase / 2.0) / scale;
    const SincKernel kernel(cutoff, half_width);

    const auto in_len = static_cast<std::int64_t>(clip.samples.size());
    const auto out_len = static_cast<std::int64_t>(std::llround(in_len * ratio));

    AudioClip out;
    out.sample_rate = target_rate;
    out.source_id = clip.source_id;
    out.samples.resize(static_cast<std::size_t>(out_len));

    for (std::int64_t m = 0; m < out_len; ++m) {
        const double center = static_cast<double>(m) / ratio;
        const auto first = static_cast<std::int64_t>(std::ceil(center - half_width));
        const auto last = static_cast<std::int64_t>(std::floor(center + half_width));
        double acc = 0.0;
        double weight_sum = 0.0;
        for (std::int64_t n = first; n <= last; ++n) {
            const double w = kernel(static_cast<double>(n) - center);
            weight_sum += w;
            if (n >= 0 && n < in_len) acc += w * clip.samples[static_cast<std::size_t>(n)];
        }
        out.samples[static_cast<std::size_t>(m)] = weight_sum != 0.0 ? acc / weight_sum : 0.0;
    }
    return out;
}

}  // namespace melsweep::audio
