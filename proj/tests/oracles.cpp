#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracles {

std::vector<std::complex<double>> naive_dft(const std::vector<double>& input, int length) {
    // Twiddle table keeps the inner loop trig-free; indices are (n*k) mod K.
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(length));
    for (int t = 0; t < length; ++t) {
        const double angle = -2.0 * M_PI * t / length;
        roots[static_cast<std::size_t>(t)] = {std::cos(angle), std::sin(angle)};
    }
    std::vector<std::complex<double>> out(static_cast<std::size_t>(length));
    for (int k = 0; k < length; ++k) {
        std::complex<double> acc{0.0, 0.0};
        std::size_t idx = 0;
        for (std::size_t n = 0; n < input.size() && n < static_cast<std::size_t>(length); ++n) {
            acc += input[n] * roots[idx];
            idx += static_cast<std::size_t>(k);
            if (idx >= static_cast<std::size_t>(length)) idx -= static_cast<std::size_t>(length);
        }
        out[static_cast<std::size_t>(k)] = acc;
    }
    return out;
}

std::vector<std::vector<double>> literal_mfcc(const std::vector<double>& samples,
                                              const melsweep::mfcc::MfccConfig& cfg) {
    const int rate = cfg.sample_rate;
    const int n = static_cast<int>(std::llround(cfg.frame_length_ms / 1000.0 * rate));
    const int m = static_cast<int>(std::llround(cfg.hop_length_ms / 1000.0 * rate));
    const int j = cfg.num_filters;
    const int l = cfg.num_coefficients;
    int k = 1;
    while (k < n) k *= 2;
    const int bins = k / 2 + 1;

    if (static_cast<int>(samples.size()) < n) throw std::invalid_argument("literal_mfcc: too short");
    const int frame_count = (static_cast<int>(samples.size()) - n) / m + 1;

    // Dense filterbank straight from the mel formulas, peak-normalized.
    const auto mel = [](double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); };
    const auto hz = [](double mel_value) { return 700.0 * (std::pow(10.0, mel_value / 2595.0) - 1.0); };
    std::vector<double> edges(static_cast<std::size_t>(j) + 2);
    for (int p = 0; p < j + 2; ++p) {
        edges[static_cast<std::size_t>(p)] =
            hz(mel(cfg.fmin_hz) + (mel(cfg.fmax_hz) - mel(cfg.fmin_hz)) * p / (j + 1));
    }
    std::vector<std::vector<double>> filters(static_cast<std::size_t>(j),
                                             std::vector<double>(static_cast<std::size_t>(bins), 0.0));
    for (int f = 0; f < j; ++f) {
        const double left = edges[static_cast<std::size_t>(f)];
        const double center = edges[static_cast<std::size_t>(f) + 1];
        const double right = edges[static_cast<std::size_t>(f) + 2];
        double peak = 0.0;
        for (int b = 0; b < bins; ++b) {
            const double freq = static_cast<double>(b) * rate / k;
            double w = 0.0;
            if (freq > left && freq < center) w = (freq - left) / (center - left);
            else if (freq >= center && freq < right) w = (right - freq) / (right - center);
            filters[static_cast<std::size_t>(f)][static_cast<std::size_t>(b)] = w;
            peak = std::max(peak, w);
        }
        if (peak <= 0.0) throw std::runtime_error("literal_mfcc: empty filter support");
        for (double& w : filters[static_cast<std::size_t>(f)]) w /= peak;
    }

    std::vector<std::vector<double>> mfcc(static_cast<std::size_t>(frame_count));
    for (int i = 0; i < frame_count; ++i) {
        std::vector<double> frame(static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t) {
            const double w =
                n == 1 ? 1.0 : 0.54 - 0.46 * std::cos(2.0 * M_PI * t / (n - 1));
            frame[static_cast<std::size_t>(t)] =
                samples[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
                        static_cast<std::size_t>(t)] * w;
        }
        const auto spectrum = naive_dft(frame, k);

        std::vector<double> log_e(static_cast<std::size_t>(j));
        for (int f = 0; f < j; ++f) {
            double energy = 0.0;
            for (int b = 0; b < bins; ++b) {
                energy += filters[static_cast<std::size_t>(f)][static_cast<std::size_t>(b)] *
                          std::norm(spectrum[static_cast<std::size_t>(b)]);
            }
            log_e[static_cast<std::size_t>(f)] = std::log10(std::max(energy, 1e-10));
        }

        std::vector<double> coeffs(static_cast<std::size_t>(l));
        for (int c = 0; c < l; ++c) {
            double acc = 0.0;
            for (int f = 0; f < j; ++f) {
                acc += std::cos(c * M_PI / j * (f + 0.5)) * log_e[static_cast<std::size_t>(f)];
            }
            coeffs[static_cast<std::size_t>(c)] = acc;
        }
        mfcc[static_cast<std::size_t>(i)] = std::move(coeffs);
    }
    return mfcc;
}

double pairwise_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    double wins = 0.0;
    long long pairs = 0;
    for (std::size_t p = 0; p < scores.size(); ++p) {
        if (labels[p] != 1) continue;
        for (std::size_t q = 0; q < scores.size(); ++q) {
            if (labels[q] != 0) continue;
            ++pairs;
            if (scores[p] > scores[q]) wins += 1.0;
            else if (scores[p] == scores[q]) wins += 0.5;
        }
    }
    if (pairs == 0) throw std::invalid_argument("pairwise_auc: needs both classes");
    return wins / static_cast<double>(pairs);
}

double brute_force_eer(const std::vector<double>& scores, const std::vector<int>& labels) {
    int n_pos = 0;
    int n_neg = 0;
    for (const int y : labels) (y == 1 ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0) throw std::invalid_argument("brute_force_eer: needs both classes");

    std::vector<double> thresholds = scores;
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    // Operating point at threshold tau: positive iff score > tau. Start from
    // tau = -inf (all positive), rescanning the whole set at every step.
    double prev_fpr = 1.0;
    double prev_fnr = 0.0;
    for (const double tau : thresholds) {
        int fp = 0;
        int fn = 0;
        for (std::size_t t = 0; t < scores.size(); ++t) {
            const bool predicted = scores[t] > tau;
            if (predicted && labels[t] == 0) ++fp;
            if (!predicted && labels[t] == 1) ++fn;
        }
        const double fpr = static_cast<double>(fp) / n_neg;
        const double fnr = static_cast<double>(fn) / n_pos;
        if (fnr == fpr) return fnr;
        if (fnr > fpr) {
            const double t = (prev_fpr - prev_fnr) / ((fnr - prev_fnr) - (fpr - prev_fpr));
            return prev_fpr + t * (fpr - prev_fpr);
        }
        prev_fpr = fpr;
        prev_fnr = fnr;
    }
    return prev_fpr;
}

double two_point_alpha(const std::vector<double>& x1, const std::vector<double>& x2, double gamma,
                       double c) {
    const auto kernel = [gamma](const std::vector<double>& a, const std::vector<double>& b) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
        return std::exp(-gamma * d2);
    };
    const double denom = kernel(x1, x1) + kernel(x2, x2) - 2.0 * kernel(x1, x2);
    const double alpha = 2.0 / denom;
    return std::clamp(alpha, 0.0, c);
}

SvmObjectives svm_objectives(const melsweep::svm::TrainedSvm& model,
                             const std::vector<std::vector<double>>& features,
                             const std::vector<int>& labels) {
    const double gamma = model.params.gamma;
    const double c = model.params.c;

    double w_norm2 = 0.0;
    for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
        for (std::size_t j = 0; j < model.support_vectors.size(); ++j) {
            w_norm2 += model.dual_coefficients[i] * model.dual_coefficients[j] *
                       melsweep::svm::rbf_kernel(model.support_vectors[i], model.support_vectors[j],
                                                 gamma);
        }
    }

    double alpha_sum = 0.0;
    for (const double coef : model.dual_coefficients) alpha_sum += std::abs(coef);

    double hinge = 0.0;
    for (std::size_t t = 0; t < features.size(); ++t) {
        const double margin = labels[t] * model.score_standardized(features[t]);
        hinge += std::max(0.0, 1.0 - margin);
    }

    SvmObjectives obj;
    obj.primal = 0.5 * w_norm2 + c * hinge;
    obj.dual = alpha_sum - 0.5 * w_norm2;
    obj.gap = obj.primal - obj.dual;
    return obj;
}

double max_kkt_violation(const melsweep::svm::TrainedSvm& model,
                         const std::vector<std::vector<double>>& features,
                         const std::vector<int>& labels) {
    const double c = model.params.c;
    double worst = 0.0;
    for (std::size_t t = 0; t < features.size(); ++t) {
        double alpha = 0.0;
        for (std::size_t s = 0; s < model.support_vectors.size(); ++s) {
            if (model.support_vectors[s] == features[t]) {
                alpha = std::abs(model.dual_coefficients[s]);
                break;
            }
        }
        const double margin = labels[t] * model.score_standardized(features[t]);
        double violation = 0.0;
        if (alpha <= 0.0) violation = std::max(0.0, 1.0 - margin);
        else if (alpha >= c) violation = std::max(0.0, margin - 1.0);
        else violation = std::abs(margin - 1.0);
        worst = std::max(worst, violation);
    }
    return worst;
}

}  // namespace oracles
