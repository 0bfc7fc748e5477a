#include "melsweep/eval/metrics.hpp"

#include <algorithm>
#include <numeric>

namespace melsweep::eval {

namespace {

void check_inputs(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.empty() || scores.size() != labels.size())
        throw std::invalid_argument("metrics: scores/labels size mismatch");
    for (const int y : labels) {
        if (y != 0 && y != 1) throw std::invalid_argument("metrics: labels must be 0 or 1");
    }
}

int count_positives(const std::vector<int>& labels) {
    return static_cast<int>(std::count(labels.begin(), labels.end(), 1));
}

}  // namespace

ConfusionMetrics confusion_metrics(const std::vector<double>& scores, const std::vector<int>& labels,
                                   double threshold) {
    check_inputs(scores, labels);
    ConfusionMetrics m;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool predicted = scores[i] > threshold;
        if (predicted && labels[i] == 1) ++m.tp;
        else if (predicted && labels[i] == 0) ++m.fp;
        else if (!predicted && labels[i] == 0) ++m.tn;
        else ++m.fn;
    }
    const int total = m.tp + m.fp + m.tn + m.fn;
    m.accuracy = static_cast<double>(m.tp + m.tn) / total;
    if (m.tp + m.fp == 0) {
        m.precision = 0.0;
        m.degenerate_precision = true;
    } else {
        m.precision = static_cast<double>(m.tp) / (m.tp + m.fp);
    }
    const double recall = m.tp + m.fn > 0 ? static_cast<double>(m.tp) / (m.tp + m.fn) : 0.0;
    m.f1 = m.precision + recall > 0 ? 2.0 * m.precision * recall / (m.precision + recall) : 0.0;
    return m;
}

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    check_inputs(scores, labels);
    const int n_pos = count_positives(labels);
    const int n_neg = static_cast<int>(labels.size()) - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw UndefinedMetricError("auc: needs at least one positive and one negative");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&scores](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Average ranks over tie groups, then the Mann-Whitney rank-sum statistic.
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t t = i; t <= j; ++t) {
            if (labels[order[t]] == 1) rank_sum_pos += avg_rank;
        }
        i = j + 1;
    }
    return (rank_sum_pos - static_cast<double>(n_pos) * (n_pos + 1) / 2.0) /
           (static_cast<double>(n_pos) * n_neg);
}

double eer(const std::vector<double>& scores, const std::vector<int>& labels) {
    check_inputs(scores, labels);
    const int n_pos = count_positives(labels);
    const int n_neg = static_cast<int>(labels.size()) - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw UndefinedMetricError("eer: needs at least one positive and one negative");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&scores](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Walk thresholds upward from -inf (everything predicted positive).
    double prev_fpr = 1.0;
    double prev_fnr = 0.0;
    int false_negatives = 0;   // positives with score <= threshold
    int true_negatives = 0;    // negatives with score <= threshold
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        for (std::size_t t = i; t <= j; ++t) {
            if (labels[order[t]] == 1) ++false_negatives;
            else ++true_negatives;
        }
        const double fpr = static_cast<double>(n_neg - true_negatives) / n_neg;
        const double fnr = static_cast<double>(false_negatives) / n_pos;
        if (fnr == fpr) return fnr;
        if (fnr > fpr) {
            // Crossing lies between the previous and current operating point.
            const double t = (prev_fpr - prev_fnr) / ((fnr - prev_fnr) - (fpr - prev_fpr));
            return prev_fpr + t * (fpr - prev_fpr);
        }
        prev_fpr = fpr;
        prev_fnr = fnr;
        i = j + 1;
    }
    return prev_fpr;  // unreachable: the final point has fnr = 1 >= fpr = 0
}

}  // namespace melsweep::eval
