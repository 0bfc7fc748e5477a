#pragma once

#include <stdexcept>
#include <vector>

namespace melsweep::eval {

// AUC and EER need both classes present.
class UndefinedMetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ConfusionMetrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double f1 = 0.0;
    bool degenerate_precision = false;  // no predicted positives
    int tp = 0, fp = 0, tn = 0, fn = 0;
};

// Predict positive iff score > threshold (ties count as negative).
// Precision with zero predicted positives is reported as 0 and flagged.
ConfusionMetrics confusion_metrics(const std::vector<double>& scores, const std::vector<int>& labels,
                                   double threshold = 0.0);

// Mann-Whitney statistic via average ranks: the probability that a random
// positive outscores a random negative, ties counting one half.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

// Threshold sweep over the sorted unique scores; when no operating point
// has FPR == FNR exactly, the crossing is linearly interpolated between the
// two adjacent points.
double eer(const std::vector<double>& scores, const std::vector<int>& labels);

}  // namespace melsweep::eval
