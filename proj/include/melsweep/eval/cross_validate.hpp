#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "melsweep/eval/folds.hpp"
#include "melsweep/eval/metrics.hpp"
#include "melsweep/mfcc/feature.hpp"
#include "melsweep/svm/classifier.hpp"

namespace melsweep::eval {

struct Aggregate {
    double mean = 0.0;
    double stddev = 0.0;  // population std over fold values
    int count = 0;        // folds contributing (AUC/EER skip degenerate folds)
};

struct FoldMetrics {
    ConfusionMetrics confusion;
    std::optional<double> auc;  // absent when the test fold is single-class
    std::optional<double> eer;
    int test_size = 0;
};

struct MetricsRecord {
    int k = 0;
    std::vector<FoldMetrics> folds;
    Aggregate accuracy, auc, f1, precision, eer;
    std::vector<std::string> warnings;
};

struct EvalSettings {
    int k = 10;
    std::uint64_t seed = 42;
};

// Invoked at fit time with the example indices the classifier trains on;
// lets tests assert that no test example leaks into fitting.
using FitObserver = std::function<void(int fold, const std::vector<std::size_t>& train_indices)>;

// Per fold: fit a fresh clone of `prototype` on the train portion (the
// classifier handles its own standardization, so scaling statistics never
// see the test fold), score the test portion, compute all metrics. Fold
// values are aggregated as mean and population standard deviation.
MetricsRecord cross_validate(const std::vector<mfcc::FeatureVector>& examples,
                             const svm::Classifier& prototype, const FoldPlan& plan,
                             const FitObserver& observer = nullptr);

// Builds the fold plan from the labels. When `group_filter` is set the
// dataset is restricted to that group before folding; the same seed keeps
// subgroup runs fold-comparable.
MetricsRecord cross_validate(const std::vector<mfcc::FeatureVector>& examples,
                             const svm::Classifier& prototype, const EvalSettings& settings,
                             const std::optional<std::string>& group_filter = std::nullopt,
                             const FitObserver& observer = nullptr);

}  // namespace melsweep::eval
