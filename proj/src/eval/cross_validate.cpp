#include "melsweep/eval/cross_validate.hpp"

#include <cmath>
#include <stdexcept>

namespace melsweep::eval {

namespace {

Aggregate aggregate(const std::vector<double>& values) {
    Aggregate a;
    a.count = static_cast<int>(values.size());
    if (values.empty()) return a;
    for (const double v : values) a.mean += v;
    a.mean /= a.count;
    double var = 0.0;
    for (const double v : values) var += (v - a.mean) * (v - a.mean);
    a.stddev = std::sqrt(var / a.count);
    return a;
}

std::vector<int> labels_of(const std::vector<mfcc::FeatureVector>& examples) {
    std::vector<int> labels;
    labels.reserve(examples.size());
    for (const auto& fv : examples) {
        if (!fv.label.has_value())
            throw std::invalid_argument("cross_validate: unlabeled example");
        labels.push_back(*fv.label);
    }
    return labels;
}

}  // namespace

MetricsRecord cross_validate(const std::vector<mfcc::FeatureVector>& examples,
                             const svm::Classifier& prototype, const FoldPlan& plan,
                             const FitObserver& observer) {
    if (examples.size() != plan.assignments.size())
        throw std::invalid_argument("cross_validate: fold plan does not cover the dataset");

    MetricsRecord record;
    record.k = plan.k;
    record.warnings = plan.warnings;

    std::vector<double> acc_values, prec_values, f1_values, auc_values, eer_values;
    for (int fold = 0; fold < plan.k; ++fold) {
        const auto train_idx = plan.train_indices(fold);
        const auto test_idx = plan.test_indices(fold);
        if (test_idx.empty()) {
            record.warnings.push_back("fold " + std::to_string(fold) + " has an empty test set");
            continue;
        }
        if (observer) observer(fold, train_idx);

        std::vector<mfcc::FeatureVector> train;
        train.reserve(train_idx.size());
        for (const std::size_t i : train_idx) train.push_back(examples[i]);

        const auto model = prototype.make_unfitted();
        model->fit(train);

        std::vector<double> scores;
        std::vector<int> labels;
        scores.reserve(test_idx.size());
        labels.reserve(test_idx.size());
        for (const std::size_t i : test_idx) {
            scores.push_back(model->score(examples[i]));
            labels.push_back(*examples[i].label);
        }

        FoldMetrics fm;
        fm.test_size = static_cast<int>(test_idx.size());
        fm.confusion = confusion_metrics(scores, labels);
        const bool single_class = fm.confusion.tp + fm.confusion.fn == 0 ||
                                  fm.confusion.fp + fm.confusion.tn == 0;
        if (single_class) {
            record.warnings.push_back("fold " + std::to_string(fold) +
                                      " test set is single-class; AUC/EER skipped");
        } else {
            fm.auc = auc(scores, labels);
            fm.eer = eer(scores, labels);
            auc_values.push_back(*fm.auc);
            eer_values.push_back(*fm.eer);
        }
        acc_values.push_back(fm.confusion.accuracy);
        prec_values.push_back(fm.confusion.precision);
        f1_values.push_back(fm.confusion.f1);
        record.folds.push_back(std::move(fm));
    }

    record.accuracy = aggregate(acc_values);
    record.precision = aggregate(prec_values);
    record.f1 = aggregate(f1_values);
    record.auc = aggregate(auc_values);
    record.eer = aggregate(eer_values);
    return record;
}

MetricsRecord cross_validate(const std::vector<mfcc::FeatureVector>& examples,
                             const svm::Classifier& prototype, const EvalSettings& settings,
                             const std::optional<std::string>& group_filter,
                             const FitObserver& observer) {
    std::vector<mfcc::FeatureVector> subset;
    const std::vector<mfcc::FeatureVector>* data = &examples;
    if (group_filter.has_value()) {
        for (const auto& fv : examples) {
            if (fv.group.has_value() && *fv.group == *group_filter) subset.push_back(fv);
        }
        if (subset.empty())
            throw std::invalid_argument("cross_validate: no examples in group '" + *group_filter + "'");
        data = &subset;
    }
    const FoldPlan plan = stratified_folds(labels_of(*data), settings.k, settings.seed);
    return cross_validate(*data, prototype, plan, observer);
}

}  // namespace melsweep::eval
