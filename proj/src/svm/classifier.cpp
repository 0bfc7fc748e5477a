#include "melsweep/svm/classifier.hpp"

#include <stdexcept>

namespace melsweep::svm {

void SvmClassifier::fit(const std::vector<mfcc::FeatureVector>& train) {
    if (train.empty()) throw std::invalid_argument("SvmClassifier::fit: empty training set");

    std::vector<std::vector<double>> raw;
    std::vector<int> labels;
    raw.reserve(train.size());
    labels.reserve(train.size());
    for (const auto& fv : train) {
        if (!fv.label.has_value())
            throw std::invalid_argument("SvmClassifier::fit: unlabeled training example");
        raw.push_back(fv.values);
        labels.push_back(*fv.label == 1 ? 1 : -1);
    }

    Standardizer standardizer =
        standardize_ ? Standardizer::fit(raw) : Standardizer::identity(raw[0].size());
    std::vector<std::vector<double>> scaled;
    scaled.reserve(raw.size());
    for (const auto& v : raw) scaled.push_back(standardizer.apply(v));

    model_ = train_svm(scaled, labels, params_);
    model_.standardizer = std::move(standardizer);
    fitted_ = true;
}

double SvmClassifier::score(const mfcc::FeatureVector& v) const {
    if (!fitted_) throw std::logic_error("SvmClassifier::score: model not fitted");
    return model_.score(v.values);
}

const TrainedSvm& SvmClassifier::model() const {
    if (!fitted_) throw std::logic_error("SvmClassifier::model: model not fitted");
    return model_;
}

}  // namespace melsweep::svm
