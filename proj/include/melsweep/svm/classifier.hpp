#pragma once

#include <memory>
#include <vector>

#include "melsweep/mfcc/feature.hpp"
#include "melsweep/svm/svm.hpp"

namespace melsweep::svm {

// Binary classifier contract: fit on labeled features, then score new
// vectors with higher = more likely positive (label 1). Any model honoring
// this can drive the evaluation and sweep machinery.
class Classifier {
public:
    virtual ~Classifier() = default;

    virtual void fit(const std::vector<mfcc::FeatureVector>& train) = 0;
    virtual double score(const mfcc::FeatureVector& v) const = 0;

    // Fresh unfitted instance with the same settings, used as a per-fold
    // template by cross-validation.
    virtual std::unique_ptr<Classifier> make_unfitted() const = 0;
};

class SvmClassifier : public Classifier {
public:
    explicit SvmClassifier(SvmParams params = {}, bool standardize = true)
        : params_(params), standardize_(standardize) {}

    void fit(const std::vector<mfcc::FeatureVector>& train) override;
    double score(const mfcc::FeatureVector& v) const override;
    std::unique_ptr<Classifier> make_unfitted() const override {
        return std::make_unique<SvmClassifier>(params_, standardize_);
    }

    bool fitted() const { return fitted_; }
    const TrainedSvm& model() const;

private:
    SvmParams params_;
    bool standardize_;
    bool fitted_ = false;
    TrainedSvm model_;
};

}  // namespace melsweep::svm
