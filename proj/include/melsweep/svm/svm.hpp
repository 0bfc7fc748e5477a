#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace melsweep::svm {

class DegenerateTrainingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SvmParams {
    double c = 1.0;
    double gamma = 0.1;
    double kkt_tolerance = 1e-3;
    int max_passes = 200;  // iteration budget is max_passes * n pair updates
};

// Per-dimension z-scoring fitted on training data only. Stddevs are floored
// at 1e-12 so constant dimensions map to zero.
struct Standardizer {
    std::vector<double> means;
    std::vector<double> stds;

    static Standardizer fit(const std::vector<std::vector<double>>& train);
    static Standardizer identity(std::size_t dims);

    std::vector<double> apply(std::span<const double> v) const;
};

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma);

// Soft-margin RBF SVM in dual form. Only vectors with alpha > 0 are stored;
// dual_coefficients holds alpha_i * y_i.
struct TrainedSvm {
    std::vector<std::vector<double>> support_vectors;  // standardized space
    std::vector<double> dual_coefficients;
    double bias = 0.0;
    SvmParams params;
    Standardizer standardizer;
    bool converged = true;
    long long iterations = 0;

    // Decision value for a raw (unstandardized) feature vector. Positive
    // means class 1; exact zero is treated as negative by callers.
    double score(std::span<const double> raw) const;
    double score_standardized(std::span<const double> v) const;

    std::string serialize() const;  // versioned JSON text
    static TrainedSvm deserialize(const std::string& text);
};

// SMO with maximal-violating-pair selection (first-order) and lowest-index
// tie-breaks, so training is order-deterministic. Inputs are standardized
// feature vectors and labels in {-1, +1}; requires both classes present.
// On hitting the iteration budget the best-effort model is returned with
// converged = false.
TrainedSvm train_svm(const std::vector<std::vector<double>>& features, const std::vector<int>& labels,
                     const SvmParams& params);

}  // namespace melsweep::svm
