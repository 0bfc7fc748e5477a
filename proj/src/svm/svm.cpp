#include "melsweep/svm/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <unordered_map>

#include <json.hpp>

namespace melsweep::svm {

namespace {

constexpr double kStdFloor = 1e-12;
constexpr double kQuadFloor = 1e-12;

// Kernel rows on demand: full matrix for small problems, row-wise LRU above.
class KernelCache {
public:
    KernelCache(const std::vector<std::vector<double>>& x, double gamma) : x_(x), gamma_(gamma) {
        const std::size_t n = x.size();
        full_ = n <= 4096;
        if (full_) {
            matrix_.resize(n * n);
            for (std::size_t i = 0; i < n; ++i) {
                matrix_[i * n + i] = 1.0;
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double k = rbf_kernel(x[i], x[j], gamma_);
                    matrix_[i * n + j] = k;
                    matrix_[j * n + i] = k;
                }
            }
        } else {
            capacity_ = std::max<std::size_t>(16, (256u << 20) / (sizeof(double) * n));
        }
    }

    const double* row(std::size_t i) {
        if (full_) return matrix_.data() + i * x_.size();
        if (const auto it = rows_.find(i); it != rows_.end()) {
            lru_.splice(lru_.begin(), lru_, it->second.lru_pos);
            return it->second.values.data();
        }
        if (rows_.size() >= capacity_) {
            rows_.erase(lru_.back());
            lru_.pop_back();
        }
        std::vector<double> values(x_.size());
        for (std::size_t j = 0; j < x_.size(); ++j) values[j] = rbf_kernel(x_[i], x_[j], gamma_);
        lru_.push_front(i);
        return rows_.emplace(i, Entry{std::move(values), lru_.begin()}).first->second.values.data();
    }

private:
    struct Entry {
        std::vector<double> values;
        std::list<std::size_t>::iterator lru_pos;
    };

    const std::vector<std::vector<double>>& x_;
    double gamma_;
    bool full_;
    std::vector<double> matrix_;
    std::size_t capacity_ = 0;
    std::unordered_map<std::size_t, Entry> rows_;
    std::list<std::size_t> lru_;
};

}  // namespace

Standardizer Standardizer::fit(const std::vector<std::vector<double>>& train) {
    if (train.empty()) throw std::invalid_argument("Standardizer::fit: empty training set");
    const std::size_t dims = train[0].size();
    Standardizer s;
    s.means.assign(dims, 0.0);
    s.stds.assign(dims, 0.0);
    for (const auto& v : train) {
        if (v.size() != dims) throw DimensionMismatchError("inconsistent feature dimensions");
        for (std::size_t d = 0; d < dims; ++d) s.means[d] += v[d];
    }
    for (double& m : s.means) m /= static_cast<double>(train.size());
    for (const auto& v : train) {
        for (std::size_t d = 0; d < dims; ++d) {
            const double diff = v[d] - s.means[d];
            s.stds[d] += diff * diff;
        }
    }
    for (double& sd : s.stds) sd = std::max(std::sqrt(sd / static_cast<double>(train.size())), kStdFloor);
    return s;
}

Standardizer Standardizer::identity(std::size_t dims) {
    Standardizer s;
    s.means.assign(dims, 0.0);
    s.stds.assign(dims, 1.0);
    return s;
}

std::vector<double> Standardizer::apply(std::span<const double> v) const {
    if (v.size() != means.size()) throw DimensionMismatchError("feature dimension does not match standardizer");
    std::vector<double> out(v.size());
    for (std::size_t d = 0; d < v.size(); ++d) out[d] = (v[d] - means[d]) / stds[d];
    return out;
}

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
    if (a.size() != b.size()) throw DimensionMismatchError("kernel arguments differ in dimension");
    double dist2 = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        dist2 += diff * diff;
    }
    return std::exp(-gamma * dist2);
}

TrainedSvm train_svm(const std::vector<std::vector<double>>& features, const std::vector<int>& labels,
                     const SvmParams& params) {
    const std::size_t n = features.size();
    if (n == 0 || labels.size() != n) throw std::invalid_argument("train_svm: features/labels size mismatch");
    const std::size_t dims = features[0].size();
    bool has_pos = false;
    bool has_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (features[i].size() != dims) throw DimensionMismatchError("inconsistent feature dimensions");
        if (labels[i] == 1) has_pos = true;
        else if (labels[i] == -1) has_neg = true;
        else throw std::invalid_argument("train_svm: labels must be -1 or +1");
    }
    if (!has_pos || !has_neg)
        throw DegenerateTrainingError("training set contains a single class");
    if (params.c <= 0 || params.gamma <= 0 || params.kkt_tolerance <= 0 || params.max_passes < 1)
        throw std::invalid_argument("train_svm: params must be positive");

    const double c = params.c;
    const double tol = params.kkt_tolerance;
    KernelCache cache(features, params.gamma);

    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);  // gradient of 1/2 a'Qa - e'a at a = 0

    const long long max_iterations = static_cast<long long>(params.max_passes) * static_cast<long long>(n);
    long long iterations = 0;
    bool converged = false;
    double final_up = 0.0;
    double final_low = 0.0;

    while (iterations < max_iterations) {
        // Maximal violating pair; ties resolved toward the lowest index.
        int i = -1;
        int j = -1;
        double up_value = -std::numeric_limits<double>::infinity();
        double low_value = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -labels[t] * grad[t];
            const bool in_up = (labels[t] == 1 && alpha[t] < c) || (labels[t] == -1 && alpha[t] > 0);
            const bool in_low = (labels[t] == 1 && alpha[t] > 0) || (labels[t] == -1 && alpha[t] < c);
            if (in_up && v > up_value) {
                up_value = v;
                i = static_cast<int>(t);
            }
            if (in_low && v < low_value) {
                low_value = v;
                j = static_cast<int>(t);
            }
        }
        final_up = up_value;
        final_low = low_value;
        if (i < 0 || j < 0 || up_value - low_value <= tol) {
            converged = true;
            break;
        }

        const auto ui = static_cast<std::size_t>(i);
        const auto uj = static_cast<std::size_t>(j);
        const double* row_i = cache.row(ui);
        const double* row_j = cache.row(uj);
        const double k_ii = row_i[ui];
        const double k_jj = row_j[uj];
        const double k_ij = row_i[uj];
        const double quad = std::max(k_ii + k_jj - 2.0 * k_ij, kQuadFloor);

        const double old_ai = alpha[ui];
        const double old_aj = alpha[uj];
        if (labels[ui] != labels[uj]) {
            const double delta = (-grad[ui] - grad[uj]) / quad;
            const double diff = alpha[ui] - alpha[uj];
            alpha[ui] += delta;
            alpha[uj] += delta;
            if (diff > 0 && alpha[uj] < 0) {
                alpha[uj] = 0;
                alpha[ui] = diff;
            } else if (diff <= 0 && alpha[ui] < 0) {
                alpha[ui] = 0;
                alpha[uj] = -diff;
            }
            if (diff > 0 && alpha[ui] > c) {
                alpha[ui] = c;
                alpha[uj] = c - diff;
            } else if (diff <= 0 && alpha[uj] > c) {
                alpha[uj] = c;
                alpha[ui] = c + diff;
            }
        } else {
            const double delta = (grad[ui] - grad[uj]) / quad;
            const double sum = alpha[ui] + alpha[uj];
            alpha[ui] -= delta;
            alpha[uj] += delta;
            if (sum > c && alpha[ui] > c) {
                alpha[ui] = c;
                alpha[uj] = sum - c;
            } else if (sum <= c && alpha[uj] < 0) {
                alpha[uj] = 0;
                alpha[ui] = sum;
            }
            if (sum > c && alpha[uj] > c) {
                alpha[uj] = c;
                alpha[ui] = sum - c;
            } else if (sum <= c && alpha[ui] < 0) {
                alpha[ui] = 0;
                alpha[uj] = sum;
            }
        }

        const double delta_i = (alpha[ui] - old_ai) * labels[ui];
        const double delta_j = (alpha[uj] - old_aj) * labels[uj];
        for (std::size_t t = 0; t < n; ++t) {
            grad[t] += labels[t] * (row_i[t] * delta_i + row_j[t] * delta_j);
        }
        ++iterations;
    }

    // Bias from free vectors; midpoint of the violating-pair interval when
    // every alpha sits on a bound.
    double bias;
    double free_sum = 0.0;
    int free_count = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > 0 && alpha[t] < c) {
            free_sum += -labels[t] * grad[t];
            ++free_count;
        }
    }
    if (free_count > 0) {
        bias = free_sum / free_count;
    } else {
        bias = (final_up + final_low) / 2.0;
    }

    TrainedSvm model;
    model.params = params;
    model.bias = bias;
    model.converged = converged;
    model.iterations = iterations;
    model.standardizer = Standardizer::identity(dims);
    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > 0) {
            model.support_vectors.push_back(features[t]);
            model.dual_coefficients.push_back(alpha[t] * labels[t]);
        }
    }
    return model;
}

double TrainedSvm::score_standardized(std::span<const double> v) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < support_vectors.size(); ++i) {
        acc += dual_coefficients[i] * rbf_kernel(support_vectors[i], v, params.gamma);
    }
    return acc + bias;
}

double TrainedSvm::score(std::span<const double> raw) const {
    return score_standardized(standardizer.apply(raw));
}

std::string TrainedSvm::serialize() const {
    nlohmann::ordered_json j;
    j["format"] = "melsweep-svm";
    j["version"] = 1;
    j["params"] = {{"c", params.c},
                   {"gamma", params.gamma},
                   {"kkt_tolerance", params.kkt_tolerance},
                   {"max_passes", params.max_passes}};
    j["bias"] = bias;
    j["converged"] = converged;
    j["iterations"] = iterations;
    j["support_vectors"] = support_vectors;
    j["dual_coefficients"] = dual_coefficients;
    j["standardizer"] = {{"means", standardizer.means}, {"stds", standardizer.stds}};
    return j.dump(2);
}

TrainedSvm TrainedSvm::deserialize(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format") != "melsweep-svm" || j.at("version") != 1)
        throw std::invalid_argument("unrecognized SVM model format");
    TrainedSvm model;
    model.params.c = j.at("params").at("c");
    model.params.gamma = j.at("params").at("gamma");
    model.params.kkt_tolerance = j.at("params").at("kkt_tolerance");
    model.params.max_passes = j.at("params").at("max_passes");
    model.bias = j.at("bias");
    model.converged = j.at("converged");
    model.iterations = j.at("iterations");
    model.support_vectors = j.at("support_vectors").get<std::vector<std::vector<double>>>();
    model.dual_coefficients = j.at("dual_coefficients").get<std::vector<double>>();
    model.standardizer.means = j.at("standardizer").at("means").get<std::vector<double>>();
    model.standardizer.stds = j.at("standardizer").at("stds").get<std::vector<double>>();
    return model;
}

}  // namespace melsweep::svm
