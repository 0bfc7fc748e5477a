#include "melsweep/eval/folds.hpp"

#include <stdexcept>

#include "melsweep/common/rng.hpp"

namespace melsweep::eval {

std::vector<std::size_t> FoldPlan::test_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] == fold) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> FoldPlan::train_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] != fold) out.push_back(i);
    }
    return out;
}

FoldPlan stratified_folds(const std::vector<int>& labels, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("stratified_folds: k must be at least 2");
    if (labels.empty()) throw std::invalid_argument("stratified_folds: empty label list");

    std::vector<std::size_t> positives;
    std::vector<std::size_t> negatives;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 1) positives.push_back(i);
        else if (labels[i] == 0) negatives.push_back(i);
        else throw std::invalid_argument("stratified_folds: labels must be 0 or 1");
    }
    if (positives.empty() || negatives.empty())
        throw std::invalid_argument("stratified_folds: each class needs at least one example");

    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.assignments.assign(labels.size(), 0);

    Rng rng(seed);
    for (auto* cls : {&negatives, &positives}) {
        rng.shuffle(*cls);
        for (std::size_t t = 0; t < cls->size(); ++t) {
            plan.assignments[(*cls)[t]] = static_cast<int>(t % static_cast<std::size_t>(k));
        }
    }

    if (static_cast<std::size_t>(k) > positives.size() || static_cast<std::size_t>(k) > negatives.size()) {
        plan.warnings.push_back("k=" + std::to_string(k) +
                                " exceeds a class count; some folds lack one class");
    }
    return plan;
}

}  // namespace melsweep::eval
