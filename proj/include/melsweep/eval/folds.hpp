#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace melsweep::eval {

struct FoldPlan {
    int k = 10;
    std::vector<int> assignments;  // fold index per example
    std::uint64_t seed = 0;
    std::vector<std::string> warnings;

    std::vector<std::size_t> test_indices(int fold) const;
    std::vector<std::size_t> train_indices(int fold) const;
};

// Within each class, examples are shuffled by a generator seeded from
// `seed` and dealt round-robin to folds, so per-fold class counts deviate
// from proportionality by at most one. k > a class count leaves that class
// absent from some folds; this is flagged as a warning, not an error.
FoldPlan stratified_folds(const std::vector<int>& labels, int k, std::uint64_t seed);

}  // namespace melsweep::eval
