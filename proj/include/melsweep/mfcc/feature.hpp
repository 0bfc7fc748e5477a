#pragma once

#include <optional>
#include <string>
#include <vector>

namespace melsweep::mfcc {

// Mean-pooled coefficients for one segment; the classifier input.
struct FeatureVector {
    std::vector<double> values;
    std::optional<int> label;          // 0 = negative, 1 = pathological
    std::optional<std::string> group;  // e.g. gender

    std::size_t size() const { return values.size(); }
};

}  // namespace melsweep::mfcc
