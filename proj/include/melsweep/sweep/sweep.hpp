#pragma once

#include <atomic>
#include <memory>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "melsweep/eval/cross_validate.hpp"
#include "melsweep/mfcc/config.hpp"
#include "melsweep/mfcc/pipeline.hpp"

namespace melsweep::sweep {

enum class SweepParameter { num_coefficients, frame_length_ms, hop_length_ms };

std::string to_string(SweepParameter p);
SweepParameter sweep_parameter_from_string(const std::string& name);

struct GridAxis {
    SweepParameter parameter;
    std::vector<double> values;  // strictly increasing
};

// One of the named frame/hop/coefficient triples; unset fields inherit the
// base config.
struct NamedCombination {
    std::string name;
    std::optional<double> frame_length_ms;
    std::optional<double> hop_length_ms;
    std::optional<int> num_coefficients;

    mfcc::MfccConfig apply_to(mfcc::MfccConfig base) const;
};

// The optimized / default / worst presets.
std::vector<NamedCombination> preset_combinations();

struct SweepResult {
    std::string point_name;  // "frame_length_ms=50" or a combination name
    std::optional<double> param_value;  // the swept value; absent for combinations
    mfcc::MfccConfig config;
    std::optional<eval::MetricsRecord> metrics;  // empty when the point failed
    std::string failure_reason;
    double wall_time_seconds = 0.0;
    std::vector<std::string> warnings;

    bool ok() const { return metrics.has_value(); }
};

// Keyed by (segment id, config digest); the canonical config string is
// stored and verified on every hit so a digest collision cannot alias two
// configurations. Thread safe.
class FeatureCache {
public:
    mfcc::FeatureVector get_or_compute(const std::string& segment_id, const mfcc::MfccConfig& cfg,
                                       const std::function<mfcc::FeatureVector()>& compute);

    std::size_t size() const;
    std::size_t extraction_count() const { return extractions_.load(); }

private:
    struct Entry {
        std::string canonical_config;
        mfcc::FeatureVector features;
    };

    mutable std::mutex mutex_;
    std::unordered_map<std::string, Entry> map_;
    std::atomic<std::size_t> extractions_{0};
};

// Trimmed segments plus their labels; hands out mean-pooled feature vectors
// per config, cache-backed.
class SegmentCorpus {
public:
    struct Item {
        std::string id;
        std::vector<double> samples;
        int sample_rate = 0;
        int label = 0;
        std::optional<std::string> group;
    };

    explicit SegmentCorpus(std::vector<Item> items)
        : items_(std::move(items)), cache_(std::make_unique<FeatureCache>()) {}

    const std::vector<Item>& items() const { return items_; }
    FeatureCache& cache() const { return *cache_; }

    // One FeatureVector per segment, in corpus order.
    std::vector<mfcc::FeatureVector> features_for(const mfcc::MfccConfig& cfg) const;

private:
    std::vector<Item> items_;
    std::unique_ptr<FeatureCache> cache_;
};

struct SweepSettings {
    eval::EvalSettings eval;
    std::optional<std::string> group_filter;
    int jobs = 1;  // grid points run on a bounded worker pool
};

// Re-extracts features with the axis parameter overridden, holding every
// other config field constant, and cross-validates each grid point.
// Infeasible configs become failed results; nothing is silently dropped.
std::vector<SweepResult> sweep_axis(const SegmentCorpus& corpus, const GridAxis& axis,
                                    const mfcc::MfccConfig& base, const svm::Classifier& prototype,
                                    const SweepSettings& settings);

std::vector<SweepResult> run_combinations(const SegmentCorpus& corpus,
                                          const std::vector<NamedCombination>& combos,
                                          const mfcc::MfccConfig& base,
                                          const svm::Classifier& prototype,
                                          const SweepSettings& settings);

}  // namespace melsweep::sweep
