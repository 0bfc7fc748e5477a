#include "melsweep/sweep/sweep.hpp"

#include <chrono>
#include <stdexcept>
#include <thread>

#include "melsweep/common/text.hpp"

namespace melsweep::sweep {

std::string to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::num_coefficients: return "num_coefficients";
        case SweepParameter::frame_length_ms: return "frame_length_ms";
        case SweepParameter::hop_length_ms: return "hop_length_ms";
    }
    return "?";
}

SweepParameter sweep_parameter_from_string(const std::string& name) {
    if (name == "num_coefficients" || name == "coefficients") return SweepParameter::num_coefficients;
    if (name == "frame_length_ms" || name == "frame") return SweepParameter::frame_length_ms;
    if (name == "hop_length_ms" || name == "hop") return SweepParameter::hop_length_ms;
    throw std::invalid_argument("unknown sweep parameter: " + name);
}

mfcc::MfccConfig NamedCombination::apply_to(mfcc::MfccConfig base) const {
    if (frame_length_ms) base.frame_length_ms = *frame_length_ms;
    if (hop_length_ms) base.hop_length_ms = *hop_length_ms;
    if (num_coefficients) base.num_coefficients = *num_coefficients;
    return base;
}

std::vector<NamedCombination> preset_combinations() {
    return {
        {"optimized", 25.0, 5.0, 30},
        {"default", 25.0, 10.0, 13},
        {"worst", 800.0, 500.0, 80},
    };
}

mfcc::FeatureVector FeatureCache::get_or_compute(const std::string& segment_id,
                                                 const mfcc::MfccConfig& cfg,
                                                 const std::function<mfcc::FeatureVector()>& compute) {
    const std::string canonical = cfg.canonical_string();
    const std::string key = segment_id + "\x1f" + hex64(cfg.digest());
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (const auto it = map_.find(key); it != map_.end()) {
            if (it->second.canonical_config != canonical)
                throw std::logic_error("feature cache digest collision for segment " + segment_id);
            return it->second.features;
        }
    }
    mfcc::FeatureVector features = compute();
    extractions_.fetch_add(1);
    std::lock_guard<std::mutex> lock(mutex_);
    const auto [it, inserted] = map_.try_emplace(key, Entry{canonical, features});
    if (!inserted && it->second.canonical_config != canonical)
        throw std::logic_error("feature cache digest collision for segment " + segment_id);
    return it->second.features;
}

std::size_t FeatureCache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return map_.size();
}

std::vector<mfcc::FeatureVector> SegmentCorpus::features_for(const mfcc::MfccConfig& cfg) const {
    cfg.validate();
    std::optional<mfcc::MfccExtractor> extractor;  // built only on a cache miss
    std::vector<mfcc::FeatureVector> out;
    out.reserve(items_.size());
    for (const Item& item : items_) {
        mfcc::FeatureVector fv = cache_->get_or_compute(item.id, cfg, [&extractor, &cfg, &item] {
            if (!extractor) extractor.emplace(cfg);
            return extractor->extract_pooled(item.samples);
        });
        fv.label = item.label;
        fv.group = item.group;
        out.push_back(std::move(fv));
    }
    return out;
}

namespace {

struct GridPoint {
    std::string name;
    std::optional<double> value;
    mfcc::MfccConfig config;
};

SweepResult evaluate_point(const SegmentCorpus& corpus, const GridPoint& point,
                           const svm::Classifier& prototype, const SweepSettings& settings) {
    const mfcc::MfccConfig& cfg = point.config;
    SweepResult result;
    result.point_name = point.name;
    result.param_value = point.value;
    result.config = cfg;
    const auto start = std::chrono::steady_clock::now();
    try {
        cfg.validate();
        const auto features = corpus.features_for(cfg);
        auto record = eval::cross_validate(features, prototype, settings.eval, settings.group_filter);
        result.warnings = record.warnings;
        result.metrics = std::move(record);
    } catch (const std::exception& e) {
        result.failure_reason = e.what();
    }
    result.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

// Bounded worker pool over independent points; results land in grid order.
std::vector<SweepResult> run_points(const SegmentCorpus& corpus, const std::vector<GridPoint>& points,
                                    const svm::Classifier& prototype, const SweepSettings& settings) {
    std::vector<SweepResult> results(points.size());
    const int jobs = std::max(1, std::min<int>(settings.jobs, static_cast<int>(points.size())));
    if (jobs == 1) {
        for (std::size_t p = 0; p < points.size(); ++p) {
            results[p] = evaluate_point(corpus, points[p], prototype, settings);
        }
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (std::size_t p = next.fetch_add(1); p < points.size(); p = next.fetch_add(1)) {
                results[p] = evaluate_point(corpus, points[p], prototype, settings);
            }
        });
    }
    for (auto& t : workers) t.join();
    return results;
}

}  // namespace

std::vector<SweepResult> sweep_axis(const SegmentCorpus& corpus, const GridAxis& axis,
                                    const mfcc::MfccConfig& base, const svm::Classifier& prototype,
                                    const SweepSettings& settings) {
    if (axis.values.empty()) throw std::invalid_argument("sweep_axis: empty value list");
    for (std::size_t i = 1; i < axis.values.size(); ++i) {
        if (axis.values[i] <= axis.values[i - 1])
            throw std::invalid_argument("sweep_axis: values must be strictly increasing");
    }

    std::vector<GridPoint> points;
    points.reserve(axis.values.size());
    for (const double value : axis.values) {
        GridPoint point;
        point.config = base;
        point.value = value;
        std::string name = to_string(axis.parameter) + "=";
        switch (axis.parameter) {
            case SweepParameter::num_coefficients:
                point.config.num_coefficients = static_cast<int>(value);
                name += std::to_string(point.config.num_coefficients);
                break;
            case SweepParameter::frame_length_ms:
                point.config.frame_length_ms = value;
                name += format_double(value);
                break;
            case SweepParameter::hop_length_ms:
                point.config.hop_length_ms = value;
                name += format_double(value);
                break;
        }
        point.name = std::move(name);
        points.push_back(std::move(point));
    }
    return run_points(corpus, points, prototype, settings);
}

std::vector<SweepResult> run_combinations(const SegmentCorpus& corpus,
                                          const std::vector<NamedCombination>& combos,
                                          const mfcc::MfccConfig& base,
                                          const svm::Classifier& prototype,
                                          const SweepSettings& settings) {
    std::vector<GridPoint> points;
    points.reserve(combos.size());
    for (const auto& combo : combos) {
        points.push_back({combo.name, std::nullopt, combo.apply_to(base)});
    }
    return run_points(corpus, points, prototype, settings);
}

}  // namespace melsweep::sweep
