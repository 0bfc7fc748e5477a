#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "melsweep/mfcc/feature.hpp"
#include "melsweep/sweep/sweep.hpp"

namespace melsweep::harness {

// All writers go through a temp file + rename so partial output never lands
// under the output directory, and floats use shortest round-trip formatting
// so fixed-seed reruns are byte-identical.
void atomic_write(const std::filesystem::path& path, const std::string& content);

struct RunMetadata {
    std::string dataset;
    std::string axis;  // axis name or "combinations"
    std::uint64_t seed = 0;
    int k = 0;
    int jobs = 1;
};

// Long-form aggregate table: dataset,axis,param,value,metric,mean,std.
std::string results_csv(const RunMetadata& meta, const std::vector<sweep::SweepResult>& results);

// Per-fold table: dataset,grid_point,fold,metric,value with aggregate rows
// (fold = mean / std).
std::string fold_metrics_csv(const RunMetadata& meta, const std::vector<sweep::SweepResult>& results);

// Full configs, per-fold values, warnings and seed metadata.
std::string results_json(const RunMetadata& meta, const std::vector<sweep::SweepResult>& results);

// Plain-text table: rows = grid points, columns = the metric suite.
std::string summary_table(const RunMetadata& meta, const std::vector<sweep::SweepResult>& results);

// Plot-ready series: value,accuracy_mean,accuracy_std; failed points are
// missing rows, not zeros.
std::string plot_series_csv(const std::vector<sweep::SweepResult>& results);

// id,label[,group],c0..c{L-1}
std::string features_csv(const std::vector<std::string>& ids,
                         const std::vector<mfcc::FeatureVector>& features, bool with_group);

std::string error_json(int exit_code, const std::string& kind, const std::string& message);

}  // namespace melsweep::harness
