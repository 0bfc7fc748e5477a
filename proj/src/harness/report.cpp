#include "melsweep/harness/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "melsweep/common/text.hpp"

namespace melsweep::harness {

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string point_param(const sweep::SweepResult& r) {
    const auto eq = r.point_name.find('=');
    return eq == std::string::npos ? "combination" : r.point_name.substr(0, eq);
}

std::string point_value(const sweep::SweepResult& r) {
    const auto eq = r.point_name.find('=');
    return eq == std::string::npos ? r.point_name : r.point_name.substr(eq + 1);
}

struct MetricView {
    const char* name;
    const eval::Aggregate* agg;
};

std::vector<MetricView> metric_views(const eval::MetricsRecord& rec) {
    return {{"accuracy", &rec.accuracy},
            {"auc", &rec.auc},
            {"f1", &rec.f1},
            {"precision", &rec.precision},
            {"eer", &rec.eer}};
}

std::string mean_pm_std(const eval::Aggregate& a) {
    char buf[64];
    if (a.count == 0) {
        return "      n/a      ";
    }
    std::snprintf(buf, sizeof(buf), "%.3f +- %.3f", a.mean, a.stddev);
    return buf;
}

nlohmann::ordered_json config_json(const mfcc::MfccConfig& cfg) {
    return {{"num_coefficients", cfg.num_coefficients},
            {"frame_length_ms", cfg.frame_length_ms},
            {"hop_length_ms", cfg.hop_length_ms},
            {"num_filters", cfg.num_filters},
            {"sample_rate", cfg.sample_rate},
            {"fmin_hz", cfg.fmin_hz},
            {"fmax_hz", cfg.fmax_hz}};
}

const sweep::SweepResult* find_point(const std::vector<sweep::SweepResult>& results,
                                     const std::string& name) {
    for (const auto& r : results) {
        if (r.point_name == name && r.ok()) return &r;
    }
    return nullptr;
}

}  // namespace

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write: " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::string results_csv(const RunMetadata& meta, const std::vector<sweep::SweepResult>& results) {
    std::string out = "dataset,axis,param,value,metric,mean,std\n";
    for (const auto& r : results) {
        const std::string prefix =
            meta.dataset + "," + meta.axis + "," + point_param(r) + "," + point_value(r) + ",";
        if (!r.ok()) {
            out += prefix + "failed,,\n";
            continue;
        }
        for (const auto& [name, agg] : metric_views(*r.metrics)) {
            if (agg->count == 0) {
                out += prefix + name + ",,\n";
            } else {
                out += prefix + name + "," + format_double(agg->mean) + "," +
                       format_double(agg->stddev) + "\n";
            }
        }
    }
    return out;
}

std::string fold_metrics_csv(const RunMetadata& meta, const std::vector<sweep::SweepResult>& results) {
    std::string out = "dataset,grid_point,fold,metric,value\n";
    for (const auto& r : results) {
        if (!r.ok()) continue;
        const auto& rec = *r.metrics;
        for (std::size_t f = 0; f < rec.folds.size(); ++f) {
            const auto& fm = rec.folds[f];
            const std::string prefix =
                meta.dataset + "," + r.point_name + "," + std::to_string(f) + ",";
            out += prefix + "accuracy," + format_double(fm.confusion.accuracy) + "\n";
            out += prefix + "precision," + format_double(fm.confusion.precision) + "\n";
            out += prefix + "f1," + format_double(fm.confusion.f1) + "\n";
            if (fm.auc) out += prefix + "auc," + format_double(*fm.auc) + "\n";
            if (fm.eer) out += prefix + "eer," + format_double(*fm.eer) + "\n";
        }
        for (const auto& [name, agg] : metric_views(rec)) {
            if (agg->count == 0) continue;
            out += meta.dataset + "," + r.point_name + ",mean," + name + "," +
                   format_double(agg->mean) + "\n";
            out += meta.dataset + "," + r.point_name + ",std," + name + "," +
                   format_double(agg->stddev) + "\n";
        }
    }
    return out;
}

std::string results_json(const RunMetadata& meta, const std::vector<sweep::SweepResult>& results) {
    nlohmann::ordered_json root;
    root["dataset"] = meta.dataset;
    root["axis"] = meta.axis;
    root["seed"] = meta.seed;
    root["k"] = meta.k;
    root["jobs"] = meta.jobs;
    root["tool_version"] = kToolVersion;

    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        nlohmann::ordered_json p;
        p["point"] = r.point_name;
        if (r.param_value) p["value"] = *r.param_value;
        p["config"] = config_json(r.config);
        p["ok"] = r.ok();
        if (!r.ok()) {
            p["failure_reason"] = r.failure_reason;
        } else {
            const auto& rec = *r.metrics;
            nlohmann::ordered_json metrics;
            for (const auto& [name, agg] : metric_views(rec)) {
                nlohmann::ordered_json m;
                if (agg->count > 0) {
                    m["mean"] = agg->mean;
                    m["std"] = agg->stddev;
                }
                m["folds_counted"] = agg->count;
                nlohmann::ordered_json per_fold = nlohmann::ordered_json::array();
                for (const auto& fm : rec.folds) {
                    if (std::string(name) == "accuracy") per_fold.push_back(fm.confusion.accuracy);
                    else if (std::string(name) == "precision") per_fold.push_back(fm.confusion.precision);
                    else if (std::string(name) == "f1") per_fold.push_back(fm.confusion.f1);
                    else if (std::string(name) == "auc")
                        fm.auc ? per_fold.push_back(*fm.auc) : per_fold.push_back(nullptr);
                    else
                        fm.eer ? per_fold.push_back(*fm.eer) : per_fold.push_back(nullptr);
                }
                m["per_fold"] = std::move(per_fold);
                metrics[name] = std::move(m);
            }
            p["metrics"] = std::move(metrics);
        }
        p["warnings"] = r.warnings;
        points.push_back(std::move(p));
    }
    root["results"] = std::move(points);

    // Relative improvements over the worst and default combinations, when
    // the named presets are all present.
    const auto* optimized = find_point(results, "optimized");
    const auto* worst = find_point(results, "worst");
    const auto* fallback = find_point(results, "default");
    if (optimized && (worst || fallback)) {
        nlohmann::ordered_json improvement;
        const double opt_acc = optimized->metrics->accuracy.mean;
        if (worst) {
            const double worst_acc = worst->metrics->accuracy.mean;
            improvement["vs_worst_absolute"] = opt_acc - worst_acc;
            if (worst_acc > 0) improvement["vs_worst_relative"] = (opt_acc - worst_acc) / worst_acc;
        }
        if (fallback) {
            const double def_acc = fallback->metrics->accuracy.mean;
            improvement["vs_default_absolute"] = opt_acc - def_acc;
            if (def_acc > 0) improvement["vs_default_relative"] = (opt_acc - def_acc) / def_acc;
        }
        root["accuracy_improvement"] = std::move(improvement);
    }
    return root.dump(2) + "\n";
}

std::string summary_table(const RunMetadata& meta, const std::vector<sweep::SweepResult>& results) {
    std::string out;
    out += "dataset: " + meta.dataset + "  axis: " + meta.axis + "  k=" + std::to_string(meta.k) +
           "  seed=" + std::to_string(meta.seed) + "\n\n";
    char line[256];
    std::snprintf(line, sizeof(line), "%-24s %-16s %-16s %-16s %-16s %-16s\n", "grid point",
                  "Accuracy", "AUC", "F1", "Precision", "EER");
    out += line;
    out += std::string(104, '-') + "\n";
    for (const auto& r : results) {
        if (!r.ok()) {
            std::snprintf(line, sizeof(line), "%-24s failed: %s\n", r.point_name.c_str(),
                          r.failure_reason.c_str());
            out += line;
            continue;
        }
        const auto& rec = *r.metrics;
        std::snprintf(line, sizeof(line), "%-24s %-16s %-16s %-16s %-16s %-16s\n",
                      r.point_name.c_str(), mean_pm_std(rec.accuracy).c_str(),
                      mean_pm_std(rec.auc).c_str(), mean_pm_std(rec.f1).c_str(),
                      mean_pm_std(rec.precision).c_str(), mean_pm_std(rec.eer).c_str());
        out += line;
    }

    const auto* optimized = find_point(results, "optimized");
    const auto* worst = find_point(results, "worst");
    const auto* fallback = find_point(results, "default");
    if (optimized && worst && worst->metrics->accuracy.mean > 0) {
        const double opt = optimized->metrics->accuracy.mean;
        const double wst = worst->metrics->accuracy.mean;
        std::snprintf(line, sizeof(line),
                      "\noptimized vs worst:   accuracy %+0.3f absolute, %+0.2f%% relative\n",
                      opt - wst, 100.0 * (opt - wst) / wst);
        out += line;
    }
    if (optimized && fallback && fallback->metrics->accuracy.mean > 0) {
        const double opt = optimized->metrics->accuracy.mean;
        const double def = fallback->metrics->accuracy.mean;
        std::snprintf(line, sizeof(line),
                      "optimized vs default: accuracy %+0.3f absolute, %+0.2f%% relative\n",
                      opt - def, 100.0 * (opt - def) / def);
        out += line;
    }
    return out;
}

std::string plot_series_csv(const std::vector<sweep::SweepResult>& results) {
    std::string out = "value,accuracy_mean,accuracy_std\n";
    for (const auto& r : results) {
        if (!r.ok() || !r.param_value) continue;  // failed points leave gaps
        out += format_double(*r.param_value) + "," + format_double(r.metrics->accuracy.mean) + "," +
               format_double(r.metrics->accuracy.stddev) + "\n";
    }
    return out;
}

std::string features_csv(const std::vector<std::string>& ids,
                         const std::vector<mfcc::FeatureVector>& features, bool with_group) {
    if (ids.size() != features.size())
        throw std::invalid_argument("features_csv: ids/features size mismatch");
    std::string out = "id,label";
    if (with_group) out += ",group";
    const std::size_t dims = features.empty() ? 0 : features[0].size();
    for (std::size_t c = 0; c < dims; ++c) out += ",c" + std::to_string(c);
    out += "\n";

    for (std::size_t i = 0; i < ids.size(); ++i) {
        out += ids[i] + "," + (features[i].label ? std::to_string(*features[i].label) : "");
        if (with_group) out += "," + features[i].group.value_or("");
        for (const double v : features[i].values) out += "," + format_double(v);
        out += "\n";
    }
    return out;
}

std::string error_json(int exit_code, const std::string& kind, const std::string& message) {
    nlohmann::ordered_json j;
    j["error"] = {{"exit_code", exit_code}, {"kind", kind}, {"message", message}};
    return j.dump() + "\n";
}

}  // namespace melsweep::harness
