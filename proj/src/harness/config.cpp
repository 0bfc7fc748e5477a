#include "melsweep/harness/config.hpp"

#include <fstream>

#include <json.hpp>

namespace melsweep::harness {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown_keys(const json& obj, const std::string& section,
                         const std::vector<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const auto& a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known)
            throw HarnessConfigError("unknown config key '" + key + "' in section '" + section + "'");
    }
}

template <typename T>
void read_if_present(const json& obj, const char* key, T& out) {
    if (const auto it = obj.find(key); it != obj.end()) out = it->get<T>();
}

sweep::NamedCombination parse_overrides(const json& obj, const std::string& section,
                                        bool expect_name) {
    std::vector<std::string> allowed = {"frame_length_ms", "hop_length_ms", "num_coefficients"};
    if (expect_name) allowed.push_back("name");
    reject_unknown_keys(obj, section, allowed);

    sweep::NamedCombination combo;
    if (expect_name) combo.name = obj.at("name").get<std::string>();
    if (const auto it = obj.find("frame_length_ms"); it != obj.end()) combo.frame_length_ms = it->get<double>();
    if (const auto it = obj.find("hop_length_ms"); it != obj.end()) combo.hop_length_ms = it->get<double>();
    if (const auto it = obj.find("num_coefficients"); it != obj.end()) combo.num_coefficients = it->get<int>();
    return combo;
}

ordered_json overrides_to_json(const sweep::NamedCombination& combo, bool with_name) {
    ordered_json obj;
    if (with_name) obj["name"] = combo.name;
    if (combo.frame_length_ms) obj["frame_length_ms"] = *combo.frame_length_ms;
    if (combo.hop_length_ms) obj["hop_length_ms"] = *combo.hop_length_ms;
    if (combo.num_coefficients) obj["num_coefficients"] = *combo.num_coefficients;
    return obj;
}

}  // namespace

HarnessConfig HarnessConfig::defaults() {
    HarnessConfig cfg;
    cfg.mfcc = mfcc::MfccConfig::defaults(cfg.ingest.target_sample_rate);

    // Stepwise protocol: each axis holds the other two parameters at the
    // values the preceding sections settled on.
    AxisSpec coefficients;
    coefficients.axis.parameter = sweep::SweepParameter::num_coefficients;
    coefficients.axis.values = {13, 20, 30, 40, 50, 60, 70, 80};
    coefficients.base_overrides.frame_length_ms = 25.0;
    coefficients.base_overrides.hop_length_ms = 10.0;

    AxisSpec frame;
    frame.axis.parameter = sweep::SweepParameter::frame_length_ms;
    frame.axis.values = {25, 50, 100, 200, 300, 400, 500, 800};
    frame.base_overrides.hop_length_ms = 10.0;
    frame.base_overrides.num_coefficients = 30;

    AxisSpec hop;
    hop.axis.parameter = sweep::SweepParameter::hop_length_ms;
    hop.axis.values = {5, 25, 50, 100, 200, 300, 400, 500};
    hop.base_overrides.frame_length_ms = 25.0;
    hop.base_overrides.num_coefficients = 30;

    cfg.sweep.axes = {coefficients, frame, hop};
    cfg.sweep.combinations = sweep::preset_combinations();
    return cfg;
}

HarnessConfig HarnessConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw HarnessConfigError("cannot open config: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

HarnessConfig HarnessConfig::from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw HarnessConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw HarnessConfigError("config root must be a JSON object");
    reject_unknown_keys(root, "(root)", {"ingest", "mfcc", "svm", "eval", "sweep", "io"});

    HarnessConfig cfg = defaults();

    if (root.contains("ingest")) {
        const auto& obj = root["ingest"];
        reject_unknown_keys(obj, "ingest",
                            {"target_sample_rate", "segment_seconds", "min_keep_seconds", "silence_frame_ms"});
        read_if_present(obj, "target_sample_rate", cfg.ingest.target_sample_rate);
        read_if_present(obj, "segment_seconds", cfg.ingest.segment_seconds);
        read_if_present(obj, "min_keep_seconds", cfg.ingest.min_keep_seconds);
        read_if_present(obj, "silence_frame_ms", cfg.ingest.silence_frame_ms);
        if (cfg.ingest.target_sample_rate <= 0)
            throw HarnessConfigError("ingest.target_sample_rate must be positive");
        if (cfg.ingest.segment_seconds <= 0 || cfg.ingest.min_keep_seconds <= 0 ||
            cfg.ingest.silence_frame_ms <= 0)
            throw HarnessConfigError("ingest durations must be positive");
        if (cfg.ingest.min_keep_seconds > cfg.ingest.segment_seconds)
            throw HarnessConfigError("ingest.min_keep_seconds must not exceed segment_seconds");
    }

    cfg.mfcc = mfcc::MfccConfig::defaults(cfg.ingest.target_sample_rate);
    if (root.contains("mfcc")) {
        const auto& obj = root["mfcc"];
        reject_unknown_keys(obj, "mfcc",
                            {"num_coefficients", "frame_length_ms", "hop_length_ms", "num_filters",
                             "fmin_hz", "fmax_hz"});
        read_if_present(obj, "num_coefficients", cfg.mfcc.num_coefficients);
        read_if_present(obj, "frame_length_ms", cfg.mfcc.frame_length_ms);
        read_if_present(obj, "hop_length_ms", cfg.mfcc.hop_length_ms);
        read_if_present(obj, "num_filters", cfg.mfcc.num_filters);
        read_if_present(obj, "fmin_hz", cfg.mfcc.fmin_hz);
        read_if_present(obj, "fmax_hz", cfg.mfcc.fmax_hz);
        if (cfg.mfcc.fmax_hz <= 0) cfg.mfcc.fmax_hz = cfg.ingest.target_sample_rate / 2.0;
        try {
            cfg.mfcc.validate();
        } catch (const mfcc::ConfigError& e) {
            throw HarnessConfigError(std::string("mfcc: ") + e.what());
        }
    }

    if (root.contains("svm")) {
        const auto& obj = root["svm"];
        reject_unknown_keys(obj, "svm", {"c", "gamma", "kkt_tolerance", "max_passes", "standardize"});
        read_if_present(obj, "c", cfg.svm.params.c);
        read_if_present(obj, "gamma", cfg.svm.params.gamma);
        read_if_present(obj, "kkt_tolerance", cfg.svm.params.kkt_tolerance);
        read_if_present(obj, "max_passes", cfg.svm.params.max_passes);
        read_if_present(obj, "standardize", cfg.svm.standardize);
        if (cfg.svm.params.c <= 0 || cfg.svm.params.gamma <= 0 || cfg.svm.params.kkt_tolerance <= 0 ||
            cfg.svm.params.max_passes < 1)
            throw HarnessConfigError("svm parameters must be positive");
    }

    if (root.contains("eval")) {
        const auto& obj = root["eval"];
        reject_unknown_keys(obj, "eval", {"k", "seed"});
        read_if_present(obj, "k", cfg.eval.k);
        read_if_present(obj, "seed", cfg.eval.seed);
        if (cfg.eval.k < 2) throw HarnessConfigError("eval.k must be at least 2");
    }

    if (root.contains("sweep")) {
        const auto& obj = root["sweep"];
        reject_unknown_keys(obj, "sweep", {"axes", "combinations"});
        if (obj.contains("axes")) {
            cfg.sweep.axes.clear();
            for (const auto& axis_obj : obj["axes"]) {
                reject_unknown_keys(axis_obj, "sweep.axes[]", {"parameter", "values", "base"});
                AxisSpec spec;
                spec.axis.parameter =
                    sweep::sweep_parameter_from_string(axis_obj.at("parameter").get<std::string>());
                spec.axis.values = axis_obj.at("values").get<std::vector<double>>();
                if (axis_obj.contains("base"))
                    spec.base_overrides = parse_overrides(axis_obj["base"], "sweep.axes[].base", false);
                cfg.sweep.axes.push_back(std::move(spec));
            }
        }
        if (obj.contains("combinations")) {
            cfg.sweep.combinations.clear();
            for (const auto& combo_obj : obj["combinations"]) {
                cfg.sweep.combinations.push_back(
                    parse_overrides(combo_obj, "sweep.combinations[]", true));
            }
        }
    }

    if (root.contains("io")) {
        const auto& obj = root["io"];
        reject_unknown_keys(obj, "io", {"out_dir"});
        read_if_present(obj, "out_dir", cfg.io.out_dir);
    }

    return cfg;
}

std::string HarnessConfig::to_json_text() const {
    ordered_json root;
    root["ingest"] = {{"target_sample_rate", ingest.target_sample_rate},
                      {"segment_seconds", ingest.segment_seconds},
                      {"min_keep_seconds", ingest.min_keep_seconds},
                      {"silence_frame_ms", ingest.silence_frame_ms}};
    root["mfcc"] = {{"num_coefficients", mfcc.num_coefficients},
                    {"frame_length_ms", mfcc.frame_length_ms},
                    {"hop_length_ms", mfcc.hop_length_ms},
                    {"num_filters", mfcc.num_filters},
                    {"fmin_hz", mfcc.fmin_hz},
                    {"fmax_hz", mfcc.fmax_hz}};
    root["svm"] = {{"c", svm.params.c},
                   {"gamma", svm.params.gamma},
                   {"kkt_tolerance", svm.params.kkt_tolerance},
                   {"max_passes", svm.params.max_passes},
                   {"standardize", svm.standardize}};
    root["eval"] = {{"k", eval.k}, {"seed", eval.seed}};

    ordered_json axes = ordered_json::array();
    for (const auto& spec : sweep.axes) {
        ordered_json axis_obj;
        axis_obj["parameter"] = sweep::to_string(spec.axis.parameter);
        axis_obj["values"] = spec.axis.values;
        axis_obj["base"] = overrides_to_json(spec.base_overrides, false);
        axes.push_back(std::move(axis_obj));
    }
    ordered_json combos = ordered_json::array();
    for (const auto& combo : sweep.combinations) combos.push_back(overrides_to_json(combo, true));
    root["sweep"] = {{"axes", std::move(axes)}, {"combinations", std::move(combos)}};
    root["io"] = {{"out_dir", io.out_dir}};
    return root.dump(2) + "\n";
}

const AxisSpec& HarnessConfig::axis_spec(sweep::SweepParameter parameter) const {
    for (const auto& spec : sweep.axes) {
        if (spec.axis.parameter == parameter) return spec;
    }
    throw HarnessConfigError("no axis configured for parameter " + sweep::to_string(parameter));
}

}  // namespace melsweep::harness
