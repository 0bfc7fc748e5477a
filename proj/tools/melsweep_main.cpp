// melsweep: MFCC parameter sweep harness for binary voice-pathology
// screening. Subcommands cover corpus synthesis, preprocessing, feature
// extraction, single-config evaluation and the frame/hop/coefficient sweeps.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "melsweep/audio/wav.hpp"
#include "melsweep/common/text.hpp"
#include "melsweep/harness/config.hpp"
#include "melsweep/harness/corpus.hpp"
#include "melsweep/harness/manifest.hpp"
#include "melsweep/harness/pipeline.hpp"
#include "melsweep/harness/report.hpp"
#include "melsweep/svm/classifier.hpp"

namespace {

using namespace melsweep;

struct CommonOpts {
    std::string manifest_path;
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::optional<std::string> group;
};

void add_common_flags(CLI::App* cmd, CommonOpts& opts, bool needs_manifest) {
    auto* m = cmd->add_option("--manifest", opts.manifest_path, "dataset manifest CSV");
    if (needs_manifest) m->required();
    cmd->add_option("--config", opts.config_path, "harness config JSON (defaults when omitted)");
    cmd->add_option("--out", opts.out_dir, "output directory (default: io.out_dir from config)");
    cmd->add_option("--seed", opts.seed, "override eval.seed");
    cmd->add_option("--jobs", opts.jobs, "worker threads (fallback: HARNESS_JOBS, then 1)");
    cmd->add_option("--group", opts.group, "restrict evaluation to one group value");
}

int resolve_jobs(const std::optional<int>& flag) {
    if (flag) return std::max(1, *flag);
    if (const char* env = std::getenv("HARNESS_JOBS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

struct LoadedRun {
    harness::HarnessConfig config;
    harness::Manifest manifest;
    sweep::SegmentCorpus corpus;
    std::filesystem::path out;
    int jobs = 1;
};

harness::HarnessConfig load_config(const CommonOpts& opts) {
    harness::HarnessConfig cfg = opts.config_path.empty()
                                     ? harness::HarnessConfig::defaults()
                                     : harness::HarnessConfig::load(opts.config_path);
    if (opts.seed) cfg.eval.seed = *opts.seed;
    return cfg;
}

LoadedRun load_run(const CommonOpts& opts) {
    harness::HarnessConfig cfg = load_config(opts);
    harness::Manifest manifest = harness::parse_manifest(opts.manifest_path);
    const int jobs = resolve_jobs(opts.jobs);
    sweep::SegmentCorpus corpus = harness::build_corpus(manifest, cfg.ingest, jobs);
    if (corpus.items().empty())
        throw harness::ManifestError("no segments survived preprocessing");
    std::filesystem::path out = opts.out_dir.empty() ? cfg.io.out_dir : opts.out_dir;
    return {std::move(cfg), std::move(manifest), std::move(corpus), std::move(out), jobs};
}

svm::SvmClassifier make_classifier(const harness::HarnessConfig& cfg) {
    return svm::SvmClassifier(cfg.svm.params, cfg.svm.standardize);
}

sweep::SweepSettings make_settings(const LoadedRun& run, const CommonOpts& opts) {
    sweep::SweepSettings settings;
    settings.eval.k = run.config.eval.k;
    settings.eval.seed = run.config.eval.seed;
    settings.group_filter = opts.group;
    settings.jobs = run.jobs;
    return settings;
}

std::string sanitize(std::string name) {
    for (char& c : name) {
        if (c == '#' || c == '/' || c == '\\') c = '_';
    }
    return name;
}

void write_run_outputs(const LoadedRun& run, const harness::RunMetadata& meta,
                       const std::vector<sweep::SweepResult>& results) {
    harness::atomic_write(run.out / "results.csv", harness::results_csv(meta, results));
    harness::atomic_write(run.out / "results.json", harness::results_json(meta, results));
    harness::atomic_write(run.out / "fold_metrics.csv", harness::fold_metrics_csv(meta, results));
    const std::string summary = harness::summary_table(meta, results);
    harness::atomic_write(run.out / "summary.txt", summary);
    std::cout << summary;
}

int cmd_synth(const std::string& out_dir, std::uint64_t seed, int clips, int sample_rate) {
    harness::SynthSpec spec;
    spec.clip_count = clips;
    spec.seed = seed;
    spec.sample_rate = sample_rate;
    const auto manifest = harness::generate_corpus(spec, out_dir);
    std::cout << "wrote " << clips << " clips, manifest: " << manifest.string() << "\n";
    return 0;
}

int cmd_preprocess(const CommonOpts& opts) {
    LoadedRun run = load_run(opts);
    const auto seg_dir = run.out / "segments";
    std::filesystem::create_directories(seg_dir);

    std::string csv = "id,path,label,group,duration_seconds\n";
    for (const auto& item : run.corpus.items()) {
        const std::string filename = sanitize(item.id) + ".wav";
        audio::AudioClip clip{item.samples, item.sample_rate, item.id};
        audio::save_wav16(seg_dir / filename, clip);
        csv += item.id + ",segments/" + filename + "," + std::to_string(item.label) + "," +
               item.group.value_or("") + "," +
               format_double(static_cast<double>(item.samples.size()) / item.sample_rate) + "\n";
    }
    harness::atomic_write(run.out / "segments.csv", csv);
    std::cout << "wrote " << run.corpus.items().size() << " segments under " << run.out.string()
              << "\n";
    return 0;
}

int cmd_extract(const CommonOpts& opts) {
    LoadedRun run = load_run(opts);
    const auto features = run.corpus.features_for(run.config.mfcc);
    std::vector<std::string> ids;
    ids.reserve(run.corpus.items().size());
    for (const auto& item : run.corpus.items()) ids.push_back(item.id);
    harness::atomic_write(run.out / "features.csv",
                          harness::features_csv(ids, features, run.manifest.has_group));
    std::cout << "wrote " << features.size() << " feature vectors to "
              << (run.out / "features.csv").string() << "\n";
    return 0;
}

int cmd_evaluate(const CommonOpts& opts) {
    LoadedRun run = load_run(opts);
    const auto classifier = make_classifier(run.config);
    const auto settings = make_settings(run, opts);

    sweep::SweepResult result;
    result.point_name = "config";
    result.config = run.config.mfcc;
    const auto features = run.corpus.features_for(run.config.mfcc);
    result.metrics = eval::cross_validate(features, classifier, settings.eval, settings.group_filter);
    result.warnings = result.metrics->warnings;

    harness::RunMetadata meta{run.manifest.dataset_name, "evaluate", settings.eval.seed,
                              settings.eval.k, run.jobs};
    write_run_outputs(run, meta, {result});
    return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& axis_name) {
    LoadedRun run = load_run(opts);
    const auto parameter = sweep::sweep_parameter_from_string(axis_name);
    const harness::AxisSpec& spec = run.config.axis_spec(parameter);

    const mfcc::MfccConfig base = spec.base_overrides.apply_to(run.config.mfcc);
    const auto classifier = make_classifier(run.config);
    const auto settings = make_settings(run, opts);
    const auto results = sweep_axis(run.corpus, spec.axis, base, classifier, settings);

    harness::RunMetadata meta{run.manifest.dataset_name, sweep::to_string(parameter),
                              settings.eval.seed, settings.eval.k, run.jobs};
    write_run_outputs(run, meta, results);
    const std::string series_name =
        "series_" + sanitize(run.manifest.dataset_name) + "_" + sweep::to_string(parameter) + ".csv";
    harness::atomic_write(run.out / series_name, harness::plot_series_csv(results));
    return 0;
}

int cmd_combos(const CommonOpts& opts) {
    LoadedRun run = load_run(opts);
    const auto classifier = make_classifier(run.config);
    const auto settings = make_settings(run, opts);
    const auto results = run_combinations(run.corpus, run.config.sweep.combinations, run.config.mfcc,
                                          classifier, settings);
    harness::RunMetadata meta{run.manifest.dataset_name, "combinations", settings.eval.seed,
                              settings.eval.k, run.jobs};
    write_run_outputs(run, meta, results);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MFCC parameter sweep harness for voice pathology screening"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "0.1.0");

    CommonOpts opts;

    auto* synth = app.add_subcommand("synth", "generate the bundled synthetic demo corpus");
    std::string synth_out = "synth_corpus";
    std::uint64_t synth_seed = 7;
    int synth_clips = 200;
    int synth_rate = 16000;
    synth->add_option("--out", synth_out, "corpus directory");
    synth->add_option("--seed", synth_seed, "generator seed");
    synth->add_option("--clips", synth_clips, "number of clips");
    synth->add_option("--rate", synth_rate, "sample rate in Hz");

    auto* preprocess = app.add_subcommand("preprocess", "decode, segment and trim a dataset");
    add_common_flags(preprocess, opts, true);

    auto* extract = app.add_subcommand("extract", "write per-segment feature vectors");
    add_common_flags(extract, opts, true);

    auto* evaluate = app.add_subcommand("evaluate", "cross-validate the configured MFCC setup");
    add_common_flags(evaluate, opts, true);

    auto* sweep_cmd = app.add_subcommand("sweep", "sweep one parameter axis");
    std::string axis_name;
    sweep_cmd->add_option("--axis", axis_name, "coefficients | frame | hop")->required();
    add_common_flags(sweep_cmd, opts, true);

    auto* combos = app.add_subcommand("combos", "evaluate the named parameter combinations");
    add_common_flags(combos, opts, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        std::cerr << harness::error_json(1, "usage", e.what());
        return 1;
    }

    try {
        if (synth->parsed()) return cmd_synth(synth_out, synth_seed, synth_clips, synth_rate);
        if (preprocess->parsed()) return cmd_preprocess(opts);
        if (extract->parsed()) return cmd_extract(opts);
        if (evaluate->parsed()) return cmd_evaluate(opts);
        if (sweep_cmd->parsed()) return cmd_sweep(opts, axis_name);
        if (combos->parsed()) return cmd_combos(opts);
    } catch (const harness::ManifestError& e) {
        std::cerr << harness::error_json(1, "manifest", e.what());
        return 1;
    } catch (const harness::HarnessConfigError& e) {
        std::cerr << harness::error_json(1, "config", e.what());
        return 1;
    } catch (const mfcc::ConfigError& e) {
        std::cerr << harness::error_json(1, "config", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << harness::error_json(1, "validation", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::cerr << harness::error_json(2, "runtime", e.what());
        return 2;
    }
    return 0;
}
