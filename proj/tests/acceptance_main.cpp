// Acceptance gate: every release-blocking property of the harness, one
// pass/fail line per criterion. Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "melsweep/common/rng.hpp"
#include "melsweep/eval/cross_validate.hpp"
#include "melsweep/harness/corpus.hpp"
#include "melsweep/harness/manifest.hpp"
#include "melsweep/harness/pipeline.hpp"
#include "melsweep/mfcc/pipeline.hpp"
#include "melsweep/svm/classifier.hpp"
#include "melsweep/sweep/sweep.hpp"
#include "oracles.hpp"

namespace {

namespace fs = std::filesystem;
using namespace melsweep;

struct Gate {
    int failures = 0;

    void criterion(int number, const std::string& title, double time_budget_seconds,
                   const std::function<bool(std::string&)>& body) {
        std::string detail;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (time_budget_seconds > 0 && elapsed > time_budget_seconds) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
        }

        std::string timing;
        if (time_budget_seconds > 0) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), " (%.1f s < %.0f s)", elapsed, time_budget_seconds);
            timing = buf;
        } else {
            char buf[64];
            std::snprintf(buf, sizeof(buf), " (%.1f s)", elapsed);
            timing = buf;
        }
        std::printf("[%s] criterion %d: %s%s%s%s\n", ok ? "PASS" : "FAIL", number, title.c_str(),
                    timing.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

std::vector<double> random_signal(Rng& rng, std::size_t length) {
    std::vector<double> s(length);
    for (double& v : s) v = rng.uniform(-1.0, 1.0);
    return s;
}

mfcc::MfccConfig corner(double frame_ms, double hop_ms, int coeffs, int rate) {
    auto cfg = mfcc::MfccConfig::defaults(rate);
    cfg.frame_length_ms = frame_ms;
    cfg.hop_length_ms = hop_ms;
    cfg.num_coefficients = coeffs;
    cfg.num_filters = 80;
    return cfg;
}

bool mfcc_oracle_equivalence(std::string& detail) {
    // Grid corners; the 800 ms corners run at a reduced rate so the naive
    // O(K^2) reference stays inside the time budget (frame/hop/L values are
    // the grid's own).
    const std::vector<mfcc::MfccConfig> configs = {
        corner(25, 5, 13, 16000), corner(25, 5, 80, 16000), corner(25, 500, 30, 16000),
        corner(800, 5, 13, 2000), corner(800, 500, 80, 2000)};

    Rng rng(2024);
    double worst = 0.0;
    for (const auto& cfg : configs) {
        const auto n = static_cast<std::size_t>(cfg.frame_samples());
        const auto m = static_cast<std::size_t>(cfg.hop_samples());
        const mfcc::MfccExtractor extractor(cfg);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t length = n + m * static_cast<std::size_t>(rng.range(2, 6)) +
                                       static_cast<std::size_t>(rng.range(0, static_cast<int>(m) - 1));
            const auto samples = random_signal(rng, length);
            const auto impl = extractor.extract(samples);
            const auto reference = oracles::literal_mfcc(samples, cfg);
            if (static_cast<std::size_t>(impl.frame_count) != reference.size()) {
                detail = "frame count mismatch";
                return false;
            }
            for (int i = 0; i < impl.frame_count; ++i) {
                double row_scale = 1e-3;
                for (const double v : reference[static_cast<std::size_t>(i)])
                    row_scale = std::max(row_scale, std::abs(v));
                for (int c = 0; c < impl.num_coefficients; ++c) {
                    const double ref = reference[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
                    const double diff = std::abs(impl.row(i)[static_cast<std::size_t>(c)] - ref);
                    const double rel = diff / std::max(std::abs(ref), 1e-6 * row_scale);
                    worst = std::max(worst, rel);
                }
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max relative deviation %.2e (tolerance 1e-6)", worst);
    detail = buf;
    return worst <= 1e-6;
}

bool fft_correctness(std::string& detail) {
    Rng rng(2025);
    double worst_fft = 0.0;
    double worst_parseval = 0.0;
    for (int k = 4; k <= 16384; k *= 2) {
        const auto frame = random_signal(rng, static_cast<std::size_t>(k));
        std::vector<std::complex<double>> buf(frame.size());
        for (std::size_t i = 0; i < frame.size(); ++i) buf[i] = {frame[i], 0.0};
        mfcc::FftPlan(k).forward(buf);

        const auto reference = oracles::naive_dft(frame, k);
        double max_diff = 0.0;
        double max_mag = 0.0;
        for (std::size_t b = 0; b < buf.size(); ++b) {
            max_diff = std::max(max_diff, std::abs(buf[b] - reference[b]));
            max_mag = std::max(max_mag, std::abs(reference[b]));
        }
        worst_fft = std::max(worst_fft, max_diff / max_mag);

        double time_energy = 0.0;
        for (const double v : frame) time_energy += v * v;
        double freq_energy = 0.0;
        for (const auto& c : buf) freq_energy += std::norm(c);
        worst_parseval = std::max(worst_parseval,
                                  std::abs(freq_energy / k - time_energy) / time_energy);
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "fft vs dft %.2e, parseval %.2e (tolerance 1e-9)", worst_fft,
                  worst_parseval);
    detail = buf;
    return worst_fft <= 1e-9 && worst_parseval <= 1e-9;
}

bool dct_orthogonality(std::string& detail) {
    Rng rng(2026);
    double worst = 0.0;
    for (const int j : {8, 40, 80, 128}) {
        const double value = rng.uniform(-3.0, 3.0);
        const std::vector<double> log_e(static_cast<std::size_t>(j), value);
        const auto coeffs = mfcc::dct_coefficients(log_e, j);
        for (int m = 1; m < j; ++m) {
            worst = std::max(worst, std::abs(coeffs[static_cast<std::size_t>(m)]));
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max |C_m|, m>=1: %.2e (tolerance 1e-9)", worst);
    detail = buf;
    return worst <= 1e-9;
}

bool svm_optimality(std::string& detail) {
    Rng rng(2027);
    double worst_kkt = 0.0;
    double worst_gap = 0.0;
    for (int dataset = 0; dataset < 50; ++dataset) {
        const int n = 2 * rng.range(5, 100);  // up to 200 points
        const int dims = rng.range(2, 20);
        const double separation = rng.uniform(0.3, 4.0);

        std::vector<std::vector<double>> x;
        std::vector<int> y;
        for (int i = 0; i < n; ++i) {
            const int label = i % 2 == 0 ? 1 : -1;
            std::vector<double> v(static_cast<std::size_t>(dims));
            for (double& c : v) c = rng.gaussian() + label * separation / 2.0;
            x.push_back(std::move(v));
            y.push_back(label);
        }

        svm::SvmParams params;        // C = 1, gamma = 0.1
        params.kkt_tolerance = 1e-6;  // train tighter than the 1e-3 gate
        params.max_passes = 5000;
        const auto model = train_svm(x, y, params);
        worst_kkt = std::max(worst_kkt, oracles::max_kkt_violation(model, x, y));
        worst_gap = std::max(worst_gap, std::abs(oracles::svm_objectives(model, x, y).gap));
    }

    // Two-point closed-form duals: clipped at C = 1, interior at C = 10.
    const std::vector<double> x1 = {-1.0};
    const std::vector<double> x2 = {+1.0};
    svm::SvmParams clipped;
    const auto clipped_model = train_svm({x1, x2}, {-1, +1}, clipped);
    const double clipped_err =
        std::abs(std::abs(clipped_model.dual_coefficients[0]) -
                 oracles::two_point_alpha(x1, x2, clipped.gamma, clipped.c));

    svm::SvmParams interior;
    interior.c = 10.0;
    interior.kkt_tolerance = 1e-9;
    const auto interior_model = train_svm({x1, x2}, {-1, +1}, interior);
    const double interior_err =
        std::abs(std::abs(interior_model.dual_coefficients[0]) -
                 oracles::two_point_alpha(x1, x2, interior.gamma, interior.c));

    char buf[128];
    std::snprintf(buf, sizeof(buf), "kkt %.2e, gap %.2e (tolerance 1e-3), 2-point err %.1e / %.1e",
                  worst_kkt, worst_gap, clipped_err, interior_err);
    detail = buf;
    return worst_kkt <= 1e-3 && worst_gap <= 1e-3 && clipped_err <= 1e-12 && interior_err <= 1e-9;
}

bool metric_oracles(std::string& detail) {
    Rng rng(2028);
    double worst_auc = 0.0;
    double worst_eer = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = rng.range(2, 60);
        std::vector<double> scores(static_cast<std::size_t>(n));
        std::vector<int> labels(static_cast<std::size_t>(n));
        const bool quantize = rng.uniform() < 0.5;  // force ties half the time
        for (int i = 0; i < n; ++i) {
            const double s = rng.uniform(-3.0, 3.0);
            scores[static_cast<std::size_t>(i)] = quantize ? std::floor(s * 2.0) / 2.0 : s;
            labels[static_cast<std::size_t>(i)] = i < 1 ? 1 : (i < 2 ? 0 : (rng.uniform() < 0.5 ? 1 : 0));
        }
        worst_auc = std::max(worst_auc, std::abs(eval::auc(scores, labels) -
                                                 oracles::pairwise_auc(scores, labels)));
        worst_eer = std::max(worst_eer, std::abs(eval::eer(scores, labels) -
                                                 oracles::brute_force_eer(scores, labels)));
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "auc dev %.2e, eer dev %.2e (tolerance 1e-12)", worst_auc,
                  worst_eer);
    detail = buf;
    return worst_auc <= 1e-12 && worst_eer <= 1e-12;
}

bool stratification(std::string& detail) {
    Rng rng(2029);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = rng.range(10, 500);
        const double p = rng.uniform(0.05, 0.95);
        std::vector<int> labels(static_cast<std::size_t>(n));
        int positives = 0;
        for (int& label : labels) {
            label = rng.uniform() < p ? 1 : 0;
            positives += label;
        }
        if (positives == 0 || positives == n) continue;
        for (const int k : {2, 5, 10}) {
            const auto plan = eval::stratified_folds(labels, k, rng.next_u64());
            std::vector<int> pos_count(static_cast<std::size_t>(k), 0);
            std::vector<int> neg_count(static_cast<std::size_t>(k), 0);
            for (std::size_t i = 0; i < labels.size(); ++i) {
                (labels[i] == 1 ? pos_count : neg_count)[static_cast<std::size_t>(plan.assignments[i])]++;
            }
            for (int f = 0; f < k; ++f) {
                const int pc = pos_count[static_cast<std::size_t>(f)];
                const int nc = neg_count[static_cast<std::size_t>(f)];
                const int negatives = n - positives;
                if (pc < positives / k || pc > (positives + k - 1) / k) {
                    detail = "positive count off proportional share";
                    return false;
                }
                if (nc < negatives / k || nc > (negatives + k - 1) / k) {
                    detail = "negative count off proportional share";
                    return false;
                }
            }
        }
    }
    detail = "per-fold class counts within 1 of proportional on all tested datasets";
    return true;
}

struct EndToEnd {
    fs::path manifest_path;
    bool ran = false;
    double optimized = 0.0;
    double fallback = 0.0;
    double worst = 0.0;
};

bool synthetic_end_to_end(EndToEnd& state, std::string& detail) {
    harness::SynthSpec spec;  // 200 clips, seed 7, 16 kHz
    const auto dir = state.manifest_path.parent_path();
    fs::create_directories(dir);
    state.manifest_path = harness::generate_corpus(spec, dir);

    const auto manifest = harness::parse_manifest(state.manifest_path);
    const audio::IngestConfig ingest;
    const auto corpus = harness::build_corpus(manifest, ingest, 2);

    const auto base = mfcc::MfccConfig::defaults(ingest.target_sample_rate);
    sweep::SweepSettings settings;
    settings.eval.k = 10;
    settings.eval.seed = 42;
    const svm::SvmClassifier classifier;
    const auto results =
        run_combinations(corpus, sweep::preset_combinations(), base, classifier, settings);

    for (const auto& r : results) {
        if (!r.ok()) {
            detail = r.point_name + " failed: " + r.failure_reason;
            return false;
        }
        if (r.point_name == "optimized") state.optimized = r.metrics->accuracy.mean;
        if (r.point_name == "default") state.fallback = r.metrics->accuracy.mean;
        if (r.point_name == "worst") state.worst = r.metrics->accuracy.mean;
    }
    state.ran = true;

    char buf[128];
    std::snprintf(buf, sizeof(buf), "accuracy optimized %.3f / default %.3f / worst %.3f",
                  state.optimized, state.fallback, state.worst);
    detail = buf;
    return state.optimized >= 0.90 && state.optimized - state.worst >= 0.05;
}

bool determinism(const EndToEnd& state, std::string& detail) {
    if (!state.ran) {
        detail = "skipped: end-to-end corpus unavailable";
        return false;
    }
    const auto dir = state.manifest_path.parent_path().parent_path();
    const std::string cli = MELSWEEP_CLI_PATH;
    const auto run = [&](const std::string& out) {
        const std::string cmd = cli + " combos --manifest " + state.manifest_path.string() +
                                " --seed 42 --out " + (dir / out).string() + " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    if (run("det1") != 0 || run("det2") != 0) {
        detail = "cli run failed";
        return false;
    }
    for (const char* name : {"results.csv", "results.json", "fold_metrics.csv", "summary.txt"}) {
        std::ifstream a(dir / "det1" / name, std::ios::binary);
        std::ifstream b(dir / "det2" / name, std::ios::binary);
        const std::string ta((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
        const std::string tb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
        if (ta.empty() || ta != tb) {
            detail = std::string(name) + " differs between identically seeded runs";
            return false;
        }
    }
    detail = "results files byte-identical across reruns";
    return true;
}

}  // namespace

int main() {
    const auto scratch = fs::temp_directory_path() / "melsweep_acceptance";
    fs::remove_all(scratch);
    fs::create_directories(scratch);

    Gate gate;
    gate.criterion(1, "MFCC pipeline matches the literal formula transcription", 60.0,
                   mfcc_oracle_equivalence);
    gate.criterion(2, "radix-2 FFT matches the naive DFT and Parseval", 30.0, fft_correctness);
    gate.criterion(3, "DCT of constant energies has no higher coefficients", 0.0,
                   dct_orthogonality);
    gate.criterion(4, "SMO reaches KKT optimality with a closed dual gap", 60.0, svm_optimality);
    gate.criterion(5, "AUC and EER equal their pairwise/brute-force oracles", 0.0, metric_oracles);
    gate.criterion(6, "stratified folds stay within 1 of proportional", 0.0, stratification);

    EndToEnd state;
    state.manifest_path = scratch / "corpus" / "manifest.csv";
    gate.criterion(7, "synthetic corpus: optimized combination wins by 5+ points", 180.0,
                   [&state](std::string& detail) { return synthetic_end_to_end(state, detail); });
    gate.criterion(8, "identically seeded combos runs are byte-identical", 0.0,
                   [&state](std::string& detail) { return determinism(state, detail); });

    if (gate.failures == 0) {
        std::printf("acceptance: all 8 criteria passed\n");
    } else {
        std::printf("acceptance: %d criterion(s) failed\n", gate.failures);
    }
    return gate.failures == 0 ? 0 : 1;
}
