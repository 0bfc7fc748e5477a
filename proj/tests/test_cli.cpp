#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const std::string kCli = MELSWEEP_CLI_PATH;

struct RunResult {
    int exit_code = 0;
    std::string stdout_text;
    std::string stderr_text;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

RunResult run_cli(const fs::path& dir, const std::string& args, const std::string& env_prefix = "") {
    const auto out_file = dir / "stdout.txt";
    const auto err_file = dir / "stderr.txt";
    const std::string cmd =
        env_prefix + kCli + " " + args + " > " + out_file.string() + " 2> " + err_file.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.stdout_text = slurp(out_file);
    r.stderr_text = slurp(err_file);
    return r;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("melsweep_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (const char c : text) n += c == '\n' ? 1 : 0;
    return n;
}

// One small corpus shared by the suite; synthesizing it once keeps the
// integration tests quick.
const fs::path& shared_corpus() {
    static const fs::path dir = [] {
        const auto d = scratch("corpus");
        const auto r = run_cli(d, "synth --out " + (d / "c").string() + " --seed 11 --clips 16");
        REQUIRE(r.exit_code == 0);
        return d;
    }();
    return dir;
}

std::string manifest_arg() { return (shared_corpus() / "c" / "manifest.csv").string(); }

// Small analysis config so the 800 ms grid points stay cheap.
std::string small_config(const fs::path& dir) {
    const auto path = dir / "config.json";
    std::ofstream out(path);
    out << R"({
  "eval": {"k": 4, "seed": 9},
  "sweep": {
    "axes": [
      {"parameter": "hop_length_ms", "values": [5, 25, 50, 100, 200, 300, 400, 500],
       "base": {"frame_length_ms": 25, "num_coefficients": 30}}
    ]
  }
})";
    out.close();
    return path.string();
}

}  // namespace

TEST_CASE("cli: preprocess writes segments and a segment table") {
    const auto dir = scratch("preprocess");
    const auto r = run_cli(dir, "preprocess --manifest " + manifest_arg() + " --out " +
                                    (dir / "out").string());
    CHECK(r.exit_code == 0);
    const auto table = slurp(dir / "out" / "segments.csv");
    CHECK(table.rfind("id,path,label,group,duration_seconds\n", 0) == 0);
    CHECK(count_lines(table) >= 16);  // one 3 s segment per clip, header included
    CHECK(fs::exists(dir / "out" / "segments" / "syn000_0.wav"));
}

TEST_CASE("cli: extract writes the feature dump") {
    const auto dir = scratch("extract");
    const auto r = run_cli(dir, "extract --manifest " + manifest_arg() + " --out " +
                                    (dir / "out").string());
    CHECK(r.exit_code == 0);
    const auto csv = slurp(dir / "out" / "features.csv");
    CHECK(csv.rfind("id,label,group,c0,", 0) == 0);
    CHECK(csv.find("c12") != std::string::npos);  // 13 default coefficients
    CHECK(csv.find("c13") == std::string::npos);
    CHECK(count_lines(csv) >= 16);
}

TEST_CASE("cli: hop sweep emits the full grid") {
    const auto dir = scratch("sweep");
    const auto r = run_cli(dir, "sweep --axis hop --manifest " + manifest_arg() + " --config " +
                                    small_config(dir) + " --out " + (dir / "out").string());
    CHECK(r.exit_code == 0);

    const auto results = slurp(dir / "out" / "results.csv");
    CHECK(count_lines(results) == 1 + 8 * 5);  // 8 grid points x 5 metrics
    const auto series = slurp(dir / "out" / "series_c_hop_length_ms.csv");
    CHECK(count_lines(series) == 1 + 8);  // the 8-point hop grid
    CHECK(fs::exists(dir / "out" / "results.json"));
    CHECK(fs::exists(dir / "out" / "fold_metrics.csv"));
    CHECK(fs::exists(dir / "out" / "summary.txt"));
}

TEST_CASE("cli: combos reports the three named combinations") {
    const auto dir = scratch("combos");
    const auto r = run_cli(dir, "combos --manifest " + manifest_arg() + " --config " +
                                    small_config(dir) + " --out " + (dir / "out").string());
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("optimized") != std::string::npos);
    CHECK(r.stdout_text.find("default") != std::string::npos);
    CHECK(r.stdout_text.find("worst") != std::string::npos);
    CHECK(r.stdout_text.find("optimized vs worst") != std::string::npos);

    const auto results = slurp(dir / "out" / "results.csv");
    CHECK(count_lines(results) == 1 + 3 * 5);
    const auto json = slurp(dir / "out" / "results.json");
    CHECK(json.find("\"accuracy_improvement\"") != std::string::npos);
}

TEST_CASE("cli: evaluate restricted to one group") {
    const auto dir = scratch("group");
    const auto full = run_cli(dir, "evaluate --manifest " + manifest_arg() + " --config " +
                                       small_config(dir) + " --out " + (dir / "full").string());
    CHECK(full.exit_code == 0);
    const auto grouped = run_cli(dir, "evaluate --manifest " + manifest_arg() + " --config " +
                                          small_config(dir) + " --group F --out " +
                                          (dir / "f").string());
    CHECK(grouped.exit_code == 0);

    // The subgroup table has half the test examples of the full run.
    const auto full_folds = slurp(dir / "full" / "fold_metrics.csv");
    const auto f_folds = slurp(dir / "f" / "fold_metrics.csv");
    CHECK(full_folds != f_folds);

    const auto missing = run_cli(dir, "evaluate --manifest " + manifest_arg() + " --group X --out " +
                                          (dir / "x").string());
    CHECK(missing.exit_code == 1);
    CHECK(missing.stderr_text.find("\"error\"") != std::string::npos);
}

TEST_CASE("cli: validation failures exit 1 with machine-readable errors") {
    const auto dir = scratch("errors");

    SUBCASE("bad label in manifest") {
        std::ofstream wav(dir / "a.wav");
        wav << "x";
        wav.close();
        std::ofstream m(dir / "bad.csv");
        m << "id,path,label\nr1,a.wav,2\n";
        m.close();
        const auto r = run_cli(dir, "evaluate --manifest " + (dir / "bad.csv").string());
        CHECK(r.exit_code == 1);
        CHECK(r.stderr_text.find("\"kind\":\"manifest\"") != std::string::npos);
        CHECK(r.stderr_text.find("row 2") != std::string::npos);
    }
    SUBCASE("unknown config key") {
        std::ofstream c(dir / "bad.json");
        c << "{\"mfc\": {}}";
        c.close();
        const auto r = run_cli(dir, "evaluate --manifest " + manifest_arg() + " --config " +
                                        (dir / "bad.json").string());
        CHECK(r.exit_code == 1);
        CHECK(r.stderr_text.find("\"kind\":\"config\"") != std::string::npos);
    }
    SUBCASE("missing required flag") {
        const auto r = run_cli(dir, "sweep --axis hop");
        CHECK(r.exit_code == 1);
        CHECK(r.stderr_text.find("\"error\"") != std::string::npos);
    }
    SUBCASE("unknown subcommand") {
        const auto r = run_cli(dir, "frobnicate");
        CHECK(r.exit_code == 1);
    }
}

TEST_CASE("cli: HARNESS_JOBS is the fallback for --jobs") {
    const auto dir = scratch("jobs");
    const auto r = run_cli(dir, "evaluate --manifest " + manifest_arg() + " --config " +
                                    small_config(dir) + " --out " + (dir / "out").string(),
                           "HARNESS_JOBS=3 ");
    CHECK(r.exit_code == 0);
    const auto json = slurp(dir / "out" / "results.json");
    CHECK(json.find("\"jobs\": 3") != std::string::npos);
}

TEST_CASE("cli: fixed seeds reproduce outputs byte for byte") {
    const auto dir = scratch("determinism");
    const std::string base_args = "combos --manifest " + manifest_arg() + " --config " +
                                  small_config(dir) + " --seed 77 --out ";
    const auto r1 = run_cli(dir, base_args + (dir / "run1").string());
    const auto r2 = run_cli(dir, base_args + (dir / "run2").string());
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    for (const char* name : {"results.csv", "results.json", "fold_metrics.csv", "summary.txt"}) {
        CHECK(slurp(dir / "run1" / name) == slurp(dir / "run2" / name));
        CHECK(!slurp(dir / "run1" / name).empty());
    }
}
