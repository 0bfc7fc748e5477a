#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "melsweep/audio/types.hpp"
#include "melsweep/mfcc/config.hpp"
#include "melsweep/svm/svm.hpp"
#include "melsweep/sweep/sweep.hpp"

namespace melsweep::harness {

class HarnessConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EvalConfig {
    int k = 10;
    std::uint64_t seed = 42;
};

struct SvmConfig {
    svm::SvmParams params;
    bool standardize = true;
};

// One swept axis plus the fields held constant while sweeping it.
struct AxisSpec {
    sweep::GridAxis axis;
    sweep::NamedCombination base_overrides;  // name unused
};

struct SweepConfig {
    std::vector<AxisSpec> axes;
    std::vector<sweep::NamedCombination> combinations;
};

struct IoConfig {
    std::string out_dir = "out";
};

// The whole harness configuration; loads from a JSON file whose sections
// map 1:1 onto these structs. Unknown keys anywhere are rejected.
struct HarnessConfig {
    audio::IngestConfig ingest;
    mfcc::MfccConfig mfcc;  // fmax_hz <= 0 in the file means Nyquist
    SvmConfig svm;
    EvalConfig eval;
    SweepConfig sweep;
    IoConfig io;

    static HarnessConfig defaults();
    static HarnessConfig load(const std::filesystem::path& path);
    static HarnessConfig from_json_text(const std::string& text);

    std::string to_json_text() const;  // canonical: fixed key order

    const AxisSpec& axis_spec(sweep::SweepParameter parameter) const;
};

}  // namespace melsweep::harness
