#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace melsweep::harness {

class ManifestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ManifestEntry {
    std::string id;
    std::filesystem::path path;  // resolved against the manifest directory
    int label = 0;               // 1 = pathological
    std::optional<std::string> group;
};

struct Manifest {
    std::string dataset_name;  // manifest file stem
    std::filesystem::path directory;
    bool has_group = false;
    std::vector<ManifestEntry> entries;
};

// CSV with header `id,path,label[,group]`. Rows are validated fail-fast:
// duplicate ids, labels outside {0,1} and missing audio files are reported
// with their row number.
Manifest parse_manifest(const std::filesystem::path& path);

}  // namespace melsweep::harness
