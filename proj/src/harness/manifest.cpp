#include "melsweep/harness/manifest.hpp"

#include <fstream>
#include <unordered_set>

#include "melsweep/common/text.hpp"

namespace melsweep::harness {

Manifest parse_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ManifestError("cannot open manifest: " + path.string());

    Manifest manifest;
    manifest.directory = path.has_parent_path() ? path.parent_path() : ".";
    manifest.dataset_name = path.stem().string();
    if (manifest.dataset_name == "manifest" && manifest.directory.has_filename()) {
        manifest.dataset_name = manifest.directory.filename().string();
    }

    std::string line;
    if (!std::getline(in, line)) throw ManifestError("manifest is empty: " + path.string());
    const auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "id" || header[1] != "path" || header[2] != "label")
        throw ManifestError("manifest header must be `id,path,label[,group]`, got: " + line);
    if (header.size() > 4 || (header.size() == 4 && header[3] != "group"))
        throw ManifestError("unexpected manifest columns in header: " + line);
    manifest.has_group = header.size() == 4;

    std::unordered_set<std::string> seen_ids;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        const std::string where = "manifest row " + std::to_string(row);
        if (fields.size() != header.size())
            throw ManifestError(where + ": expected " + std::to_string(header.size()) +
                                " fields, got " + std::to_string(fields.size()));

        ManifestEntry entry;
        entry.id = fields[0];
        if (entry.id.empty()) throw ManifestError(where + ": empty id");
        if (!seen_ids.insert(entry.id).second)
            throw ManifestError(where + ": duplicate id '" + entry.id + "'");

        if (fields[1].empty()) throw ManifestError(where + ": empty path");
        std::filesystem::path clip_path(fields[1]);
        if (clip_path.is_relative()) clip_path = manifest.directory / clip_path;
        if (!std::filesystem::exists(clip_path))
            throw ManifestError(where + ": audio file not found: " + clip_path.string());
        entry.path = clip_path;

        if (fields[2] == "0") entry.label = 0;
        else if (fields[2] == "1") entry.label = 1;
        else throw ManifestError(where + ": label must be 0 or 1, got '" + fields[2] + "'");

        if (manifest.has_group && !fields[3].empty()) entry.group = fields[3];
        manifest.entries.push_back(std::move(entry));
    }
    return manifest;
}

}  // namespace melsweep::harness
