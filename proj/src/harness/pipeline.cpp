#include "melsweep/harness/pipeline.hpp"

#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "melsweep/audio/ingest.hpp"
#include "melsweep/audio/resample.hpp"
#include "melsweep/audio/wav.hpp"

namespace melsweep::harness {

namespace {

std::vector<sweep::SegmentCorpus::Item> ingest_entry(const ManifestEntry& entry,
                                                     const audio::IngestConfig& cfg) {
    audio::AudioClip clip = audio::load_wav(entry.path, entry.id);
    clip = audio::resample(clip, cfg.target_sample_rate);

    std::vector<sweep::SegmentCorpus::Item> items;
    for (audio::Segment& seg : audio::ingest_clip(clip, cfg)) {
        sweep::SegmentCorpus::Item item;
        item.id = seg.id();
        item.samples = std::move(seg.samples);
        item.sample_rate = seg.sample_rate;
        item.label = entry.label;
        item.group = entry.group;
        items.push_back(std::move(item));
    }
    return items;
}

}  // namespace

sweep::SegmentCorpus build_corpus(const Manifest& manifest, const audio::IngestConfig& cfg, int jobs) {
    std::vector<std::vector<sweep::SegmentCorpus::Item>> per_entry(manifest.entries.size());

    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(manifest.entries.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
            per_entry[i] = ingest_entry(manifest.entries[i], cfg);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::string error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < manifest.entries.size();
                     i = next.fetch_add(1)) {
                    if (failed.load()) return;
                    try {
                        per_entry[i] = ingest_entry(manifest.entries[i], cfg);
                    } catch (const std::exception& e) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        failed.store(true);
                        if (error.empty())
                            error = manifest.entries[i].id + ": " + e.what();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failed.load()) throw std::runtime_error("ingest failed: " + error);
    }

    std::vector<sweep::SegmentCorpus::Item> items;
    for (auto& chunk : per_entry) {
        for (auto& item : chunk) items.push_back(std::move(item));
    }
    return sweep::SegmentCorpus(std::move(items));
}

}  // namespace melsweep::harness
