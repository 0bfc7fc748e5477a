#pragma once

#include "melsweep/audio/types.hpp"
#include "melsweep/harness/manifest.hpp"
#include "melsweep/sweep/sweep.hpp"

namespace melsweep::harness {

// Decode, resample to the canonical rate, segment and trim every manifest
// entry. Files are processed in parallel when jobs > 1; corpus order follows
// manifest order regardless.
sweep::SegmentCorpus build_corpus(const Manifest& manifest, const audio::IngestConfig& cfg,
                                  int jobs = 1);

}  // namespace melsweep::harness
