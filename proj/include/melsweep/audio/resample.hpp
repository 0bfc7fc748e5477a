#pragma once

#include "melsweep/audio/types.hpp"

namespace melsweep::audio {

// Windowed-sinc sample rate conversion (Kaiser beta=8, 32 taps per output
// phase). When downsampling the kernel is stretched so the passband stays
// below the target Nyquist. Same-rate input is returned unchanged.
AudioClip resample(const AudioClip& clip, int target_rate);

}  // namespace melsweep::audio
