// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_DISGUISE_H_
#define VOXRESTORE_DISGUISE_H_

#include "voxrestore/audio.h"
#include "voxrestore/disguise_spec.h"
#include "voxrestore/stft.h"
#include "voxrestore/warp.h"

namespace voxrestore {

// Framing for waveform-domain spectral warps: 25 ms Hann windows at a
// 6.25 ms hop. Phase-vocoder resynthesis needs the 75% overlap; at the 15 ms
// feature hop moved partials lose their period.
FrameParams SynthesisFrameParams();

// Moves the spectrum of `buf` along `warp` and resynthesises a waveform of the
// same length. The input is zero-padded by one window on each side so that
// edge samples get full overlap-add weight. With `griffin_lim_iterations` > 0
// the warped phases are discarded and re-estimated.
AudioBuffer WarpWaveform(const AudioBuffer& buf, const WarpFunction& warp,
                         WarpDirection direction, const FrameParams& params,
                         int griffin_lim_iterations = 0);

// y = f(x; alpha).
//   pitch-time: band-limited resampling by s = 2^(alpha/12); pitch and
//               duration change together.
//   pitch-freq and VTLN: STFT, forward spectral warp, overlap-add resynthesis.
// Throws for out-of-range specs or audio shorter than one frame.
AudioBuffer Disguise(const AudioBuffer& buf, const DisguiseSpec& spec,
                     const FrameParams& params = SynthesisFrameParams());

}  // namespace voxrestore

#endif  // VOXRESTORE_DISGUISE_H_
