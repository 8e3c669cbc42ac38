// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/disguise.h"

#include <algorithm>
#include <vector>

#include "voxrestore/resample.h"
#include "voxrestore/warp.h"

namespace voxrestore {

FrameParams SynthesisFrameParams() {
  FrameParams p;
  p.window_ms = 25.0;
  p.hop_ms = 6.25;
  return p;
}

AudioBuffer WarpWaveform(const AudioBuffer& buf, const WarpFunction& warp,
                         WarpDirection direction, const FrameParams& params,
                         int griffin_lim_iterations) {
  const std::size_t pad = params.WindowSamples(buf.sample_rate());
  std::vector<double> padded(buf.size() + 2 * pad, 0.0);
  std::copy(buf.samples().begin(), buf.samples().end(), padded.begin() + pad);
  Spectrogram warped = ApplySpectralWarp(
      Stft(AudioBuffer(std::move(padded), buf.sample_rate()), params), warp, direction);
  AudioBuffer out;
  if (griffin_lim_iterations > 0) {
    warped.phases.reset();
    out = GriffinLim(warped, griffin_lim_iterations);
  } else {
    out = Istft(warped);
  }
  const auto x = out.samples();
  return AudioBuffer(std::vector<double>(x.begin() + pad, x.begin() + pad + buf.size()),
                     buf.sample_rate());
}

AudioBuffer Disguise(const AudioBuffer& buf, const DisguiseSpec& spec,
                     const FrameParams& params) {
  spec.Validate();
  if (spec.family == DisguiseFamily::kPitchScaleTime)
    return Resample(buf, SemitoneToScale(spec.param));
  return WarpWaveform(buf, BuildWarp(spec), WarpDirection::kForward, params);
}

}  // namespace voxrestore
