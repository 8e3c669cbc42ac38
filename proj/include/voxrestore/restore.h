// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_RESTORE_H_
#define VOXRESTORE_RESTORE_H_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voxrestore/audio.h"
#include "voxrestore/disguise_spec.h"
#include "voxrestore/embedding.h"
#include "voxrestore/features.h"
#include "voxrestore/stft.h"

namespace voxrestore {

// Candidate restoration parameters for one family.
struct GridSpec {
  DisguiseFamily family = DisguiseFamily::kPitchScaleFreq;
  std::vector<double> values;

  // Non-empty, strictly increasing, inside the family range, and containing
  // the identity parameter.
  void Validate() const;
};

// Pitch: the 23 integers -11..11. VTLN: the family range at its usual step
// (bilinear 0.02, quadratic 0.2, power 0.05, piecewise 0.05).
GridSpec DefaultGrid(DisguiseFamily family);

// Values min, min + step, ... up to max (inclusive, 1e-9 slack), snapped to 9
// decimals so that 0.15 prints as 0.15.
GridSpec MakeGrid(DisguiseFamily family, double min, double max, double step);

// "default" or "min:max:step".
GridSpec ParseGrid(DisguiseFamily family, std::string_view text);

struct CandidateScore {
  double alpha = 0.0;
  double distance = 0.0;
};

struct RestorationResult {
  double alpha_hat = 0.0;
  double d_hat = 0.0;
  DisguiseFamily family = DisguiseFamily::kPitchScaleFreq;
  std::vector<CandidateScore> per_candidate;  // ascending alpha
  std::optional<FeatureMatrix> restored_features;
};

// Index of the minimum distance. Ties go to the parameter closest to the
// family identity, then to the smaller parameter.
std::size_t SelectMinimum(const std::vector<CandidateScore>& scores, DisguiseFamily family);

// Analysis of a test utterance shared by every restoration candidate.
struct PreparedTest {
  Spectrogram spectrogram;
  std::vector<bool> active;  // VAD of the unrestored audio
};
PreparedTest PrepareTest(const AudioBuffer& y, const FrameParams& params = {});

// MFCCs of f^-1(y; alpha), taken straight from the inverse-warped magnitudes.
// The identity parameter reproduces Mfcc(y) exactly.
FeatureMatrix RestoreFeatures(const PreparedTest& test, double alpha, DisguiseFamily family);

struct RestoredUtterance {
  FeatureMatrix features;
  std::optional<AudioBuffer> audio;
};

enum class Resynthesis { kNone, kWarpedPhase, kGriffinLim };

// x^ = f^-1(y; alpha). Waveform output is opt-in: either overlap-add with the
// warped phases or Griffin-Lim from the warped magnitudes.
RestoredUtterance RestoreWith(const AudioBuffer& y, double alpha, DisguiseFamily family,
                              Resynthesis resynthesis = Resynthesis::kNone,
                              int griffin_lim_iterations = 32);

// Evaluates d(enroll, candidate(alpha)) for every grid value and reduces with
// SelectMinimum. `candidate` must be safe to call concurrently when jobs > 1.
RestorationResult MinimizeOverGrid(const Embedding& enroll, const GridSpec& grid,
                                   const std::function<Embedding(double)>& candidate,
                                   int jobs = 1);

struct RestoreOptions {
  std::string enroll_id = "enroll";
  std::string test_id = "test";
  int jobs = 1;
  bool keep_features = false;  // fill RestorationResult::restored_features
};

// d^ = min_alpha d(g(x), g(f^-1(y; alpha))) over the grid, and its argmin.
RestorationResult GridSearchRestore(const AudioBuffer& x, const AudioBuffer& y,
                                    const GridSpec& grid, const ScorerConfig& scorer,
                                    const RestoreOptions& options = {});

// Baseline: alpha^ = 12 log2(mean F0(y) / mean F0(x)), rounded to the nearest
// integer semitone in [-11, 11]; scores the single restored candidate.
// Throws "unvoiced utterance" if either side has no voiced frame.
RestorationResult F0RatioRestore(const AudioBuffer& x, const AudioBuffer& y,
                                 DisguiseFamily family, const ScorerConfig& scorer,
                                 const RestoreOptions& options = {});
// The unrounded estimate, for diagnostics.
double F0RatioEstimate(const AudioBuffer& x, const AudioBuffer& y);
// Rounds an F0-ratio estimate to the nearest integer inside the family range.
double SnapF0RatioAlpha(double estimate, DisguiseFamily family);

// {"alpha_hat", "d_hat", "family", "per_candidate": [[alpha, d], ...]}.
std::string RestorationToJson(const RestorationResult& result);

}  // namespace voxrestore

#endif  // VOXRESTORE_RESTORE_H_
