// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_EVALUATION_H_
#define VOXRESTORE_EVALUATION_H_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "voxrestore/audio.h"
#include "voxrestore/disguise_spec.h"
#include "voxrestore/eer.h"
#include "voxrestore/embedding.h"
#include "voxrestore/restore.h"
#include "voxrestore/trials.h"

namespace voxrestore {

// A row of the evaluation matrix.
//   "none"              score the test side as is
//   "pitch"             grid search over the default pitch-freq grid
//   "<family>"          grid search over that family's default grid
//   "<family>=a:b:step" grid search over an explicit grid
//   "f0ratio"           F0-ratio baseline with pitch-freq restoration
struct RestorationMethod {
  enum class Kind { kNone, kGrid, kF0Ratio };
  Kind kind = Kind::kNone;
  GridSpec grid;  // kGrid only
  std::string name;

  static RestorationMethod Parse(std::string_view text);
};

struct TrialSetInput {
  std::string disguise;  // column label, usually DisguiseLabel(trials)
  std::vector<Trial> trials;
};

// Maps a trial id to its audio. Only called when audio is actually needed.
using AudioResolver = std::function<AudioBuffer(const std::string& id)>;

struct TrialOutcome {
  double distance = 0.0;
  std::optional<double> alpha_hat;  // absent for "none"
};

struct MatrixCell {
  std::string disguise;
  std::string restoration;
  std::optional<EerReport> eer;  // needs both same- and different-speaker trials
  std::vector<TrialOutcome> outcomes;  // parallel to the set's trials
};

struct BiasBucket {
  double alpha = 0.0;
  double mean = 0.0;  // of alpha_hat - alpha
  double std = 0.0;   // population standard deviation
  std::size_t count = 0;
};

struct BiasRow {
  std::string disguise;
  std::string restoration;
  std::vector<BiasBucket> buckets;
  // Mean |alpha_hat - alpha| over positive and over negative true alphas.
  std::optional<double> mean_abs_error_positive;
  std::optional<double> mean_abs_error_negative;
};

struct PerAlphaPoint {
  double alpha = 0.0;
  double eer_percent = 0.0;
  std::size_t n_same = 0;
  std::size_t n_diff = 0;
};

struct PerAlphaCurve {
  std::string disguise;
  std::string restoration;
  std::vector<PerAlphaPoint> points;  // ascending alpha
};

struct MatrixReport {
  std::vector<MatrixCell> cells;  // set-major, methods in the given order
  std::vector<BiasRow> bias;
  std::vector<PerAlphaCurve> per_alpha;

  const MatrixCell& Cell(std::string_view disguise, std::string_view restoration) const;
};

// Buckets (alpha_hat, alpha) pairs by true alpha. Throws on empty input.
std::vector<BiasBucket> AlphaBias(const std::vector<std::pair<double, double>>& estimates);

// Scores every trial of every set under every method. Scoring reads only the
// trial ids and audio; disguise metadata feeds the bias statistics (same-speaker
// trials whose disguise family the method's family can express) and the
// per-alpha curves (single-family sets) and nothing else.
MatrixReport RunMatrix(const std::vector<TrialSetInput>& sets,
                       const std::vector<RestorationMethod>& methods,
                       const ScorerConfig& scorer, const AudioResolver& audio, int jobs = 1);

}  // namespace voxrestore

#endif  // VOXRESTORE_EVALUATION_H_
