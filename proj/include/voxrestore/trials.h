// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_TRIALS_H_
#define VOXRESTORE_TRIALS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voxrestore/corpus.h"
#include "voxrestore/disguise_spec.h"

namespace voxrestore {

struct Trial {
  std::string enroll_id;
  std::string test_id;
  std::optional<bool> same_speaker;
  // Ground truth for bias statistics only; scoring never reads it.
  std::optional<DisguiseSpec> disguise_meta;
};

// How the test side of generated trials is disguised.
//   "none"                      no disguise
//   "<family>"                  parameters drawn from the family's default grid
//   "<family>:<min>:<max>"      the default-grid values inside [min, max]
//   "vtln-mixed"                one of the four VTLN families uniformly, then a
//                               parameter from that family's default grid
struct DisguisePolicy {
  enum class Kind { kNone, kFamily, kMixedVtln };
  Kind kind = Kind::kNone;
  DisguiseFamily family = DisguiseFamily::kPitchScaleFreq;
  std::vector<double> values;  // kFamily only

  static DisguisePolicy Parse(std::string_view text);
  std::string Name() const;
};

struct TrialSet {
  std::vector<Trial> trials;
  // Disguised test utterances, one per trial, referenced by Trial::test_id.
  std::vector<Utterance> disguised;
};

// Draws `n_trials` trials, round(n_trials * same_fraction) of them same-speaker
// (enroll and test are distinct utterances of one speaker) and the rest
// different-speaker. The test side is disguised per `policy`. Deterministic in
// `seed`; `jobs` only parallelises the disguising.
TrialSet GenTrials(const Corpus& corpus, std::size_t n_trials, const DisguisePolicy& policy,
                   std::uint64_t seed, double same_fraction = 0.5, int jobs = 1);

// One trial per line: `<0|1> <enroll> <test> [family:param]`.
void WriteTrials(const std::vector<Trial>& trials, const std::filesystem::path& path);
std::vector<Trial> ReadTrials(const std::filesystem::path& path);

// Column label for a trial list: "none", a family name, "vtln-mixed" or
// "mixed", from the ground-truth metadata.
std::string DisguiseLabel(const std::vector<Trial>& trials);

}  // namespace voxrestore

#endif  // VOXRESTORE_TRIALS_H_
