// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_EER_H_
#define VOXRESTORE_EER_H_

#include <cstddef>
#include <span>
#include <vector>

namespace voxrestore {

struct RocPoint {
  double threshold;
  double far;  // fraction of different-speaker distances <= threshold
  double frr;  // fraction of same-speaker distances > threshold
};

struct EerReport {
  double eer_percent = 0.0;
  double threshold = 0.0;
  std::vector<RocPoint> roc_points;  // one per distinct score, ascending
  std::size_t n_same = 0;
  std::size_t n_diff = 0;
};

// Scores are distances: a trial is accepted iff distance <= threshold. The
// threshold sweeps the sorted distinct union of all scores; the reported
// operating point minimizes |FAR - FRR| (the first such threshold on ties)
// and EER = (FAR + FRR) / 2 there, in percent. Throws on an empty list.
EerReport ComputeEer(std::span<const double> same_scores,
                     std::span<const double> diff_scores);

}  // namespace voxrestore

#endif  // VOXRESTORE_EER_H_
