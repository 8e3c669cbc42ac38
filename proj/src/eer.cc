// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/eer.h"

#include <algorithm>
#include <cstdlib>

#include "voxrestore/error.h"

namespace voxrestore {

EerReport ComputeEer(std::span<const double> same_scores,
                     std::span<const double> diff_scores) {
  if (same_scores.empty() || diff_scores.empty())
    throw Error("EER needs at least one same-speaker and one different-speaker score");
  std::vector<double> same(same_scores.begin(), same_scores.end());
  std::vector<double> diff(diff_scores.begin(), diff_scores.end());
  std::sort(same.begin(), same.end());
  std::sort(diff.begin(), diff.end());
  std::vector<double> thresholds;
  thresholds.reserve(same.size() + diff.size());
  std::merge(same.begin(), same.end(), diff.begin(), diff.end(),
             std::back_inserter(thresholds));
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  const auto ns = static_cast<long long>(same.size());
  const auto nd = static_cast<long long>(diff.size());
  EerReport report;
  report.n_same = same.size();
  report.n_diff = diff.size();
  report.roc_points.reserve(thresholds.size());

  // |FAR - FRR| compared exactly as |fa * ns - fr * nd| over the common
  // denominator ns * nd.
  long long best_gap = -1;
  std::size_t s = 0, d = 0;
  for (double eta : thresholds) {
    while (s < same.size() && same[s] <= eta) ++s;
    while (d < diff.size() && diff[d] <= eta) ++d;
    const long long false_accepts = static_cast<long long>(d);
    const long long false_rejects = ns - static_cast<long long>(s);
    const double far = static_cast<double>(false_accepts) / static_cast<double>(nd);
    const double frr = static_cast<double>(false_rejects) / static_cast<double>(ns);
    report.roc_points.push_back({eta, far, frr});
    const long long gap = std::llabs(false_accepts * ns - false_rejects * nd);
    if (best_gap < 0 || gap < best_gap) {
      best_gap = gap;
      report.threshold = eta;
      report.eer_percent = (far + frr) / 2.0 * 100.0;
    }
  }
  return report;
}

}  // namespace voxrestore
