// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/evaluation.h"

#include <atomic>
#include <cmath>
#include <map>
#include <optional>
#include <set>

#include <spdlog/spdlog.h>

#include "voxrestore/error.h"
#include "voxrestore/features.h"
#include "voxrestore/parallel.h"
#include "voxrestore/pitch.h"

namespace voxrestore {
namespace {

// Whether alpha_hat of a `method` family is measured in the same units as a
// true alpha of `disguise`.
bool Comparable(DisguiseFamily method, DisguiseFamily disguise) {
  if (IsPitchFamily(method)) return IsPitchFamily(disguise);
  return method == disguise;
}

std::optional<DisguiseFamily> MethodFamily(const RestorationMethod& m) {
  switch (m.kind) {
    case RestorationMethod::Kind::kNone: return std::nullopt;
    case RestorationMethod::Kind::kGrid: return m.grid.family;
    case RestorationMethod::Kind::kF0Ratio: return DisguiseFamily::kPitchScaleFreq;
  }
  return std::nullopt;
}

// The family shared by every trial's metadata, if there is one.
std::optional<DisguiseFamily> SingleFamily(const std::vector<Trial>& trials) {
  std::optional<DisguiseFamily> family;
  for (const Trial& t : trials) {
    if (!t.disguise_meta) return std::nullopt;
    if (family && *family != t.disguise_meta->family) return std::nullopt;
    family = t.disguise_meta->family;
  }
  return family;
}

std::optional<double> MeanAbs(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double sum = 0.0;
  for (double x : v) sum += std::abs(x);
  return sum / static_cast<double>(v.size());
}

}  // namespace

RestorationMethod RestorationMethod::Parse(std::string_view text) {
  RestorationMethod m;
  m.name = std::string(text);
  if (text == "none") return m;
  if (text == "f0ratio") {
    m.kind = Kind::kF0Ratio;
    return m;
  }
  m.kind = Kind::kGrid;
  const auto eq = text.find('=');
  const std::string_view family_text = text.substr(0, eq);
  const DisguiseFamily family =
      family_text == "pitch" ? DisguiseFamily::kPitchScaleFreq : ParseFamily(family_text);
  m.grid = eq == std::string_view::npos ? DefaultGrid(family)
                                        : ParseGrid(family, text.substr(eq + 1));
  return m;
}

const MatrixCell& MatrixReport::Cell(std::string_view disguise,
                                     std::string_view restoration) const {
  for (const MatrixCell& c : cells)
    if (c.disguise == disguise && c.restoration == restoration) return c;
  throw Error("no matrix cell for disguise '" + std::string(disguise) + "' and restoration '" +
              std::string(restoration) + "'");
}

std::vector<BiasBucket> AlphaBias(const std::vector<std::pair<double, double>>& estimates) {
  if (estimates.empty()) throw Error("bias statistics need at least one estimate");
  std::map<double, std::vector<double>> by_alpha;
  for (const auto& [alpha_hat, alpha] : estimates) by_alpha[alpha].push_back(alpha_hat - alpha);
  std::vector<BiasBucket> buckets;
  for (const auto& [alpha, errors] : by_alpha) {
    const double n = static_cast<double>(errors.size());
    double mean = 0.0;
    for (double e : errors) mean += e;
    mean /= n;
    double var = 0.0;
    for (double e : errors) var += (e - mean) * (e - mean);
    buckets.push_back({alpha, mean, std::sqrt(var / n), errors.size()});
  }
  return buckets;
}

MatrixReport RunMatrix(const std::vector<TrialSetInput>& sets,
                       const std::vector<RestorationMethod>& methods,
                       const ScorerConfig& scorer, const AudioResolver& audio, int jobs) {
  scorer.Validate();
  if (methods.empty()) throw Error("no restoration methods requested");
  bool need_f0 = false;
  for (const RestorationMethod& m : methods)
    need_f0 = need_f0 || m.kind == RestorationMethod::Kind::kF0Ratio;

  // Enrollment side: one embedding (and mean F0) per distinct id.
  std::set<std::string> enroll_set;
  for (const TrialSetInput& s : sets)
    for (const Trial& t : s.trials) enroll_set.insert(t.enroll_id);
  const std::vector<std::string> enroll_ids(enroll_set.begin(), enroll_set.end());
  std::vector<Embedding> enroll_emb(enroll_ids.size());
  // Unset where the enrollment has no voiced frames.
  std::vector<std::optional<double>> enroll_f0(enroll_ids.size());
  ParallelFor(enroll_ids.size(), jobs, [&](std::size_t i) {
    std::optional<AudioBuffer> x;
    auto load = [&]() -> const AudioBuffer& {
      if (!x) x = audio(enroll_ids[i]);
      return *x;
    };
    enroll_emb[i] = ResolveEmbedding(scorer, enroll_ids[i], std::nullopt,
                                     [&] { return Mfcc(load()); });
    if (need_f0) {
      const F0Track track = EstimateF0(load());
      if (track.num_voiced() > 0) enroll_f0[i] = MeanF0(track);
    }
  });
  std::map<std::string, std::size_t> enroll_index;
  for (std::size_t i = 0; i < enroll_ids.size(); ++i) enroll_index[enroll_ids[i]] = i;

  MatrixReport report;
  for (const TrialSetInput& set : sets) {
    const std::size_t n = set.trials.size();
    std::vector<std::vector<TrialOutcome>> outcomes(methods.size(),
                                                    std::vector<TrialOutcome>(n));
    std::vector<std::atomic<std::size_t>> unvoiced(methods.size());
    ParallelFor(n, jobs, [&](std::size_t t) {
      const Trial& trial = set.trials[t];
      const std::size_t e = enroll_index.at(trial.enroll_id);
      const Embedding& enroll = enroll_emb[e];
      std::optional<AudioBuffer> y;
      auto load = [&]() -> const AudioBuffer& {
        if (!y) y = audio(trial.test_id);
        return *y;
      };
      std::optional<PreparedTest> prepared;
      auto prepare = [&]() -> const PreparedTest& {
        if (!prepared) prepared = PrepareTest(load());
        return *prepared;
      };
      auto restored = [&](DisguiseFamily family, double alpha) {
        const DisguiseSpec spec{family, alpha};
        return ResolveEmbedding(scorer, trial.test_id,
                                spec.IsIdentity() ? std::nullopt : std::optional(spec),
                                [&] { return RestoreFeatures(prepare(), alpha, family); });
      };
      for (std::size_t m = 0; m < methods.size(); ++m) {
        const RestorationMethod& method = methods[m];
        TrialOutcome& out = outcomes[m][t];
        switch (method.kind) {
          case RestorationMethod::Kind::kNone: {
            const Embedding test = ResolveEmbedding(scorer, trial.test_id, std::nullopt, [&] {
              return RestoreFeatures(prepare(), 0.0, DisguiseFamily::kPitchScaleFreq);
            });
            out.distance = CosineDistance(enroll, test);
            break;
          }
          case RestorationMethod::Kind::kGrid: {
            const RestorationResult r = MinimizeOverGrid(
                enroll, method.grid,
                [&](double alpha) { return restored(method.grid.family, alpha); }, 1);
            out.distance = r.d_hat;
            out.alpha_hat = r.alpha_hat;
            break;
          }
          case RestorationMethod::Kind::kF0Ratio: {
            // No F0 on either side: score the unrestored test, as if the
            // estimate were the identity.
            const DisguiseFamily family = DisguiseFamily::kPitchScaleFreq;
            double alpha = 0.0;
            const F0Track track = EstimateF0(load());
            if (enroll_f0[e] && track.num_voiced() > 0)
              alpha = SnapF0RatioAlpha(F0RatioAlpha(*enroll_f0[e], MeanF0(track)), family);
            else
              ++unvoiced[m];
            out.distance = CosineDistance(enroll, restored(family, alpha));
            out.alpha_hat = alpha;
            break;
          }
        }
      }
    });

    const std::optional<DisguiseFamily> set_family = SingleFamily(set.trials);
    for (std::size_t m = 0; m < methods.size(); ++m) {
      const RestorationMethod& method = methods[m];
      MatrixCell cell{set.disguise, method.name, std::nullopt, std::move(outcomes[m])};

      std::vector<double> same, diff;
      for (std::size_t t = 0; t < n; ++t) {
        const std::optional<bool>& label = set.trials[t].same_speaker;
        if (!label) continue;
        (*label ? same : diff).push_back(cell.outcomes[t].distance);
      }
      if (!same.empty() && !diff.empty()) cell.eer = ComputeEer(same, diff);

      const std::optional<DisguiseFamily> family = MethodFamily(method);
      if (family) {
        std::vector<std::pair<double, double>> pairs;
        std::vector<double> positive, negative;
        for (std::size_t t = 0; t < n; ++t) {
          const Trial& trial = set.trials[t];
          if (trial.same_speaker != true || !trial.disguise_meta ||
              !Comparable(*family, trial.disguise_meta->family))
            continue;
          const double alpha = trial.disguise_meta->param;
          const double alpha_hat = *cell.outcomes[t].alpha_hat;
          pairs.emplace_back(alpha_hat, alpha);
          const double identity = IdentityParam(trial.disguise_meta->family);
          if (alpha > identity) positive.push_back(alpha_hat - alpha);
          if (alpha < identity) negative.push_back(alpha_hat - alpha);
        }
        if (!pairs.empty())
          report.bias.push_back({set.disguise, method.name, AlphaBias(pairs), MeanAbs(positive),
                                 MeanAbs(negative)});
      }

      if (set_family) {
        std::map<double, std::pair<std::vector<double>, std::vector<double>>> by_alpha;
        for (std::size_t t = 0; t < n; ++t) {
          const Trial& trial = set.trials[t];
          if (!trial.same_speaker) continue;
          auto& [s, d] = by_alpha[trial.disguise_meta->param];
          (*trial.same_speaker ? s : d).push_back(cell.outcomes[t].distance);
        }
        PerAlphaCurve curve{set.disguise, method.name, {}};
        for (const auto& [alpha, scores] : by_alpha) {
          if (scores.first.empty() || scores.second.empty()) continue;
          const EerReport r = ComputeEer(scores.first, scores.second);
          curve.points.push_back({alpha, r.eer_percent, r.n_same, r.n_diff});
        }
        if (!curve.points.empty()) report.per_alpha.push_back(std::move(curve));
      }

      if (unvoiced[m] > 0)
        spdlog::warn("{} / {}: {} of {} trials had no F0, scored unrestored", set.disguise,
                     method.name, unvoiced[m].load(), n);
      if (cell.eer)
        spdlog::info("{} / {}: EER {:.2f}% over {} trials", set.disguise, method.name,
                     cell.eer->eer_percent, n);
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

}  // namespace voxrestore
