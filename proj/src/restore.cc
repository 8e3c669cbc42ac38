// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/restore.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "json.hpp"
#include "voxrestore/disguise.h"
#include "voxrestore/error.h"
#include "voxrestore/parallel.h"
#include "voxrestore/pitch.h"
#include "voxrestore/vad.h"
#include "voxrestore/warp.h"

namespace voxrestore {
namespace {

constexpr double kGridSlack = 1e-9;

double Snap(double v) { return std::round(v * 1e9) / 1e9; }

// Inverse warps are pure functions of (family, alpha) and get reused for every
// trial, so they are built once.
std::shared_ptr<const WarpFunction> InverseWarpFor(DisguiseFamily family, double alpha) {
  static std::mutex mu;
  static std::map<std::pair<DisguiseFamily, double>, std::shared_ptr<const WarpFunction>>
      cache;
  const auto key = std::make_pair(family, alpha);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto warp = std::make_shared<const WarpFunction>(InvertSpec({family, alpha}).warp);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(warp)).first->second;
}

double ParseNumber(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw Error("bad number '" + std::string(text) + "' in grid");
  return v;
}

}  // namespace

void GridSpec::Validate() const {
  if (values.empty()) throw Error("restoration grid is empty");
  const ParamRange range = RangeOf(family);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < range.min - kGridSlack ||
        values[i] > range.max + kGridSlack)
      throw Error("grid value " + FormatParam(values[i]) + " outside the " +
                  FamilyName(family) + " range");
    if (i > 0 && !(values[i] > values[i - 1]))
      throw Error("grid values must be strictly increasing");
  }
  const double identity = IdentityParam(family);
  if (std::find(values.begin(), values.end(), identity) == values.end())
    throw Error("grid for " + FamilyName(family) + " must contain the identity value " +
                FormatParam(identity));
}

GridSpec MakeGrid(DisguiseFamily family, double min, double max, double step) {
  if (!(step > 0.0) || !(max >= min)) throw Error("grid needs min <= max and step > 0");
  GridSpec grid{family, {}};
  const auto count = static_cast<long>(std::floor((max - min) / step + kGridSlack)) + 1;
  for (long i = 0; i < count; ++i) grid.values.push_back(Snap(min + step * i));
  grid.Validate();
  return grid;
}

GridSpec DefaultGrid(DisguiseFamily family) {
  if (IsPitchFamily(family))
    return MakeGrid(family, -kPitchGridSemitones, kPitchGridSemitones, 1.0);
  const ParamRange r = RangeOf(family);
  return MakeGrid(family, r.min, r.max, r.step);
}

GridSpec ParseGrid(DisguiseFamily family, std::string_view text) {
  if (text == "default") return DefaultGrid(family);
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos)
    throw Error("grid must be 'default' or 'min:max:step', got '" + std::string(text) + "'");
  return MakeGrid(family, ParseNumber(text.substr(0, first)),
                  ParseNumber(text.substr(first + 1, second - first - 1)),
                  ParseNumber(text.substr(second + 1)));
}

std::size_t SelectMinimum(const std::vector<CandidateScore>& scores, DisguiseFamily family) {
  if (scores.empty()) throw Error("no candidates to minimize over");
  const double identity = IdentityParam(family);
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    const CandidateScore& c = scores[i];
    const CandidateScore& b = scores[best];
    if (c.distance != b.distance) {
      if (c.distance < b.distance) best = i;
      continue;
    }
    const double dc = std::abs(c.alpha - identity), db = std::abs(b.alpha - identity);
    if (dc < db || (dc == db && c.alpha < b.alpha)) best = i;
  }
  return best;
}

PreparedTest PrepareTest(const AudioBuffer& y, const FrameParams& params) {
  if (params.NumFrames(y.size(), y.sample_rate()) == 0)
    throw Error("audio too short for restoration: shorter than one frame");
  PreparedTest test;
  test.spectrogram = Stft(y, params);
  test.spectrogram.phases.reset();
  test.active = Vad(y, params);
  return test;
}

FeatureMatrix RestoreFeatures(const PreparedTest& test, double alpha, DisguiseFamily family) {
  DisguiseSpec{family, alpha}.Validate();
  const auto warp = InverseWarpFor(family, alpha);
  if (warp->is_identity()) return MfccFromSpectrogram(test.spectrogram, test.active);
  return MfccFromSpectrogram(
      ApplySpectralWarp(test.spectrogram, *warp, WarpDirection::kForward), test.active);
}

RestoredUtterance RestoreWith(const AudioBuffer& y, double alpha, DisguiseFamily family,
                              Resynthesis resynthesis, int griffin_lim_iterations) {
  RestoredUtterance out;
  out.features = RestoreFeatures(PrepareTest(y), alpha, family);
  if (resynthesis == Resynthesis::kNone) return out;
  const auto warp = InverseWarpFor(family, alpha);
  out.audio = WarpWaveform(y, *warp, WarpDirection::kForward, SynthesisFrameParams(),
                           resynthesis == Resynthesis::kGriffinLim ? griffin_lim_iterations : 0);
  return out;
}

RestorationResult MinimizeOverGrid(const Embedding& enroll, const GridSpec& grid,
                                   const std::function<Embedding(double)>& candidate,
                                   int jobs) {
  grid.Validate();
  RestorationResult result;
  result.family = grid.family;
  result.per_candidate.resize(grid.values.size());
  ParallelFor(grid.values.size(), jobs, [&](std::size_t i) {
    const double alpha = grid.values[i];
    result.per_candidate[i] = {alpha, CosineDistance(enroll, candidate(alpha))};
  });
  const std::size_t best = SelectMinimum(result.per_candidate, grid.family);
  result.alpha_hat = result.per_candidate[best].alpha;
  result.d_hat = result.per_candidate[best].distance;
  return result;
}

RestorationResult GridSearchRestore(const AudioBuffer& x, const AudioBuffer& y,
                                    const GridSpec& grid, const ScorerConfig& scorer,
                                    const RestoreOptions& options) {
  const Embedding enroll = ResolveEmbedding(scorer, options.enroll_id, std::nullopt,
                                            [&] { return Mfcc(x); });
  std::optional<PreparedTest> test;
  if (scorer.mode == ScorerConfig::Mode::kBuiltin || options.keep_features)
    test = PrepareTest(y);
  RestorationResult result =
      MinimizeOverGrid(enroll, grid, [&](double alpha) {
        return ResolveEmbedding(scorer, options.test_id, DisguiseSpec{grid.family, alpha},
                                [&] { return RestoreFeatures(*test, alpha, grid.family); });
      }, options.jobs);
  if (options.keep_features)
    result.restored_features = RestoreFeatures(*test, result.alpha_hat, grid.family);
  return result;
}

double F0RatioEstimate(const AudioBuffer& x, const AudioBuffer& y) {
  return F0RatioAlpha(MeanF0(EstimateF0(x)), MeanF0(EstimateF0(y)));
}

double SnapF0RatioAlpha(double estimate, DisguiseFamily family) {
  if (!IsPitchFamily(family))
    throw Error("F0-ratio estimates are semitones of a pitch family, not " + FamilyName(family));
  const double alpha =
      std::clamp(std::round(estimate), -kPitchGridSemitones, kPitchGridSemitones);
  return alpha == 0.0 ? 0.0 : alpha;
}

RestorationResult F0RatioRestore(const AudioBuffer& x, const AudioBuffer& y,
                                 DisguiseFamily family, const ScorerConfig& scorer,
                                 const RestoreOptions& options) {
  if (!IsPitchFamily(family))
    throw Error("F0-ratio restoration needs a pitch family, got " + FamilyName(family));
  const double alpha = SnapF0RatioAlpha(F0RatioEstimate(x, y), family);

  const Embedding enroll = ResolveEmbedding(scorer, options.enroll_id, std::nullopt,
                                            [&] { return Mfcc(x); });
  std::optional<FeatureMatrix> features;
  auto restored = [&] {
    if (!features) features = RestoreFeatures(PrepareTest(y), alpha, family);
    return *features;
  };
  const Embedding test =
      ResolveEmbedding(scorer, options.test_id, DisguiseSpec{family, alpha}, restored);

  RestorationResult result;
  result.family = family;
  result.alpha_hat = alpha;
  result.d_hat = CosineDistance(enroll, test);
  result.per_candidate = {{alpha, result.d_hat}};
  if (options.keep_features) result.restored_features = restored();
  return result;
}

std::string RestorationToJson(const RestorationResult& result) {
  nlohmann::ordered_json j;
  j["alpha_hat"] = result.alpha_hat;
  j["d_hat"] = result.d_hat;
  j["family"] = FamilyName(result.family);
  auto per = nlohmann::json::array();
  for (const CandidateScore& c : result.per_candidate) per.push_back({c.alpha, c.distance});
  j["per_candidate"] = per;
  return j.dump();
}

}  // namespace voxrestore
