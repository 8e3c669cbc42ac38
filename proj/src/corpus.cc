// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/corpus.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "voxrestore/error.h"
#include "voxrestore/file_util.h"
#include "voxrestore/wav.h"

namespace voxrestore {
namespace {

constexpr double kSilenceS = 0.1;
constexpr double kRampS = 0.02;
constexpr double kPeak = 0.5;
constexpr double kNoiseLevel = 0.01;

std::string TwoDigits(int v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d", v);
  return buf;
}

AudioBuffer SynthUtterance(const SpeakerTemplate& spk, const CorpusConfig& config,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  std::normal_distribution<double> gauss(0.0, 1.0);

  const int sr = config.sample_rate;
  const auto n = static_cast<std::size_t>(std::lround(config.duration_s * sr));
  const double f0 = spk.f0_hz * (1.0 + uniform(-0.03, 0.03));
  const double vibrato_hz = uniform(3.0, 6.0);
  const double vibrato_phase = uniform(0.0, 2.0 * std::numbers::pi);

  std::vector<double> x(n, 0.0);
  double cycles = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sr;
    const double inst =
        f0 * (1.0 + 0.02 * std::sin(2.0 * std::numbers::pi * vibrato_hz * t + vibrato_phase));
    const double next = cycles + inst / sr;
    if (i > 0 && std::floor(next) > std::floor(cycles)) x[i] = 1.0;
    cycles = next;
    x[i] += kNoiseLevel * gauss(rng);
  }
  for (int k = 0; k < 3; ++k) {
    const double fc = spk.formant_hz[k] * (1.0 + uniform(-0.02, 0.02));
    const double r = std::exp(-std::numbers::pi * spk.bandwidth_hz[k] / sr);
    const double a1 = -2.0 * r * std::cos(2.0 * std::numbers::pi * fc / sr);
    const double a2 = r * r;
    double y1 = 0.0, y2 = 0.0;
    for (double& v : x) {
      const double y = (1.0 - r) * v - a1 * y1 - a2 * y2;
      y2 = y1;
      y1 = y;
      v = y;
    }
  }
  const auto silence = static_cast<std::size_t>(std::lround(kSilenceS * sr));
  const auto ramp = static_cast<std::size_t>(std::lround(kRampS * sr));
  for (std::size_t i = 0; i < n; ++i) {
    double env = 1.0;
    if (i < silence || i >= n - std::min(n, silence)) {
      env = 0.0;
    } else if (i < silence + ramp) {
      env = static_cast<double>(i - silence) / ramp;
    } else if (i >= n - silence - ramp) {
      env = static_cast<double>(n - silence - i) / ramp;
    }
    x[i] *= env;
  }
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  if (peak > 0.0)
    for (double& v : x) v *= kPeak / peak;
  return AudioBuffer(std::move(x), sr);
}

}  // namespace

std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL * (a + 1)) ^ (0xBF58476D1CE4E5B9ULL * (b + 1));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void CorpusConfig::Validate() const {
  if (n_speakers < 2) throw Error("corpus needs at least 2 speakers");
  if (utts_per_speaker < 2) throw Error("corpus needs at least 2 utterances per speaker");
  if (sample_rate < 8000) throw Error("corpus sample rate must be at least 8 kHz");
  if (!(duration_s >= 2 * (kSilenceS + kRampS) + 0.2))
    throw Error("utterance duration too short for the silence margins");
}

SpeakerTemplate DrawSpeaker(std::uint64_t seed, int speaker_index) {
  std::mt19937_64 rng(MixSeed(seed, static_cast<std::uint64_t>(speaker_index), 0xC0FFEE));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  SpeakerTemplate s;
  s.f0_hz = uniform(90.0, 250.0);
  s.formant_hz[0] = uniform(300.0, 900.0);
  s.formant_hz[1] = uniform(900.0, 2400.0);
  s.formant_hz[2] = uniform(2300.0, 3500.0);
  s.bandwidth_hz[0] = uniform(60.0, 150.0);
  s.bandwidth_hz[1] = uniform(80.0, 200.0);
  s.bandwidth_hz[2] = uniform(100.0, 250.0);
  return s;
}

Corpus SynthCorpus(const CorpusConfig& config) {
  config.Validate();
  Corpus corpus;
  for (int s = 0; s < config.n_speakers; ++s) {
    const SpeakerTemplate spk = DrawSpeaker(config.seed, s);
    const std::string speaker = "spk" + TwoDigits(s);
    for (int u = 0; u < config.utts_per_speaker; ++u) {
      const std::uint64_t seed =
          MixSeed(config.seed, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(u));
      corpus.push_back({speaker + "-utt" + TwoDigits(u), speaker,
                        SynthUtterance(spk, config, seed)});
    }
  }
  return corpus;
}

void WriteCorpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ostringstream utt2spk;
  for (const Utterance& u : corpus) {
    SaveWav(u.audio, dir / (u.id + ".wav"));
    utt2spk << u.id << ' ' << u.speaker << '\n';
  }
  WriteFileAtomic(dir / "utt2spk", utt2spk.str());
}

Corpus LoadCorpus(const std::filesystem::path& dir) {
  const auto path = dir / "utt2spk";
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  Corpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream tokens(line);
    std::string id, speaker;
    if (!(tokens >> id)) continue;
    if (!(tokens >> speaker)) throw Error("utt2spk line without speaker: " + line);
    corpus.push_back({id, speaker, LoadWav(dir / (id + ".wav"))});
  }
  if (corpus.empty()) throw Error("empty corpus in " + dir.string());
  return corpus;
}

}  // namespace voxrestore
