// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_CORPUS_H_
#define VOXRESTORE_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "voxrestore/audio.h"

namespace voxrestore {

struct CorpusConfig {
  int n_speakers = 8;
  int utts_per_speaker = 5;
  std::uint64_t seed = 1;
  int sample_rate = 16000;
  double duration_s = 1.5;

  void Validate() const;
};

struct Utterance {
  std::string id;
  std::string speaker;
  AudioBuffer audio;
};

using Corpus = std::vector<Utterance>;

// A synthetic speaker: glottal pulse rate plus three formant resonances.
struct SpeakerTemplate {
  double f0_hz;
  double formant_hz[3];
  double bandwidth_hz[3];
};

SpeakerTemplate DrawSpeaker(std::uint64_t seed, int speaker_index);

// Source-filter synthesis of a labelled toy corpus. Each speaker draws a base
// F0 in 90-250 Hz and formants near 300-900, 900-2400 and 2300-3500 Hz. Each
// utterance is an impulse train (F0 jittered by up to 3%, 2% vibrato) plus a
// faint noise floor, passed through the three resonators (centres jittered by
// up to 2%), framed by 100 ms of silence and peak-normalised to 0.5.
// Utterance ids are "spkNN-uttMM". Deterministic in the config.
Corpus SynthCorpus(const CorpusConfig& config);

// `<dir>/<id>.wav` (PCM16) for every utterance plus `<dir>/utt2spk`.
void WriteCorpus(const Corpus& corpus, const std::filesystem::path& dir);
Corpus LoadCorpus(const std::filesystem::path& dir);

// splitmix64 mixing; used to give each derived random stream its own seed.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace voxrestore

#endif  // VOXRESTORE_CORPUS_H_
