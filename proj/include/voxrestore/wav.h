// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_WAV_H_
#define VOXRESTORE_WAV_H_

#include <filesystem>

#include "voxrestore/audio.h"

namespace voxrestore {

enum class WavEncoding { kPcm16, kFloat32 };

// Reads a RIFF/WAVE file holding 16-bit PCM or 32-bit IEEE float samples.
// Multi-channel input is downmixed by averaging the channels of each frame.
// PCM16 values are normalized by 1/32768.
AudioBuffer LoadWav(const std::filesystem::path& path);

// Writes `buf` as a mono WAV file. The data is written to a sibling temporary
// file which is renamed into place, so a failed write leaves no partial file.
// PCM16 output clips to [-1, 1 - 2^-15] and rounds to the nearest LSB.
void SaveWav(const AudioBuffer& buf, const std::filesystem::path& path,
             WavEncoding encoding = WavEncoding::kPcm16);

}  // namespace voxrestore

#endif  // VOXRESTORE_WAV_H_
