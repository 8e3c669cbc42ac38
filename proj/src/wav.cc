// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "voxrestore/error.h"
#include "voxrestore/file_util.h"

namespace voxrestore {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t ReadU16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t ReadU32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void PutU16(std::vector<unsigned char>* out, std::uint16_t v) {
  out->push_back(v & 0xff);
  out->push_back(v >> 8);
}

void PutU32(std::vector<unsigned char>* out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back((v >> (8 * i)) & 0xff);
}

void PutTag(std::vector<unsigned char>* out, const char* tag) {
  out->insert(out->end(), tag, tag + 4);
}

}  // namespace

AudioBuffer LoadWav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open WAV file: " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  const std::string where = " (" + path.string() + ")";
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw Error("not a RIFF/WAVE file" + where);

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;
  bool have_fmt = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = ReadU32(chunk + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = bytes.size() - body;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || available < 16) throw Error("truncated fmt chunk" + where);
      format = ReadU16(chunk + 8);
      channels = ReadU16(chunk + 10);
      rate = ReadU32(chunk + 12);
      bits = ReadU16(chunk + 22);
      if (format == kFormatExtensible) {
        if (size < 40 || available < 40) throw Error("truncated extensible fmt" + where);
        format = ReadU16(chunk + 8 + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      // Some writers leave the size at 0 or 0xffffffff when streaming.
      data_size = std::min<std::size_t>(size, available);
      if (size == 0) data_size = available;
      break;
    }
    pos = body + size + (size & 1);
  }
  if (!have_fmt) throw Error("missing fmt chunk" + where);
  if (data == nullptr) throw Error("missing data chunk" + where);
  if (channels == 0) throw Error("zero channels" + where);
  if (rate == 0) throw Error("zero sample rate" + where);

  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool float32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !float32)
    throw Error("unsupported WAV codec (format " + std::to_string(format) + ", " +
                std::to_string(bits) + " bits); expected PCM16 or float32" + where);

  const std::size_t sample_bytes = bits / 8;
  const std::size_t frame_bytes = sample_bytes * channels;
  const std::size_t frames = data_size / frame_bytes;
  if (frames == 0) throw Error("zero-length audio" + where);

  std::vector<double> samples(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    double sum = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const unsigned char* p = data + f * frame_bytes + c * sample_bytes;
      if (pcm16) {
        sum += static_cast<std::int16_t>(ReadU16(p)) / 32768.0;
      } else {
        const std::uint32_t raw = ReadU32(p);
        float v;
        std::memcpy(&v, &raw, sizeof v);
        sum += v;
      }
    }
    samples[f] = sum / channels;
  }
  return AudioBuffer(std::move(samples), static_cast<int>(rate));
}

void SaveWav(const AudioBuffer& buf, const std::filesystem::path& path,
             WavEncoding encoding) {
  if (buf.sample_rate() <= 0) throw Error("cannot save audio without a sample rate");
  for (double s : buf.samples())
    if (!std::isfinite(s)) throw Error("refusing to write non-finite samples");

  const bool pcm16 = encoding == WavEncoding::kPcm16;
  const std::uint16_t bits = pcm16 ? 16 : 32;
  const std::uint32_t data_size = static_cast<std::uint32_t>(buf.size() * (bits / 8));

  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  PutTag(&out, "RIFF");
  PutU32(&out, 36 + data_size);
  PutTag(&out, "WAVE");
  PutTag(&out, "fmt ");
  PutU32(&out, 16);
  PutU16(&out, pcm16 ? kFormatPcm : kFormatFloat);
  PutU16(&out, 1);
  PutU32(&out, static_cast<std::uint32_t>(buf.sample_rate()));
  PutU32(&out, static_cast<std::uint32_t>(buf.sample_rate()) * (bits / 8));
  PutU16(&out, bits / 8);
  PutU16(&out, bits);
  PutTag(&out, "data");
  PutU32(&out, data_size);
  for (double s : buf.samples()) {
    if (pcm16) {
      const double scaled = std::nearbyint(s * 32768.0);
      const auto v = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
      PutU16(&out, static_cast<std::uint16_t>(v));
    } else {
      const float v = static_cast<float>(s);
      std::uint32_t raw;
      std::memcpy(&raw, &v, sizeof raw);
      PutU32(&out, raw);
    }
  }

  WriteFileAtomic(path, std::string_view(reinterpret_cast<const char*>(out.data()), out.size()));
}

}  // namespace voxrestore
