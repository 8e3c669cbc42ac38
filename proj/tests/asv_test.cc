// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "test_util.h"
#include "voxrestore/corpus.h"
#include "voxrestore/embedding.h"
#include "voxrestore/error.h"
#include "voxrestore/features.h"
#include "voxrestore/restore.h"

namespace voxrestore {
namespace {

using testing::Sawtooth;
using testing::TempDir;

Embedding Vec(std::vector<double> v) {
  Embedding e;
  e.vector = std::move(v);
  return e;
}

FeatureMatrix RandomFeatures(std::size_t rows, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  FeatureMatrix f;
  f.values = Matrix(rows, kFeatureDim);
  for (double& v : f.values.data()) v = g(rng);
  return f;
}

std::string ErrorOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(Mfcc, SilenceIsInsufficientVoicedContent) {
  const AudioBuffer silence(std::vector<double>(16000, 0.0), 16000);
  EXPECT_NE(ErrorOf([&] { Mfcc(silence); }).find("insufficient voiced content"),
            std::string::npos);
}

TEST(Mfcc, WidthIs72AndEntriesFinite) {
  const FeatureMatrix f = Mfcc(Sawtooth(140.0, 16000, 0.7));
  EXPECT_EQ(f.values.cols(), 72u);
  EXPECT_GE(f.num_frames(), kMinActiveFrames);
  EXPECT_TRUE(f.vad_applied);
  for (double v : f.values.data()) EXPECT_TRUE(std::isfinite(v));
}

TEST(Mfcc, GainShiftsOnlyTheZerothCepstrum) {
  const AudioBuffer x = Sawtooth(140.0, 16000, 0.7);
  std::vector<double> half(x.samples().begin(), x.samples().end());
  for (double& v : half) v *= 0.5;
  const FeatureMatrix a = Mfcc(x);
  const FeatureMatrix b = Mfcc(AudioBuffer(std::move(half), 16000));
  ASSERT_EQ(a.num_frames(), b.num_frames());
  const double shift = b.values(0, 0) - a.values(0, 0);
  EXPECT_LT(shift, 0.0);
  for (std::size_t t = 0; t < a.num_frames(); ++t) {
    EXPECT_NEAR(b.values(t, 0) - a.values(t, 0), shift, 1e-6) << t;
    for (std::size_t c = 1; c < kNumCepstra; ++c)
      EXPECT_NEAR(a.values(t, c), b.values(t, c), 1e-6) << t << "," << c;
    for (std::size_t c = kNumCepstra; c < kFeatureDim; ++c)
      EXPECT_NEAR(a.values(t, c), b.values(t, c), 1e-6) << t << "," << c;
  }
}

TEST(Embed, MeanThenStd) {
  FeatureMatrix f;
  f.values = Matrix(4, kFeatureDim, 0.0);
  for (std::size_t t = 0; t < 4; ++t) f.values(t, 0) = static_cast<double>(t);  // 0..3
  const Embedding e = Embed(f, "u");
  ASSERT_EQ(e.dim(), kBuiltinEmbeddingDim);
  EXPECT_EQ(e.dim(), 144u);
  EXPECT_DOUBLE_EQ(e.vector[0], 1.5);
  EXPECT_DOUBLE_EQ(e.vector[kFeatureDim], std::sqrt(1.25));
  EXPECT_EQ(e.utterance_id, "u");
}

TEST(Embed, ConstantFeaturesHaveZeroStd) {
  FeatureMatrix f;
  f.values = Matrix(5, kFeatureDim, 0.7);
  const Embedding e = Embed(f);
  for (std::size_t c = kFeatureDim; c < e.dim(); ++c) EXPECT_EQ(e.vector[c], 0.0);
}

TEST(Embed, PermutationAndDuplicationInvariant) {
  const FeatureMatrix f = RandomFeatures(20, 3);
  const Embedding base = Embed(f);
  std::vector<std::size_t> order(20);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), std::mt19937_64(9));
  FeatureMatrix perm, dup;
  perm.values = Matrix(20, kFeatureDim);
  dup.values = Matrix(40, kFeatureDim);
  for (std::size_t t = 0; t < 20; ++t)
    for (std::size_t c = 0; c < kFeatureDim; ++c) {
      perm.values(t, c) = f.values(order[t], c);
      dup.values(t, c) = dup.values(t + 20, c) = f.values(t, c);
    }
  const Embedding p = Embed(perm), d = Embed(dup);
  for (std::size_t i = 0; i < base.dim(); ++i) {
    EXPECT_NEAR(p.vector[i], base.vector[i], 1e-12);
    EXPECT_NEAR(d.vector[i], base.vector[i], 1e-12);
  }
}

TEST(Embed, TooFewFramesThrows) {
  EXPECT_THROW(Embed(RandomFeatures(2, 1)), Error);
}

TEST(CosineDistance, Examples) {
  EXPECT_NEAR(CosineDistance(Vec({1, 2, 3}), Vec({1, 2, 3})), 0.0, 1e-15);
  EXPECT_NEAR(CosineDistance(Vec({1, 0}), Vec({0, 3})), 1.0, 1e-15);
  EXPECT_NEAR(CosineDistance(Vec({1, -2}), Vec({-1, 2})), 2.0, 1e-15);
  EXPECT_THROW(CosineDistance(Vec({1, 2}), Vec({1, 2, 3})), Error);
  EXPECT_THROW(CosineDistance(Vec({0, 0}), Vec({1, 2})), Error);
}

TEST(CosineDistance, SymmetricAndScaleInvariant) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> a(16), b(16);
    for (double& v : a) v = g(rng);
    for (double& v : b) v = g(rng);
    const double d = CosineDistance(Vec(a), Vec(b));
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 2.0);
    EXPECT_NEAR(d, CosineDistance(Vec(b), Vec(a)), 1e-14);
    const double k = scale(rng);
    for (double& v : a) v *= k;
    EXPECT_NEAR(d, CosineDistance(Vec(a), Vec(b)), 1e-12);
  }
}

TEST(ExternalEmbeddings, LoadsUniformTable) {
  const TempDir dir("asv");
  const auto path = dir.path() / "emb.txt";
  {
    std::ofstream out(path);
    for (const char* id : {"a", "b"}) {
      out << id;
      for (int i = 0; i < 200; ++i) out << ' ' << (i + 1) * 0.5;
      out << '\n';
    }
  }
  const EmbeddingTable t = LoadExternalEmbeddings(path);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.at("a").dim(), 200u);
  EXPECT_EQ(t.at("b").source, EmbeddingSource::kExternal);
  EXPECT_EQ(t.at("b").vector[3], 2.0);
}

TEST(ExternalEmbeddings, Errors) {
  const TempDir dir("asv");
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir.path() / name) << text;
    return dir.path() / name;
  };
  std::string ragged;
  for (int line = 0; line < 3; ++line) {
    ragged += "u" + std::to_string(line);
    for (int i = 0; i < (line == 2 ? 199 : 200); ++i) ragged += " 1";
    ragged += '\n';
  }
  const std::string e1 = ErrorOf([&] { LoadExternalEmbeddings(write("r.txt", ragged)); });
  EXPECT_NE(e1.find(":3:"), std::string::npos) << e1;
  const std::string e2 =
      ErrorOf([&] { LoadExternalEmbeddings(write("d.txt", "spk1 1 2\nspk1 3 4\n")); });
  EXPECT_NE(e2.find("spk1"), std::string::npos) << e2;
  EXPECT_NE(e2.find("duplicate"), std::string::npos) << e2;
  EXPECT_THROW(LoadExternalEmbeddings(write("n.txt", "a 1 x 3\n")), Error);
  EXPECT_THROW(LoadExternalEmbeddings(write("e.txt", "")), Error);
  EXPECT_THROW(LoadExternalEmbeddings(dir.path() / "missing.txt"), Error);
}

TEST(ExternalEmbeddings, WriteThenLoadRoundTrips) {
  const TempDir dir("asv");
  const Embedding a = Embed(RandomFeatures(6, 1), "x");
  const Embedding b = Embed(RandomFeatures(6, 2), "y#pitch-freq:3");
  WriteEmbeddings(dir.path() / "e.txt", {a, b});
  const EmbeddingTable t = LoadExternalEmbeddings(dir.path() / "e.txt");
  ASSERT_EQ(t.size(), 2u);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    EXPECT_NEAR(t.at("x").vector[i], a.vector[i], 1e-12 * (1 + std::abs(a.vector[i])));
    EXPECT_NEAR(t.at("y#pitch-freq:3").vector[i], b.vector[i],
                1e-12 * (1 + std::abs(b.vector[i])));
  }
}

TEST(Scorer, ParseAndResolve) {
  EXPECT_EQ(ScorerConfig::Parse("builtin").mode, ScorerConfig::Mode::kBuiltin);
  EXPECT_THROW(ScorerConfig::Parse("plda"), Error);
  EXPECT_THROW(ScorerConfig::Parse("external:/nonexistent/emb.txt"), Error);
  ScorerConfig bad;
  bad.mode = ScorerConfig::Mode::kExternal;
  EXPECT_THROW(bad.Validate(), Error);

  auto table = std::make_shared<EmbeddingTable>();
  (*table)["u"] = Vec({1, 0});
  (*table)["u#vtln-power:0.1"] = Vec({0, 1});
  const ScorerConfig ext = ScorerConfig::External(table);
  auto never = []() -> FeatureMatrix { throw Error("features must not be computed"); };
  EXPECT_EQ(ResolveEmbedding(ext, "u", std::nullopt, never).vector[0], 1.0);
  EXPECT_EQ(ResolveEmbedding(ext, "u", DisguiseSpec{DisguiseFamily::kVtlnPower, 0.0}, never)
                .vector[0],
            1.0);
  EXPECT_EQ(ResolveEmbedding(ext, "u", DisguiseSpec{DisguiseFamily::kVtlnPower, 0.1}, never)
                .vector[1],
            1.0);
  EXPECT_THROW(
      ResolveEmbedding(ext, "u", DisguiseSpec{DisguiseFamily::kVtlnPower, 0.2}, never), Error);
}

TEST(Asv, IdenticalAudioGivesIdenticalEmbeddingBytes) {
  const AudioBuffer x = Sawtooth(170.0, 16000, 0.6);
  EXPECT_EQ(Embed(Mfcc(x)).vector, Embed(Mfcc(x)).vector);
}

TEST(Asv, ToyCorpusSeparatesSpeakers) {
  const Corpus corpus = SynthCorpus({});
  std::vector<Embedding> emb;
  for (const Utterance& u : corpus) emb.push_back(Embed(Mfcc(u.audio), u.id));
  double within = 0, between = 0;
  int nw = 0, nb = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = i + 1; j < corpus.size(); ++j) {
      const double d = CosineDistance(emb[i], emb[j]);
      if (corpus[i].speaker == corpus[j].speaker)
        within += d, ++nw;
      else
        between += d, ++nb;
    }
  within /= nw;
  between /= nb;
  EXPECT_GE(between - within, 0.1) << "within " << within << " between " << between;
}

}  // namespace
}  // namespace voxrestore
