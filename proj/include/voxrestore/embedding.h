// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_EMBEDDING_H_
#define VOXRESTORE_EMBEDDING_H_

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "voxrestore/disguise_spec.h"
#include "voxrestore/features.h"

namespace voxrestore {

inline constexpr std::size_t kBuiltinEmbeddingDim = 2 * kFeatureDim;

enum class EmbeddingSource { kBuiltin, kExternal };

struct Embedding {
  std::vector<double> vector;
  EmbeddingSource source = EmbeddingSource::kBuiltin;
  std::string utterance_id;

  std::size_t dim() const { return vector.size(); }
};

// Statistics pooling: per-dimension mean, then per-dimension population
// standard deviation, over frames (144 values for 72-dim features).
Embedding Embed(const FeatureMatrix& features, std::string utterance_id = {});

// 1 - <a, b> / (|a| |b|), clamped to [0, 2]. Lower means more alike.
// Throws on dimension mismatch or a zero-norm vector.
double CosineDistance(const Embedding& a, const Embedding& b);

using EmbeddingTable = std::map<std::string, Embedding>;

// Text table, one utterance per line: `id v1 v2 ... vN`. Blank lines are
// skipped and bare "[" / "]" tokens are ignored, so Kaldi text vectors load
// as-is. Throws on ragged dimensions (with the line number), duplicate ids
// (naming the id) or non-numeric values.
EmbeddingTable LoadExternalEmbeddings(const std::filesystem::path& path);
void WriteEmbeddings(const std::filesystem::path& path,
                     const std::vector<Embedding>& embeddings);

// Key of a restored candidate in an external table: `<id>#<family>:<param>`.
// Identity restorations use the plain id.
std::string CandidateId(const std::string& utterance_id, const DisguiseSpec& restoration);

struct ScorerConfig {
  enum class Mode { kBuiltin, kExternal };
  Mode mode = Mode::kBuiltin;
  std::shared_ptr<const EmbeddingTable> external_table;

  static ScorerConfig Builtin() { return {}; }
  static ScorerConfig External(std::shared_ptr<const EmbeddingTable> table);
  // "builtin" or "external:<path>".
  static ScorerConfig Parse(const std::string& text);

  void Validate() const;
};

// g(.) under a scorer: builtin pools `features()`; external looks up `id`
// (or its restored-candidate key) and never calls `features`.
Embedding ResolveEmbedding(const ScorerConfig& scorer, const std::string& id,
                           const std::optional<DisguiseSpec>& restoration,
                           const std::function<FeatureMatrix()>& features);

}  // namespace voxrestore

#endif  // VOXRESTORE_EMBEDDING_H_
