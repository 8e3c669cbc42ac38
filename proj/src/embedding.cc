// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/embedding.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "voxrestore/error.h"
#include "voxrestore/file_util.h"

namespace voxrestore {

Embedding Embed(const FeatureMatrix& features, std::string utterance_id) {
  const Matrix& f = features.values;
  if (f.rows() < kMinActiveFrames)
    throw Error("embedding needs at least " + std::to_string(kMinActiveFrames) +
                " frames, got " + std::to_string(f.rows()));
  const std::size_t dim = f.cols();
  const double n = static_cast<double>(f.rows());
  std::vector<double> mean(dim, 0.0), var(dim, 0.0);
  for (std::size_t t = 0; t < f.rows(); ++t)
    for (std::size_t c = 0; c < dim; ++c) mean[c] += f(t, c);
  for (double& m : mean) m /= n;
  for (std::size_t t = 0; t < f.rows(); ++t) {
    for (std::size_t c = 0; c < dim; ++c) {
      const double d = f(t, c) - mean[c];
      var[c] += d * d;
    }
  }
  Embedding e;
  e.vector = std::move(mean);
  e.vector.reserve(2 * dim);
  for (double v : var) e.vector.push_back(std::sqrt(v / n));
  e.source = EmbeddingSource::kBuiltin;
  e.utterance_id = std::move(utterance_id);
  return e;
}

double CosineDistance(const Embedding& a, const Embedding& b) {
  if (a.dim() != b.dim())
    throw Error("embedding dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                std::to_string(b.dim()));
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    ab += a.vector[i] * b.vector[i];
    aa += a.vector[i] * a.vector[i];
    bb += b.vector[i] * b.vector[i];
  }
  if (aa == 0.0 || bb == 0.0) throw Error("cosine distance of a zero-norm embedding");
  return std::clamp(1.0 - ab / (std::sqrt(aa) * std::sqrt(bb)), 0.0, 2.0);
}

EmbeddingTable LoadExternalEmbeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open embedding file: " + path.string());
  EmbeddingTable table;
  std::optional<std::size_t> dim;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    std::istringstream tokens(line);
    std::string id;
    if (!(tokens >> id)) continue;
    Embedding e;
    e.source = EmbeddingSource::kExternal;
    e.utterance_id = id;
    for (std::string tok; tokens >> tok;) {
      if (tok == "[" || tok == "]") continue;
      double v = 0.0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || !std::isfinite(v))
        throw Error(path.string() + ":" + std::to_string(line_no) +
                    ": non-numeric value '" + tok + "'");
      e.vector.push_back(v);
    }
    if (e.vector.empty())
      throw Error(path.string() + ":" + std::to_string(line_no) + ": no values for '" +
                  id + "'");
    if (!dim) dim = e.dim();
    if (e.dim() != *dim)
      throw Error(path.string() + ":" + std::to_string(line_no) + ": expected " +
                  std::to_string(*dim) + " values, found " + std::to_string(e.dim()));
    if (!table.emplace(id, std::move(e)).second)
      throw Error(path.string() + ":" + std::to_string(line_no) + ": duplicate id '" +
                  id + "'");
  }
  if (table.empty()) throw Error("embedding file is empty: " + path.string());
  return table;
}

void WriteEmbeddings(const std::filesystem::path& path,
                     const std::vector<Embedding>& embeddings) {
  std::ostringstream out;
  for (const Embedding& e : embeddings) {
    out << e.utterance_id;
    for (double v : e.vector) out << ' ' << FormatParam(v);
    out << '\n';
  }
  WriteFileAtomic(path, out.str());
}

std::string CandidateId(const std::string& utterance_id, const DisguiseSpec& restoration) {
  if (restoration.IsIdentity()) return utterance_id;
  return utterance_id + "#" + FormatSpec(restoration);
}

ScorerConfig ScorerConfig::External(std::shared_ptr<const EmbeddingTable> table) {
  ScorerConfig c;
  c.mode = Mode::kExternal;
  c.external_table = std::move(table);
  c.Validate();
  return c;
}

ScorerConfig ScorerConfig::Parse(const std::string& text) {
  if (text == "builtin") return Builtin();
  const std::string prefix = "external:";
  if (text.rfind(prefix, 0) == 0) {
    auto table = std::make_shared<const EmbeddingTable>(
        LoadExternalEmbeddings(text.substr(prefix.size())));
    return External(std::move(table));
  }
  throw Error("scorer must be 'builtin' or 'external:<path>', got '" + text + "'");
}

void ScorerConfig::Validate() const {
  if (mode == Mode::kExternal && !external_table)
    throw Error("external scorer requires a loaded embedding table");
}

Embedding ResolveEmbedding(const ScorerConfig& scorer, const std::string& id,
                           const std::optional<DisguiseSpec>& restoration,
                           const std::function<FeatureMatrix()>& features) {
  scorer.Validate();
  if (scorer.mode == ScorerConfig::Mode::kBuiltin) return Embed(features(), id);
  const std::string key = restoration ? CandidateId(id, *restoration) : id;
  const auto it = scorer.external_table->find(key);
  if (it == scorer.external_table->end())
    throw Error("no external embedding for '" + key + "'");
  return it->second;
}

}  // namespace voxrestore
