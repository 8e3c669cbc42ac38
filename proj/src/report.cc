// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/report.h"

#include <cctype>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

#include "voxrestore/error.h"
#include "voxrestore/file_util.h"

namespace voxrestore {
namespace {

using Json = nlohmann::ordered_json;

Json OptionalNumber(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

// Shortest text that reads back to the same double.
std::string Num(double v) { return Json(v).dump(); }

std::string Sanitize(std::string s) {
  for (char& c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '_'))
      c = '_';
  return s;
}

}  // namespace

std::string ReportToJson(const MatrixReport& report) {
  Json matrix = Json::array();
  for (const MatrixCell& c : report.cells) {
    Json row;
    row["disguise"] = c.disguise;
    row["restoration"] = c.restoration;
    row["eer"] = c.eer ? Json(c.eer->eer_percent) : Json(nullptr);
    row["threshold"] = c.eer ? Json(c.eer->threshold) : Json(nullptr);
    std::size_t n_same = 0, n_diff = 0;
    if (c.eer) {
      n_same = c.eer->n_same;
      n_diff = c.eer->n_diff;
    }
    row["n_same"] = n_same;
    row["n_diff"] = n_diff;
    row["n_trials"] = c.outcomes.size();
    matrix.push_back(std::move(row));
  }
  Json bias = Json::array();
  Json asymmetry = Json::array();
  for (const BiasRow& b : report.bias) {
    for (const BiasBucket& k : b.buckets) {
      Json row;
      row["disguise"] = b.disguise;
      row["restoration"] = b.restoration;
      row["alpha"] = k.alpha;
      row["mean"] = k.mean;
      row["std"] = k.std;
      row["count"] = k.count;
      bias.push_back(std::move(row));
    }
    Json row;
    row["disguise"] = b.disguise;
    row["restoration"] = b.restoration;
    row["mean_abs_error_positive"] = OptionalNumber(b.mean_abs_error_positive);
    row["mean_abs_error_negative"] = OptionalNumber(b.mean_abs_error_negative);
    asymmetry.push_back(std::move(row));
  }
  Json per_alpha = Json::array();
  for (const PerAlphaCurve& c : report.per_alpha) {
    for (const PerAlphaPoint& p : c.points) {
      Json row;
      row["disguise"] = c.disguise;
      row["restoration"] = c.restoration;
      row["alpha"] = p.alpha;
      row["eer"] = p.eer_percent;
      row["n_same"] = p.n_same;
      row["n_diff"] = p.n_diff;
      per_alpha.push_back(std::move(row));
    }
  }
  Json out;
  out["matrix"] = std::move(matrix);
  out["bias"] = std::move(bias);
  out["asymmetry"] = std::move(asymmetry);
  out["per_alpha"] = std::move(per_alpha);
  return out.dump(2) + "\n";
}

std::string ReportToCsv(const MatrixReport& report) {
  std::ostringstream out;
  out << "disguise,restoration,eer,threshold,n_same,n_diff\n";
  for (const MatrixCell& c : report.cells) {
    out << c.disguise << ',' << c.restoration << ',';
    if (c.eer)
      out << Num(c.eer->eer_percent) << ',' << Num(c.eer->threshold) << ',' << c.eer->n_same
          << ',' << c.eer->n_diff;
    else
      out << ",,0,0";
    out << '\n';
  }
  return out.str();
}

std::string PerAlphaCsv(const PerAlphaCurve& curve) {
  std::ostringstream out;
  out << "alpha,eer\n";
  for (const PerAlphaPoint& p : curve.points)
    out << Num(p.alpha) << ',' << Num(p.eer_percent) << '\n';
  return out.str();
}

std::string PerAlphaFileName(const PerAlphaCurve& curve) {
  return Sanitize(curve.disguise) + "__" + Sanitize(curve.restoration) + ".csv";
}

std::string ScoresCsv(const MatrixReport& report, const std::vector<TrialSetInput>& sets) {
  std::ostringstream out;
  out << "disguise,restoration,label,enroll,test,distance,alpha_hat\n";
  for (const MatrixCell& c : report.cells) {
    const TrialSetInput* set = nullptr;
    for (const TrialSetInput& s : sets)
      if (s.disguise == c.disguise) set = &s;
    if (!set || set->trials.size() != c.outcomes.size())
      throw Error("scores need the trial set of matrix column '" + c.disguise + "'");
    for (std::size_t t = 0; t < c.outcomes.size(); ++t) {
      const Trial& trial = set->trials[t];
      out << c.disguise << ',' << c.restoration << ',';
      if (trial.same_speaker) out << (*trial.same_speaker ? 1 : 0);
      out << ',' << trial.enroll_id << ',' << trial.test_id << ','
          << Num(c.outcomes[t].distance) << ',';
      if (c.outcomes[t].alpha_hat) out << Num(*c.outcomes[t].alpha_hat);
      out << '\n';
    }
  }
  return out.str();
}

void WriteReport(const MatrixReport& report, const ReportPaths& paths,
                 const std::vector<TrialSetInput>& sets) {
  std::vector<std::pair<std::filesystem::path, std::string>> files;
  files.emplace_back(paths.json, ReportToJson(report));
  if (paths.csv) files.emplace_back(*paths.csv, ReportToCsv(report));
  if (paths.scores) files.emplace_back(*paths.scores, ScoresCsv(report, sets));
  if (paths.per_alpha_dir) {
    std::filesystem::create_directories(*paths.per_alpha_dir);
    for (const PerAlphaCurve& c : report.per_alpha)
      files.emplace_back(*paths.per_alpha_dir / PerAlphaFileName(c), PerAlphaCsv(c));
  }
  // The JSON report goes last: its presence means the whole set was written.
  for (std::size_t i = 1; i < files.size(); ++i) WriteFileAtomic(files[i].first, files[i].second);
  WriteFileAtomic(files[0].first, files[0].second);
}

}  // namespace voxrestore
