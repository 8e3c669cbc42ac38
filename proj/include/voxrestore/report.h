// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VOXRESTORE_REPORT_H_
#define VOXRESTORE_REPORT_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "voxrestore/evaluation.h"

namespace voxrestore {

// {"matrix": [{disguise, restoration, eer, threshold, n_same, n_diff}],
//  "bias": [{disguise, restoration, alpha, mean, std, count}],
//  "asymmetry": [{disguise, restoration, mean_abs_error_positive,
//                 mean_abs_error_negative}],
//  "per_alpha": [{disguise, restoration, alpha, eer, n_same, n_diff}]}
// Cells without both trial labels carry null eer and threshold.
std::string ReportToJson(const MatrixReport& report);

// The matrix rows as `disguise,restoration,eer,threshold,n_same,n_diff`.
std::string ReportToCsv(const MatrixReport& report);

// `alpha,eer` for one curve.
std::string PerAlphaCsv(const PerAlphaCurve& curve);
// File name of a curve inside the per-alpha directory.
std::string PerAlphaFileName(const PerAlphaCurve& curve);

// Per-trial scores, `disguise,restoration,label,enroll,test,distance,alpha_hat`,
// in matrix order. `sets` must be the input RunMatrix scored.
std::string ScoresCsv(const MatrixReport& report, const std::vector<TrialSetInput>& sets);

struct ReportPaths {
  std::filesystem::path json;
  std::optional<std::filesystem::path> csv;
  std::optional<std::filesystem::path> per_alpha_dir;
  std::optional<std::filesystem::path> scores;
};

// Renders everything first, then writes each file atomically.
// `sets` is only read for the scores file.
void WriteReport(const MatrixReport& report, const ReportPaths& paths,
                 const std::vector<TrialSetInput>& sets = {});

}  // namespace voxrestore

#endif  // VOXRESTORE_REPORT_H_
