// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/trials.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "voxrestore/disguise.h"
#include "voxrestore/error.h"
#include "voxrestore/file_util.h"
#include "voxrestore/parallel.h"
#include "voxrestore/restore.h"

namespace voxrestore {
namespace {

double ParseDouble(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw Error("bad number '" + std::string(text) + "' in disguise policy");
  return v;
}

std::size_t Pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

std::string TrialTag(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "t%05zu", index);
  return buf;
}

}  // namespace

DisguisePolicy DisguisePolicy::Parse(std::string_view text) {
  DisguisePolicy p;
  if (text == "none") return p;
  if (text == "vtln-mixed") {
    p.kind = Kind::kMixedVtln;
    return p;
  }
  p.kind = Kind::kFamily;
  const auto colon = text.find(':');
  p.family = ParseFamily(text.substr(0, colon));
  const GridSpec grid = DefaultGrid(p.family);
  if (colon == std::string_view::npos) {
    p.values = grid.values;
    return p;
  }
  const std::string_view rest = text.substr(colon + 1);
  const auto second = rest.find(':');
  if (second == std::string_view::npos)
    throw Error("disguise policy range must be <family>:<min>:<max>");
  const double lo = ParseDouble(rest.substr(0, second));
  const double hi = ParseDouble(rest.substr(second + 1));
  for (double v : grid.values)
    if (v >= lo - 1e-9 && v <= hi + 1e-9) p.values.push_back(v);
  if (p.values.empty()) throw Error("disguise policy range selects no grid values");
  return p;
}

std::string DisguisePolicy::Name() const {
  switch (kind) {
    case Kind::kNone: return "none";
    case Kind::kMixedVtln: return "vtln-mixed";
    case Kind::kFamily: return FamilyName(family);
  }
  return "none";
}

TrialSet GenTrials(const Corpus& corpus, std::size_t n_trials, const DisguisePolicy& policy,
                   std::uint64_t seed, double same_fraction, int jobs) {
  if (corpus.empty()) throw Error("cannot draw trials from an empty corpus");
  if (!(same_fraction >= 0.0 && same_fraction <= 1.0))
    throw Error("same-speaker fraction must lie in [0, 1]");

  std::map<std::string, std::vector<std::size_t>> by_speaker;
  for (std::size_t i = 0; i < corpus.size(); ++i) by_speaker[corpus[i].speaker].push_back(i);
  std::vector<std::size_t> multi;  // utterances whose speaker has another one
  for (std::size_t i = 0; i < corpus.size(); ++i)
    if (by_speaker[corpus[i].speaker].size() >= 2) multi.push_back(i);

  const auto n_same = static_cast<std::size_t>(std::lround(n_trials * same_fraction));
  const std::size_t n_diff = n_trials - n_same;
  if (n_same > 0 && multi.empty())
    throw Error("corpus too small: no speaker has two utterances for same-speaker trials");
  if (n_diff > 0 && by_speaker.size() < 2)
    throw Error("corpus too small: different-speaker trials need two speakers");

  std::mt19937_64 rng(MixSeed(seed, 0x7121A15));
  std::vector<bool> labels(n_trials, false);
  std::fill(labels.begin(), labels.begin() + static_cast<long>(n_same), true);
  std::shuffle(labels.begin(), labels.end(), rng);

  TrialSet set;
  set.trials.resize(n_trials);
  std::vector<std::pair<std::size_t, std::optional<DisguiseSpec>>> sources(n_trials);
  for (std::size_t t = 0; t < n_trials; ++t) {
    std::size_t enroll, test;
    if (labels[t]) {
      enroll = multi[Pick(rng, multi.size())];
      const auto& same = by_speaker[corpus[enroll].speaker];
      do {
        test = same[Pick(rng, same.size())];
      } while (test == enroll);
    } else {
      enroll = Pick(rng, corpus.size());
      do {
        test = Pick(rng, corpus.size());
      } while (corpus[test].speaker == corpus[enroll].speaker);
    }
    std::optional<DisguiseSpec> spec;
    switch (policy.kind) {
      case DisguisePolicy::Kind::kNone:
        break;
      case DisguisePolicy::Kind::kFamily:
        spec = DisguiseSpec{policy.family, policy.values[Pick(rng, policy.values.size())]};
        break;
      case DisguisePolicy::Kind::kMixedVtln: {
        const DisguiseFamily family = kVtlnFamilies[Pick(rng, kVtlnFamilies.size())];
        const GridSpec grid = DefaultGrid(family);
        spec = DisguiseSpec{family, grid.values[Pick(rng, grid.values.size())]};
        break;
      }
    }
    Trial& trial = set.trials[t];
    trial.enroll_id = corpus[enroll].id;
    trial.same_speaker = labels[t];
    trial.disguise_meta = spec;
    trial.test_id = spec ? TrialTag(t) + "-" + corpus[test].id : corpus[test].id;
    sources[t] = {test, spec};
  }

  std::vector<std::size_t> disguised_trials;
  for (std::size_t t = 0; t < n_trials; ++t)
    if (sources[t].second) disguised_trials.push_back(t);
  set.disguised.resize(disguised_trials.size());
  ParallelFor(disguised_trials.size(), jobs, [&](std::size_t i) {
    const std::size_t t = disguised_trials[i];
    const Utterance& src = corpus[sources[t].first];
    set.disguised[i] = {set.trials[t].test_id, src.speaker,
                        Disguise(src.audio, *sources[t].second)};
  });
  return set;
}

void WriteTrials(const std::vector<Trial>& trials, const std::filesystem::path& path) {
  std::ostringstream out;
  for (const Trial& t : trials) {
    if (!t.same_speaker) throw Error("trial files need a label on every trial");
    out << (*t.same_speaker ? 1 : 0) << ' ' << t.enroll_id << ' ' << t.test_id;
    if (t.disguise_meta) out << ' ' << FormatSpec(*t.disguise_meta);
    out << '\n';
  }
  WriteFileAtomic(path, out.str());
}

std::vector<Trial> ReadTrials(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open trial file: " + path.string());
  std::vector<Trial> trials;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    std::istringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string tok; tokens >> tok;) parts.push_back(tok);
    if (parts.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no) + ": ";
    if (parts.size() < 3 || parts.size() > 4)
      throw Error(where + "expected '<0|1> <enroll> <test> [family:param]'");
    if (parts[0] != "0" && parts[0] != "1") throw Error(where + "label must be 0 or 1");
    Trial t;
    t.same_speaker = parts[0] == "1";
    t.enroll_id = parts[1];
    t.test_id = parts[2];
    if (parts.size() == 4) {
      try {
        t.disguise_meta = ParseSpec(parts[3]);
      } catch (const Error& e) {
        throw Error(where + e.what());
      }
    }
    trials.push_back(std::move(t));
  }
  if (trials.empty()) throw Error("trial file is empty: " + path.string());
  return trials;
}

std::string DisguiseLabel(const std::vector<Trial>& trials) {
  std::set<DisguiseFamily> families;
  bool any_plain = false;
  for (const Trial& t : trials) {
    if (t.disguise_meta)
      families.insert(t.disguise_meta->family);
    else
      any_plain = true;
  }
  if (families.empty()) return "none";
  if (!any_plain && families.size() == 1) return FamilyName(*families.begin());
  if (!any_plain && std::all_of(families.begin(), families.end(), IsVtlnFamily))
    return "vtln-mixed";
  return "mixed";
}

}  // namespace voxrestore
