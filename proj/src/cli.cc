// Copyright 2026 The voxrestore Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "voxrestore/cli.h"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "voxrestore/corpus.h"
#include "voxrestore/disguise.h"
#include "voxrestore/error.h"
#include "voxrestore/evaluation.h"
#include "voxrestore/parallel.h"
#include "voxrestore/report.h"
#include "voxrestore/restore.h"
#include "voxrestore/trials.h"
#include "voxrestore/wav.h"

namespace voxrestore {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct Globals {
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string log_level;
};

void SetUpLogging(const std::string& flag) {
  auto logger = spdlog::stderr_color_mt("voxrestore");
  spdlog::set_default_logger(logger);
  std::string level = flag;
  if (level.empty())
    if (const char* env = std::getenv("VOXRESTORE_LOG")) level = env;
  if (level.empty()) level = "warn";
  const auto parsed = spdlog::level::from_str(level);
  if (parsed == spdlog::level::off && level != "off")
    throw Error("unknown log level '" + level + "'");
  spdlog::set_level(parsed);
}

std::string Stem(const fs::path& p) { return p.stem().string(); }

// Trial tokens are paths relative to the trial file's directory; a token
// without an extension names `<token>.wav`.
fs::path TokenPath(const fs::path& base, const std::string& token) {
  fs::path p(token);
  if (!p.has_extension()) p += ".wav";
  return p.is_absolute() ? p : base / p;
}

std::string RelativeToken(const fs::path& file, const fs::path& base) {
  return fs::absolute(file).lexically_normal().lexically_relative(
      fs::absolute(base).lexically_normal()).generic_string();
}

// --- disguise ---------------------------------------------------------------

struct DisguiseArgs {
  std::string in, out, spec, encoding = "pcm16";
};

WavEncoding ParseEncoding(const std::string& s) {
  if (s == "pcm16") return WavEncoding::kPcm16;
  if (s == "float32") return WavEncoding::kFloat32;
  throw Error("unknown encoding '" + s + "' (pcm16|float32)");
}

int CmdDisguise(const DisguiseArgs& a) {
  const DisguiseSpec spec = ParseSpec(a.spec);
  spec.Validate();
  const WavEncoding encoding = ParseEncoding(a.encoding);
  const AudioBuffer y = Disguise(LoadWav(a.in), spec);
  SaveWav(y, a.out, encoding);
  Json meta;
  meta["in"] = a.in;
  meta["out"] = a.out;
  meta["spec"] = FormatSpec(spec);
  fmt::print("{}\n", meta.dump());
  return 0;
}

// --- estimate ---------------------------------------------------------------

struct EstimateArgs {
  std::string enroll, test, family = "pitch-freq", grid = "default", scorer = "builtin";
  std::string method = "grid", enroll_id, test_id;
};

int CmdEstimate(const EstimateArgs& a, const Globals& g) {
  const DisguiseFamily family = ParseFamily(a.family);
  const ScorerConfig scorer = ScorerConfig::Parse(a.scorer);
  const AudioBuffer x = LoadWav(a.enroll);
  const AudioBuffer y = LoadWav(a.test);
  RestoreOptions options;
  options.enroll_id = a.enroll_id.empty() ? Stem(a.enroll) : a.enroll_id;
  options.test_id = a.test_id.empty() ? Stem(a.test) : a.test_id;
  options.jobs = g.jobs;
  RestorationResult result;
  if (a.method == "grid") {
    result = GridSearchRestore(x, y, ParseGrid(family, a.grid), scorer, options);
  } else if (a.method == "f0ratio") {
    result = F0RatioRestore(x, y, family, scorer, options);
  } else {
    throw Error("unknown method '" + a.method + "' (grid|f0ratio)");
  }
  fmt::print("{}\n", RestorationToJson(result));
  fmt::print(stderr, "alpha_hat {} ({}), d_hat {:.6f}\n", FormatParam(result.alpha_hat),
             FamilyName(result.family), result.d_hat);
  return 0;
}

// --- restore ----------------------------------------------------------------

struct RestoreArgs {
  std::string in, out, family = "pitch-freq", encoding = "pcm16";
  double alpha = 0.0;
  int griffin_lim = 0;
};

int CmdRestore(const RestoreArgs& a) {
  const DisguiseFamily family = ParseFamily(a.family);
  DisguiseSpec{family, a.alpha}.Validate();
  if (a.griffin_lim < 0) throw Error("--griffin-lim needs a positive iteration count");
  const Resynthesis mode = a.griffin_lim > 0 ? Resynthesis::kGriffinLim : Resynthesis::kWarpedPhase;
  const RestoredUtterance r = RestoreWith(LoadWav(a.in), a.alpha, family, mode,
                                          a.griffin_lim > 0 ? a.griffin_lim : 32);
  SaveWav(*r.audio, a.out, ParseEncoding(a.encoding));
  Json meta;
  meta["in"] = a.in;
  meta["out"] = a.out;
  meta["restoration"] = FormatSpec({family, a.alpha});
  meta["resynthesis"] = a.griffin_lim > 0 ? "griffin-lim" : "warped-phase";
  fmt::print("{}\n", meta.dump());
  return 0;
}

// --- corpus -----------------------------------------------------------------

struct CorpusArgs {
  std::string out;
  CorpusConfig config;
};

int CmdCorpus(CorpusArgs a, const Globals& g) {
  a.config.seed = g.seed;
  a.config.Validate();
  const Corpus corpus = SynthCorpus(a.config);
  WriteCorpus(corpus, a.out);
  fmt::print(stderr, "wrote {} utterances of {} speakers to {}\n", corpus.size(),
             a.config.n_speakers, a.out);
  return 0;
}

// --- trials -----------------------------------------------------------------

struct TrialsArgs {
  std::string corpus, out, policy = "none";
  std::size_t n = 400;
  double same_fraction = 0.5;
};

int CmdTrials(const TrialsArgs& a, const Globals& g) {
  const Corpus corpus = LoadCorpus(a.corpus);
  const DisguisePolicy policy = DisguisePolicy::Parse(a.policy);
  TrialSet set = GenTrials(corpus, a.n, policy, g.seed, a.same_fraction, g.jobs);

  const fs::path out(a.out);
  const fs::path base = out.has_parent_path() ? out.parent_path() : fs::path(".");
  if (!fs::is_directory(base)) throw Error("output directory does not exist: " + base.string());
  const fs::path audio_dir = base / (Stem(out) + "_audio");
  if (!set.disguised.empty()) fs::create_directories(audio_dir);
  ParallelFor(set.disguised.size(), g.jobs, [&](std::size_t i) {
    SaveWav(set.disguised[i].audio, audio_dir / (set.disguised[i].id + ".wav"),
            WavEncoding::kFloat32);
  });

  std::map<std::string, std::string> token;
  for (const Utterance& u : corpus)
    token[u.id] = RelativeToken(fs::path(a.corpus) / (u.id + ".wav"), base);
  for (const Utterance& u : set.disguised)
    token[u.id] = RelativeToken(audio_dir / (u.id + ".wav"), base);
  for (Trial& t : set.trials) {
    t.enroll_id = token.at(t.enroll_id);
    t.test_id = token.at(t.test_id);
  }
  WriteTrials(set.trials, out);
  std::size_t n_same = 0;
  for (const Trial& t : set.trials) n_same += *t.same_speaker ? 1 : 0;
  fmt::print(stderr, "wrote {} trials ({} same-speaker, disguise {}) to {}\n",
             set.trials.size(), n_same, policy.Name(), a.out);
  return 0;
}

// --- eval -------------------------------------------------------------------

struct EvalArgs {
  std::vector<std::string> trials;
  std::vector<std::string> restore;
  std::string scorer = "builtin", out, csv, per_alpha_dir, scores;
};

int CmdEval(const EvalArgs& a, const Globals& g) {
  const ScorerConfig scorer = ScorerConfig::Parse(a.scorer);
  std::vector<RestorationMethod> methods;
  for (const std::string& r : a.restore.empty() ? std::vector<std::string>{"none"} : a.restore)
    methods.push_back(RestorationMethod::Parse(r));

  // Tokens of different trial files may coincide but mean different files, so
  // each set gets its own resolver base and a private key space.
  std::vector<TrialSetInput> sets;
  std::map<std::string, fs::path> audio_path;
  std::map<std::string, int> label_uses;
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    const fs::path file(a.trials[i]);
    std::vector<Trial> trials = ReadTrials(file);
    const fs::path base = file.has_parent_path() ? file.parent_path() : fs::path(".");
    std::string label = DisguiseLabel(trials);
    if (++label_uses[label] > 1) label += "@" + Stem(file);
    for (Trial& t : trials)
      for (std::string* id : {&t.enroll_id, &t.test_id}) {
        const fs::path p = TokenPath(base, *id);
        const auto [it, inserted] = audio_path.emplace(*id, p);
        if (!inserted && it->second != p)
          throw Error("trial token '" + *id + "' names different files in different trial lists");
      }
    sets.push_back({label, std::move(trials)});
  }
  const AudioResolver resolver = [&](const std::string& id) {
    return LoadWav(audio_path.at(id));
  };
  const MatrixReport report = RunMatrix(sets, methods, scorer, resolver, g.jobs);

  ReportPaths paths;
  paths.json = a.out;
  if (!a.csv.empty()) paths.csv = a.csv;
  if (!a.per_alpha_dir.empty()) paths.per_alpha_dir = a.per_alpha_dir;
  if (!a.scores.empty()) paths.scores = a.scores;
  WriteReport(report, paths, sets);

  fmt::print(stderr, "{:<16} {:<16} {:>8} {:>7} {:>7}\n", "disguise", "restoration", "EER%",
             "n_same", "n_diff");
  for (const MatrixCell& c : report.cells) {
    if (c.eer)
      fmt::print(stderr, "{:<16} {:<16} {:>8.2f} {:>7} {:>7}\n", c.disguise, c.restoration,
                 c.eer->eer_percent, c.eer->n_same, c.eer->n_diff);
    else
      fmt::print(stderr, "{:<16} {:<16} {:>8} {:>7}\n", c.disguise, c.restoration, "-",
                 c.outcomes.size());
  }
  return 0;
}

// --- embed ------------------------------------------------------------------

struct EmbedArgs {
  std::string trials, out;
  std::vector<std::string> families;
};

// Builtin embeddings of every utterance in a trial list, keyed by trial token,
// plus restored candidates (`<token>#<family>:<param>`) over the default grid
// of each requested family. The output loads as an external scorer table.
int CmdEmbed(const EmbedArgs& a, const Globals& g) {
  const fs::path file(a.trials);
  const fs::path base = file.has_parent_path() ? file.parent_path() : fs::path(".");
  std::vector<std::string> tokens;
  {
    std::map<std::string, bool> seen;
    for (const Trial& t : ReadTrials(file))
      for (const std::string& id : {t.enroll_id, t.test_id})
        if (!seen[id]) {
          seen[id] = true;
          tokens.push_back(id);
        }
  }
  std::vector<GridSpec> grids;
  for (const std::string& f : a.families)
    grids.push_back(DefaultGrid(f == "pitch" ? DisguiseFamily::kPitchScaleFreq : ParseFamily(f)));

  std::vector<std::vector<Embedding>> per_token(tokens.size());
  ParallelFor(tokens.size(), g.jobs, [&](std::size_t i) {
    const PreparedTest prepared = PrepareTest(LoadWav(TokenPath(base, tokens[i])));
    auto& out = per_token[i];
    out.push_back(Embed(RestoreFeatures(prepared, 0.0, DisguiseFamily::kPitchScaleFreq),
                        tokens[i]));
    for (const GridSpec& grid : grids)
      for (double alpha : grid.values) {
        const DisguiseSpec spec{grid.family, alpha};
        if (spec.IsIdentity()) continue;
        out.push_back(Embed(RestoreFeatures(prepared, alpha, grid.family),
                            CandidateId(tokens[i], spec)));
      }
  });
  std::vector<Embedding> all;
  for (auto& v : per_token)
    for (auto& e : v) all.push_back(std::move(e));
  WriteEmbeddings(a.out, all);
  fmt::print(stderr, "wrote {} embeddings to {}\n", all.size(), a.out);
  return 0;
}

}  // namespace

int RunCli(int argc, char** argv) {
  CLI::App app{"Voice disguise, disguise-parameter estimation and restoration, and "
               "speaker-verification evaluation."};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads; results do not depend on it")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--log-level", g.log_level,
                 "trace|debug|info|warn|error|off (default: $VOXRESTORE_LOG or warn)");

  DisguiseArgs dis;
  auto* c_dis = app.add_subcommand("disguise", "Apply a disguise to a WAV file");
  c_dis->add_option("--in", dis.in, "Input WAV")->required();
  c_dis->add_option("--out", dis.out, "Output WAV")->required();
  c_dis->add_option("--spec", dis.spec, "family:param, e.g. pitch-freq:4")->required();
  c_dis->add_option("--encoding", dis.encoding, "pcm16|float32")->capture_default_str();

  EstimateArgs est;
  auto* c_est = app.add_subcommand("estimate", "Estimate the disguise parameter of a test file");
  c_est->add_option("--enroll", est.enroll, "Enrollment WAV")->required();
  c_est->add_option("--test", est.test, "Test WAV")->required();
  c_est->add_option("--family", est.family, "Restoration family")->capture_default_str();
  c_est->add_option("--grid", est.grid, "default or min:max:step")->capture_default_str();
  c_est->add_option("--scorer", est.scorer, "builtin or external:<path>")->capture_default_str();
  c_est->add_option("--method", est.method, "grid|f0ratio")->capture_default_str();
  c_est->add_option("--enroll-id", est.enroll_id, "External-table key (default: file stem)");
  c_est->add_option("--test-id", est.test_id, "External-table key (default: file stem)");

  RestoreArgs res;
  auto* c_res = app.add_subcommand("restore", "Write the restored waveform f^-1(y; alpha)");
  c_res->add_option("--in", res.in, "Disguised WAV")->required();
  c_res->add_option("--out", res.out, "Restored WAV")->required();
  c_res->add_option("--family", res.family, "Restoration family")->capture_default_str();
  c_res->add_option("--alpha", res.alpha, "Restoration parameter")->required();
  c_res->add_option("--griffin-lim", res.griffin_lim,
                    "Resynthesize with N Griffin-Lim iterations instead of warped phases");
  c_res->add_option("--encoding", res.encoding, "pcm16|float32")->capture_default_str();

  CorpusArgs cor;
  auto* c_cor = app.add_subcommand("corpus", "Synthesize the toy corpus");
  c_cor->add_option("--out", cor.out, "Output directory")->required();
  c_cor->add_option("--speakers", cor.config.n_speakers)->capture_default_str();
  c_cor->add_option("--utts", cor.config.utts_per_speaker, "Utterances per speaker")
      ->capture_default_str();
  c_cor->add_option("--duration", cor.config.duration_s, "Seconds per utterance")
      ->capture_default_str();
  c_cor->add_option("--sample-rate", cor.config.sample_rate)->capture_default_str();

  TrialsArgs tri;
  auto* c_tri = app.add_subcommand("trials", "Draw a trial list, disguising the test side");
  c_tri->add_option("--corpus", tri.corpus, "Corpus directory")->required();
  c_tri->add_option("--out", tri.out, "Trial file; audio goes to <stem>_audio/")->required();
  c_tri->add_option("--n", tri.n, "Number of trials")->capture_default_str();
  c_tri->add_option("--policy", tri.policy, "none | <family>[:min:max] | vtln-mixed")
      ->capture_default_str();
  c_tri->add_option("--same-fraction", tri.same_fraction)->capture_default_str();

  EvalArgs ev;
  auto* c_ev = app.add_subcommand("eval", "Score trial lists under restoration methods");
  c_ev->add_option("--trials", ev.trials, "Trial file (repeatable)")->required();
  c_ev->add_option("--restore", ev.restore,
                   "none | pitch | <family>[=min:max:step] | f0ratio (repeatable)");
  c_ev->add_option("--scorer", ev.scorer, "builtin or external:<path>")->capture_default_str();
  c_ev->add_option("--out", ev.out, "Report JSON")->required();
  c_ev->add_option("--csv", ev.csv, "Matrix CSV");
  c_ev->add_option("--per-alpha-dir", ev.per_alpha_dir, "Directory for alpha,eer curves");
  c_ev->add_option("--scores", ev.scores, "Per-trial distances and estimates (CSV)");

  EmbedArgs emb;
  auto* c_emb = app.add_subcommand("embed", "Dump builtin embeddings of a trial list");
  c_emb->add_option("--trials", emb.trials, "Trial file")->required();
  c_emb->add_option("--out", emb.out, "Embedding table")->required();
  c_emb->add_option("--family", emb.families,
                    "Also dump restored candidates over this family's default grid "
                    "(repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    SetUpLogging(g.log_level);
    if (c_dis->parsed()) return CmdDisguise(dis);
    if (c_est->parsed()) return CmdEstimate(est, g);
    if (c_res->parsed()) return CmdRestore(res);
    if (c_cor->parsed()) return CmdCorpus(cor, g);
    if (c_tri->parsed()) return CmdTrials(tri, g);
    if (c_ev->parsed()) return CmdEval(ev, g);
    if (c_emb->parsed()) return CmdEmbed(emb, g);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 1;
}

}  // namespace voxrestore
