#pragma once

// Per-problem pipeline orchestration, two-strategy answer aggregation,
// concurrent evaluation, and report rendering.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "degnli/error.hpp"
#include "degnli/problems.hpp"
#include "degnli/prover.hpp"
#include "degnli/semantics.hpp"
#include "degnli/tff.hpp"

namespace degnli {

// How far a problem got before an answer (or a failure) was produced.
enum class Stage { Parse, Sem, Prove, Done };

inline std::string stage_name(Stage s) {
  switch (s) {
    case Stage::Parse: return "parse";
    case Stage::Sem: return "sem";
    case Stage::Prove: return "prove";
    case Stage::Done: return "done";
  }
  return "done";
}

enum class StrategyChoice { Left, Right, Both };

struct PipelineConfig {
  const Fragment* fragment = nullptr;  // defaults to the built-in fragment
  StrategyChoice strategy = StrategyChoice::Both;
  ProverOptions prover;
  std::optional<ExternalProver> external;  // when set, proofs run externally
  // Test hook: replaces the prover entirely (axioms still instantiated by
  // the decider itself when unset).
  std::function<Answer(const std::vector<TermPtr>&, const TermPtr&, const KB&)> decide_override;

  const Fragment& frag() const {
    static Fragment standard = Fragment::standard();
    return fragment ? *fragment : standard;
  }
};

struct PipelineResult {
  Answer answer = Answer::Unknown;
  Stage stage = Stage::Done;       // stage reached; Done means a verdict was produced
  std::string failure;             // nonempty when a stage failed
  std::vector<TermPtr> premise_lfs;
  TermPtr hypothesis_lf;
};

// The quoted aggregation table: a definite answer beats unknown; definite
// disagreement cancels to unknown; equal answers return themselves.
inline Answer combine_answers(Answer a, Answer b) {
  if (a == b) return a;
  if (a == Answer::Unknown) return b;
  if (b == Answer::Unknown) return a;
  return Answer::Unknown;  // yes vs no
}

namespace pipedetail {

inline Answer decide_with(const PipelineConfig& config, const std::vector<TermPtr>& premises,
                          const TermPtr& hypothesis, const KB& kb) {
  if (config.decide_override) return config.decide_override(premises, hypothesis, kb);
  if (config.external) return external_decide(premises, hypothesis, kb, *config.external);
  return decide(premises, hypothesis, kb, config.prover).answer;
}

// One full pass under a single parse strategy.  Failures never escape: they
// set the stage of the failing phase and leave the answer unknown.
inline PipelineResult run_one(const Problem& problem, const PipelineConfig& config,
                              Strategy strategy) {
  const Fragment& frag = config.frag();
  PipelineResult r;
  std::vector<std::string> sentences = problem.premises;
  sentences.push_back(problem.hypothesis);
  std::vector<TermPtr> lfs;
  for (const std::string& s : sentences) {
    Analysis a;
    try {
      a.tokens = prepare_tokens(tokenize(s), frag.lexicon, frag.extra_merges);
      std::vector<TreePtr> roots = parse(a.tokens, frag.lexicon, strategy);
      if (roots.empty()) throw ParseFailure("no parse: " + s);
      a.derivation = roots.front();
    } catch (const Error& e) {
      r.stage = Stage::Parse;
      r.failure = e.what();
      return r;
    }
    try {
      a.transformed = apply_all(a.derivation, frag.lexicon, frag.tree_rules);
      a.raw = assign(a.transformed, frag.templates, frag.kb);
      TermPtr reduced = beta_reduce(a.raw);
      reduced = normalize_units(reduced, frag.kb.units());
      a.lf = simplify(reduced);
      check_formula(a.lf);
    } catch (const Error& e) {
      r.stage = Stage::Sem;
      r.failure = e.what();
      return r;
    }
    lfs.push_back(a.lf);
  }
  r.hypothesis_lf = lfs.back();
  lfs.pop_back();
  r.premise_lfs = std::move(lfs);
  try {
    r.answer = decide_with(config, r.premise_lfs, r.hypothesis_lf, frag.kb);
    r.stage = Stage::Done;
  } catch (const Error& e) {
    r.stage = Stage::Prove;
    r.failure = e.what();
    r.answer = Answer::Unknown;
  }
  return r;
}

}  // namespace pipedetail

// Runs the problem under the configured strategies and aggregates.  With
// both strategies the combined verdict follows the aggregation table; the
// reported stage/artifacts come from the run that produced the verdict
// (the left-preference run when both agree).
inline PipelineResult run_pipeline(const Problem& problem, const PipelineConfig& config) {
  if (config.strategy == StrategyChoice::Left)
    return pipedetail::run_one(problem, config, Strategy::Left);
  if (config.strategy == StrategyChoice::Right)
    return pipedetail::run_one(problem, config, Strategy::Right);
  PipelineResult left = pipedetail::run_one(problem, config, Strategy::Left);
  PipelineResult right = pipedetail::run_one(problem, config, Strategy::Right);
  Answer combined = combine_answers(left.answer, right.answer);
  PipelineResult& winner = (combined == left.answer) ? left : right;
  winner.answer = combined;
  return winner;
}

// ---------------------------------------------------------------------------
// Evaluation: run every problem, aggregate accuracies, render reports.
// ---------------------------------------------------------------------------

struct ProblemReport {
  std::string id;
  Answer answer = Answer::Unknown;
  Gold gold = Gold::Unlabeled;
  bool labeled = false;
  bool correct = false;  // meaningful only when labeled
  Stage stage = Stage::Done;
  std::string failure;
  double wall_ms = 0.0;
  std::vector<std::string> tags;
};

struct TagSummary {
  int total = 0;
  int labeled = 0;
  int correct = 0;
  double accuracy = 0.0;  // correct / labeled; 0 when no labeled problems
};

struct RunReport {
  std::vector<ProblemReport> rows;
  int total = 0;
  int labeled = 0;
  int correct = 0;
  double accuracy = 0.0;
  double majority_baseline = 0.0;
  std::map<std::string, TagSummary> per_tag;
  // confusion[gold][answer], labeled problems only; indices 0=yes 1=no 2=unknown.
  int confusion[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
};

namespace pipedetail {

inline int answer_index(Answer a) {
  return a == Answer::Yes ? 0 : a == Answer::No ? 1 : 2;
}
inline int gold_index(Gold g) {
  return g == Gold::Yes ? 0 : g == Gold::No ? 1 : 2;
}

inline bool matches(Answer a, Gold g) {
  return (a == Answer::Yes && g == Gold::Yes) || (a == Answer::No && g == Gold::No) ||
         (a == Answer::Unknown && g == Gold::Unknown);
}

}  // namespace pipedetail

// The best constant-answer accuracy for this gold distribution.
inline double majority_baseline(const std::vector<Problem>& problems) {
  int counts[3] = {0, 0, 0};
  int labeled = 0;
  for (const Problem& p : problems) {
    if (p.gold == Gold::Unlabeled) continue;
    ++labeled;
    ++counts[pipedetail::gold_index(p.gold)];
  }
  if (labeled == 0) return 0.0;
  int best = std::max(counts[0], std::max(counts[1], counts[2]));
  return static_cast<double>(best) / labeled;
}

inline RunReport evaluate(const std::vector<Problem>& problems, const PipelineConfig& config,
                          int workers = 1) {
  RunReport report;
  report.rows.resize(problems.size());
  if (workers < 1) workers = 1;
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    // Each worker owns a copy of the fragment so pipeline state is private.
    Fragment local = config.frag();
    PipelineConfig local_config = config;
    local_config.fragment = &local;
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= problems.size()) return;
      const Problem& p = problems[i];
      ProblemReport row;
      row.id = p.id;
      row.gold = p.gold;
      row.labeled = p.gold != Gold::Unlabeled;
      row.tags = p.tags;
      auto t0 = std::chrono::steady_clock::now();
      PipelineResult r = run_pipeline(p, local_config);
      auto t1 = std::chrono::steady_clock::now();
      row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      row.answer = r.answer;
      row.stage = r.stage;
      row.failure = r.failure;
      row.correct = row.labeled && pipedetail::matches(r.answer, p.gold);
      report.rows[i] = std::move(row);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  report.total = static_cast<int>(report.rows.size());
  for (const ProblemReport& row : report.rows) {
    for (const std::string& tag : row.tags) {
      TagSummary& ts = report.per_tag[tag];
      ++ts.total;
      if (row.labeled) {
        ++ts.labeled;
        if (row.correct) ++ts.correct;
      }
    }
    if (!row.labeled) continue;
    ++report.labeled;
    if (row.correct) ++report.correct;
    ++report.confusion[pipedetail::gold_index(row.gold)][pipedetail::answer_index(row.answer)];
  }
  if (report.labeled > 0)
    report.accuracy = static_cast<double>(report.correct) / report.labeled;
  for (auto& [tag, ts] : report.per_tag)
    if (ts.labeled > 0) ts.accuracy = static_cast<double>(ts.correct) / ts.labeled;
  report.majority_baseline = majority_baseline(problems);
  return report;
}

// ---------------------------------------------------------------------------
// Report rendering: JSON lines (one row per problem plus a summary object)
// and a human-readable table.
// ---------------------------------------------------------------------------

inline std::string report_jsonl(const RunReport& report, bool with_timing = true) {
  std::string out;
  for (const ProblemReport& row : report.rows) {
    nlohmann::json j;
    j["id"] = row.id;
    j["answer"] = answer_name(row.answer);
    j["gold"] = gold_name(row.gold);
    if (row.labeled) j["correct"] = row.correct;
    j["stage"] = stage_name(row.stage);
    if (!row.failure.empty()) j["failure"] = row.failure;
    if (!row.tags.empty()) j["tags"] = row.tags;
    if (with_timing) j["ms"] = row.wall_ms;
    out += j.dump() + "\n";
  }
  nlohmann::json s;
  s["summary"] = true;
  s["total"] = report.total;
  s["labeled"] = report.labeled;
  s["correct"] = report.correct;
  s["accuracy"] = report.accuracy;
  s["majority_baseline"] = report.majority_baseline;
  nlohmann::json tags = nlohmann::json::object();
  for (const auto& [tag, ts] : report.per_tag)
    tags[tag] = {{"total", ts.total},
                 {"labeled", ts.labeled},
                 {"correct", ts.correct},
                 {"accuracy", ts.accuracy}};
  s["per_tag"] = tags;
  const char* names[3] = {"yes", "no", "unknown"};
  nlohmann::json conf = nlohmann::json::object();
  for (int g = 0; g < 3; ++g) {
    nlohmann::json row = nlohmann::json::object();
    for (int a = 0; a < 3; ++a) row[names[a]] = report.confusion[g][a];
    conf[names[g]] = row;
  }
  s["confusion"] = conf;
  out += s.dump() + "\n";
  return out;
}

inline std::string report_table(const RunReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(14) << "id" << std::setw(10) << "answer" << std::setw(11)
      << "gold" << std::setw(9) << "correct" << std::setw(7) << "stage"
      << "ms\n";
  for (const ProblemReport& row : report.rows) {
    out << std::left << std::setw(14) << row.id << std::setw(10) << answer_name(row.answer)
        << std::setw(11) << gold_name(row.gold) << std::setw(9)
        << (row.labeled ? (row.correct ? "yes" : "NO") : "-") << std::setw(7)
        << stage_name(row.stage) << std::fixed << std::setprecision(1) << row.wall_ms << "\n";
  }
  out << "\n";
  out << "accuracy: " << std::fixed << std::setprecision(3) << report.accuracy << " ("
      << report.correct << "/" << report.labeled << " labeled, " << report.total << " total)\n";
  out << "majority baseline: " << std::setprecision(3) << report.majority_baseline << "\n";
  if (!report.per_tag.empty()) {
    out << "per tag:\n";
    for (const auto& [tag, ts] : report.per_tag) {
      out << "  " << std::left << std::setw(12) << tag << std::setprecision(3) << ts.accuracy
          << " (" << ts.correct << "/" << ts.labeled << " labeled, " << ts.total << " total)\n";
    }
  }
  const char* names[3] = {"yes", "no", "unknown"};
  out << "confusion (rows gold, cols answer):\n";
  out << "  " << std::left << std::setw(9) << "";
  for (int a = 0; a < 3; ++a) out << std::setw(9) << names[a];
  out << "\n";
  for (int g = 0; g < 3; ++g) {
    out << "  " << std::left << std::setw(9) << names[g];
    for (int a = 0; a < 3; ++a) out << std::setw(9) << report.confusion[g][a];
    out << "\n";
  }
  return out.str();
}

}  // namespace degnli
