// Command-line surface: parse/sem expose single-sentence analyses, prove
// answers one entailment problem or a file of them, eval scores a dataset.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "degnli/pipeline.hpp"
#include "degnli/problems.hpp"
#include "degnli/semantics.hpp"
#include "degnli/tff.hpp"

using namespace degnli;

namespace {

struct CommonOpts {
  std::string lexicon, templates, kb;
  std::string strategy = "both";
  std::string prover = "internal";
  std::string prover_cmd;
  int timeout_ms = 10000;
  int depth = 3;
  int workers = 1;
  std::string emit;
};

void add_fragment_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--lexicon", o.lexicon, "extra lexicon entries to load (file)");
  cmd->add_option("--templates", o.templates, "semantic template overrides to load (file)");
  cmd->add_option("--kb", o.kb, "knowledge-base additions to load (file)");
}

void add_prover_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--prover", o.prover, "proof backend")
      ->check(CLI::IsMember({"internal", "external"}));
  cmd->add_option("--prover-cmd", o.prover_cmd,
                  "external prover command template ({file}, {timeout_s}, {timeout_ms})");
  cmd->add_option("--timeout-ms", o.timeout_ms, "external prover budget in milliseconds");
  cmd->add_option("--depth", o.depth, "internal prover quantifier-instantiation depth");
}

void add_strategy_flag(CLI::App* cmd, CommonOpts& o, bool allow_both) {
  auto values = allow_both ? std::vector<std::string>{"left", "right", "both"}
                           : std::vector<std::string>{"left", "right"};
  cmd->add_option("--strategy", o.strategy, "parse-ranking strategy")
      ->check(CLI::IsMember(values));
}

Fragment build_fragment(const CommonOpts& o) {
  Fragment frag = Fragment::standard();
  if (!o.lexicon.empty()) frag.lexicon.load_file(o.lexicon);
  if (!o.templates.empty()) frag.templates.load_file(o.templates);
  if (!o.kb.empty()) frag.kb.load_file(o.kb);
  return frag;
}

PipelineConfig build_config(const CommonOpts& o, const Fragment& frag) {
  PipelineConfig config;
  config.fragment = &frag;
  config.strategy = o.strategy == "left"    ? StrategyChoice::Left
                    : o.strategy == "right" ? StrategyChoice::Right
                                            : StrategyChoice::Both;
  config.prover.gamma_depth = o.depth;
  if (o.prover == "external") {
    if (o.prover_cmd.empty())
      throw IoError("--prover external requires --prover-cmd");
    config.external = ExternalProver{o.prover_cmd, o.timeout_ms};
  }
  return config;
}

Strategy single_strategy(const CommonOpts& o) {
  return o.strategy == "right" ? Strategy::Right : Strategy::Left;
}

std::string lf_as_tff(const TermPtr& lf, const KB& kb) {
  std::vector<TermPtr> sig = {lf};
  return emit_tff(ProofTask{instantiate_axioms(sig, kb), {lf}, Term::top()});
}

int cmd_parse(const std::string& sentence, const CommonOpts& o) {
  Fragment frag = build_fragment(o);
  std::vector<Strategy> strategies;
  if (o.strategy == "both")
    strategies = {Strategy::Left, Strategy::Right};
  else
    strategies = {single_strategy(o)};
  for (Strategy s : strategies) {
    Analysis a = analyze(sentence, frag, s);
    if (strategies.size() > 1) std::cout << "# strategy " << strategy_name(s) << "\n";
    std::cout << render_tree(a.derivation);
  }
  return 0;
}

int cmd_sem(const std::string& sentence, const CommonOpts& o) {
  Fragment frag = build_fragment(o);
  Analysis a = analyze(sentence, frag, single_strategy(o));
  if (o.emit == "tree") {
    std::cout << render_tree(a.derivation) << "\n" << render_tree(a.transformed) << "\n";
    std::cout << format_term(a.lf) << "\n";
  } else if (o.emit == "tff") {
    std::cout << lf_as_tff(a.lf, frag.kb);
  } else {
    std::cout << format_term(a.lf) << "\n";
  }
  return 0;
}

void emit_problem_artifacts(const Problem& p, const PipelineResult& r, const CommonOpts& o,
                            const Fragment& frag) {
  if (o.emit == "lf") {
    for (std::size_t i = 0; i < r.premise_lfs.size(); ++i)
      std::cout << "premise " << i + 1 << ": " << format_term(r.premise_lfs[i]) << "\n";
    if (r.hypothesis_lf)
      std::cout << "hypothesis: " << format_term(r.hypothesis_lf) << "\n";
  } else if (o.emit == "tff" && r.hypothesis_lf) {
    std::vector<TermPtr> sig = r.premise_lfs;
    sig.push_back(r.hypothesis_lf);
    ProofTask task{instantiate_axioms(sig, frag.kb), r.premise_lfs, r.hypothesis_lf};
    std::cout << emit_tff(task);
  } else if (o.emit == "tree") {
    for (const std::string& s : p.premises)
      std::cout << render_tree(analyze(s, frag, Strategy::Left).derivation);
    std::cout << render_tree(analyze(p.hypothesis, frag, Strategy::Left).derivation);
  }
}

int cmd_prove(const std::string& file, const std::vector<std::string>& premises,
              const std::string& hypothesis, const CommonOpts& o) {
  Fragment frag = build_fragment(o);
  PipelineConfig config = build_config(o, frag);
  std::vector<Problem> problems;
  if (!file.empty()) {
    problems = ingest_jsonl(file);
  } else {
    if (premises.empty() || hypothesis.empty())
      throw IoError("prove needs a problem file or --premise/--hypothesis");
    Problem p;
    p.id = "cli";
    p.premises = premises;
    p.hypothesis = hypothesis;
    problems.push_back(p);
  }
  for (const Problem& p : problems) {
    PipelineResult r = run_pipeline(p, config);
    emit_problem_artifacts(p, r, o, frag);
    if (problems.size() > 1 || !file.empty())
      std::cout << p.id << ": " << answer_name(r.answer) << "\n";
    else
      std::cout << answer_name(r.answer) << "\n";
    if (!r.failure.empty())
      std::cerr << p.id << " stopped at " << stage_name(r.stage) << ": " << r.failure << "\n";
  }
  return 0;
}

int cmd_eval(const std::string& dataset, const std::string& format, const std::string& report_path,
             const CommonOpts& o) {
  Fragment frag = build_fragment(o);
  PipelineConfig config = build_config(o, frag);
  std::string fmt = format;
  if (fmt.empty()) {
    auto dot = dataset.rfind('.');
    std::string ext = dot == std::string::npos ? "" : dataset.substr(dot + 1);
    fmt = (ext == "xml") ? "fracas-xml" : "jsonl";
  }
  std::vector<Problem> problems =
      fmt == "fracas-xml" ? ingest_fracas(dataset) : ingest_jsonl(dataset);
  RunReport report = evaluate(problems, config, o.workers);
  std::cout << report_table(report);
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw IoError("cannot write " + report_path);
    out << report_jsonl(report);
    std::cout << "report written to " << report_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"logic-based natural language inference over a degree-semantics fragment"};
  app.require_subcommand(1);

  CommonOpts parse_opts, sem_opts, prove_opts, eval_opts;
  std::string sentence_to_parse, sentence_to_sem;
  std::string prove_file, prove_hypothesis;
  std::vector<std::string> prove_premises;
  std::string eval_dataset, eval_data_flag, eval_format, eval_report;

  CLI::App* parse_cmd = app.add_subcommand("parse", "print the ranked derivation tree");
  parse_cmd->add_option("sentence", sentence_to_parse, "sentence to parse")->required();
  add_fragment_flags(parse_cmd, parse_opts);
  add_strategy_flag(parse_cmd, parse_opts, true);

  CLI::App* sem_cmd = app.add_subcommand("sem", "print the sentence's logical form");
  sem_cmd->add_option("sentence", sentence_to_sem, "sentence to interpret")->required();
  add_fragment_flags(sem_cmd, sem_opts);
  sem_opts.strategy = "left";
  add_strategy_flag(sem_cmd, sem_opts, false);
  sem_cmd->add_option("--emit", sem_opts.emit, "what to print")
      ->check(CLI::IsMember({"tree", "lf", "tff"}));

  CLI::App* prove_cmd = app.add_subcommand("prove", "answer an entailment problem");
  prove_cmd->add_option("problems", prove_file, "problem file (json lines)");
  prove_cmd->add_option("--premise", prove_premises, "premise sentence (repeatable)");
  prove_cmd->add_option("--hypothesis", prove_hypothesis, "hypothesis sentence");
  add_fragment_flags(prove_cmd, prove_opts);
  add_strategy_flag(prove_cmd, prove_opts, true);
  add_prover_flags(prove_cmd, prove_opts);
  prove_cmd->add_option("--emit", prove_opts.emit, "artifacts to print before the answer")
      ->check(CLI::IsMember({"tree", "lf", "tff"}));

  CLI::App* eval_cmd = app.add_subcommand("eval", "score a dataset and print the report");
  eval_cmd->add_option("dataset", eval_dataset, "dataset path");
  eval_cmd->add_option("--data", eval_data_flag, "dataset path (alias for the positional)");
  eval_cmd->add_option("--format", eval_format, "dataset format")
      ->check(CLI::IsMember({"fracas-xml", "jsonl"}));
  eval_cmd->add_option("--report", eval_report, "write the machine-readable report here");
  eval_cmd->add_option("--workers", eval_opts.workers, "concurrent problem workers");
  add_fragment_flags(eval_cmd, eval_opts);
  add_strategy_flag(eval_cmd, eval_opts, true);
  add_prover_flags(eval_cmd, eval_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse_cmd->parsed()) return cmd_parse(sentence_to_parse, parse_opts);
    if (sem_cmd->parsed()) return cmd_sem(sentence_to_sem, sem_opts);
    if (prove_cmd->parsed()) {
      if (!prove_file.empty() && (!prove_premises.empty() || !prove_hypothesis.empty()))
        throw IoError("prove takes a problem file or --premise/--hypothesis, not both");
      return cmd_prove(prove_file, prove_premises, prove_hypothesis, prove_opts);
    }
    if (eval_cmd->parsed()) {
      if (!eval_dataset.empty() && !eval_data_flag.empty() && eval_dataset != eval_data_flag)
        throw IoError("eval got two different dataset paths");
      std::string dataset = eval_dataset.empty() ? eval_data_flag : eval_dataset;
      if (dataset.empty()) throw IoError("eval needs a dataset path");
      return cmd_eval(dataset, eval_format, eval_report, eval_opts);
    }
  } catch (const Error& e) {
    std::cerr << "degnli: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
