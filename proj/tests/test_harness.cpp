#include <catch2/catch_amalgamated.hpp>

#include <regex>
#include <string>
#include <vector>

#include "degnli/pipeline.hpp"
#include "degnli/problems.hpp"
#include "support/gen.hpp"

using namespace degnli;

namespace {

std::string curated_path() { return std::string(DEGNLI_SOURCE_DIR) + "/data/curated.jsonl"; }

// Timing fields vary run to run; everything else must be byte-identical.
std::string strip_timing(const std::string& jsonl) {
  static const std::regex ms_field(",\"ms\":[0-9.eE+-]+");
  return std::regex_replace(jsonl, ms_field, "");
}

std::vector<Problem> com_distribution() {
  // The comparatives section's gold distribution: 19 yes, 9 no, 3 unknown.
  std::vector<Problem> out;
  auto add = [&](int n, Gold g, const std::string& prefix) {
    for (int i = 0; i < n; ++i) {
      Problem p;
      p.id = prefix + std::to_string(i);
      p.premises = {"John is tall."};
      p.hypothesis = "John is tall.";
      p.gold = g;
      p.tags = {"Com"};
      out.push_back(p);
    }
  };
  add(19, Gold::Yes, "y");
  add(9, Gold::No, "n");
  add(3, Gold::Unknown, "u");
  return out;
}

Answer always_unknown(const std::vector<TermPtr>&, const TermPtr&, const KB&) {
  return Answer::Unknown;
}

}  // namespace

TEST_CASE("ingest: json lines become validated problems") {
  SECTION("a fully specified line") {
    std::string line =
        "{\"id\":\"cad-001\",\"premises\":[\"John is 5 cm taller than Bob.\","
        "\"Bob is 170 cm tall.\"],\"hypothesis\":\"John is 175 cm tall.\",\"gold\":\"yes\"}";
    std::vector<Problem> ps = ingest_jsonl_text(line + "\n");
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].id == "cad-001");
    REQUIRE(ps[0].premises.size() == 2);
    CHECK(ps[0].premises[0] == "John is 5 cm taller than Bob.");
    CHECK(ps[0].premises[1] == "Bob is 170 cm tall.");
    CHECK(ps[0].hypothesis == "John is 175 cm tall.");
    CHECK(ps[0].gold == Gold::Yes);
    CHECK(ps[0].tags.empty());
  }
  SECTION("an empty file is an empty list") {
    CHECK(ingest_jsonl_text("").empty());
    CHECK(ingest_jsonl_text("\n   \n").empty());
  }
  SECTION("a missing hypothesis reports the offending line") {
    std::string text =
        "{\"id\":\"a\",\"premises\":[\"x\"],\"hypothesis\":\"h\",\"gold\":\"yes\"}\n"
        "{\"id\":\"b\",\"premises\":[\"x\"],\"gold\":\"no\"}\n";
    try {
      ingest_jsonl_text(text);
      FAIL("expected MalformedLine");
    } catch (const MalformedLine& e) {
      CHECK(e.line == 2);
      CHECK(std::string(e.what()).find("hypothesis") != std::string::npos);
    }
  }
  SECTION("broken json reports the offending line") {
    try {
      ingest_jsonl_text("{\"id\":\"a\",\"premises\":[\"x\"],\"hypothesis\":\"h\"}\n{oops\n");
      FAIL("expected MalformedLine");
    } catch (const MalformedLine& e) {
      CHECK(e.line == 2);
    }
  }
  SECTION("unknown fields are ignored, absent gold means unlabeled") {
    std::vector<Problem> ps = ingest_jsonl_text(
        "{\"id\":\"a\",\"premises\":[\"x\"],\"hypothesis\":\"h\",\"note\":\"extra\","
        "\"score\":3.5}\n");
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].gold == Gold::Unlabeled);
  }
  SECTION("tags are read when present") {
    std::vector<Problem> ps = ingest_jsonl_text(
        "{\"id\":\"a\",\"premises\":[\"x\"],\"hypothesis\":\"h\",\"gold\":\"unknown\","
        "\"tags\":[\"GQ\",\"hard\"]}\n");
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].tags == std::vector<std::string>{"GQ", "hard"});
  }
  SECTION("empty premises array is malformed") {
    CHECK_THROWS_AS(
        ingest_jsonl_text("{\"id\":\"a\",\"premises\":[],\"hypothesis\":\"h\"}\n"),
        MalformedLine);
  }
}

TEST_CASE("ingest: the xml suite layout") {
  const std::string xml =
      "<?xml version=\"1.0\"?>\n"
      "<!-- public entailment suite excerpt -->\n"
      "<fracas-problems>\n"
      "  <section name=\"Com\">\n"
      "    <problem id=\"235\" fracas_answer=\"yes\">\n"
      "      <p idx=\"1\">ITEL won more orders than APCOM.</p>\n"
      "      <p idx=\"2\">APCOM won ten orders.</p>\n"
      "      <h>ITEL won at least eleven orders.</h>\n"
      "    </problem>\n"
      "    <problem id=\"250\" fracas_answer=\"undef\">\n"
      "      <p>ITEL won some orders.</p>\n"
      "      <h>APCOM lost &amp; ITEL won.</h>\n"
      "    </problem>\n"
      "  </section>\n"
      "  <section name=\"Adj\">\n"
      "    <problem id=\"209\" answer=\"no\">\n"
      "      <p>Mickey is a small animal.</p>\n"
      "      <h>Mickey is a large animal.</h>\n"
      "    </problem>\n"
      "  </section>\n"
      "</fracas-problems>\n";

  SECTION("problems, answers, and section tags") {
    std::vector<Problem> ps = ingest_fracas_text(xml);
    REQUIRE(ps.size() == 3);
    CHECK(ps[0].id == "235");
    REQUIRE(ps[0].premises.size() == 2);
    CHECK(ps[0].premises[0] == "ITEL won more orders than APCOM.");
    CHECK(ps[0].hypothesis == "ITEL won at least eleven orders.");
    CHECK(ps[0].gold == Gold::Yes);
    CHECK(ps[0].tags == std::vector<std::string>{"Com"});
    // undef maps to unlabeled; entities are decoded.
    CHECK(ps[1].gold == Gold::Unlabeled);
    CHECK(ps[1].hypothesis == "APCOM lost & ITEL won.");
    CHECK(ps[2].gold == Gold::No);
    CHECK(ps[2].tags == std::vector<std::string>{"Adj"});
  }
  SECTION("whitespace in element text is collapsed") {
    std::vector<Problem> ps = ingest_fracas_text(
        "<problems><problem id=\"1\" answer=\"yes\">\n"
        "  <p>\n    John is\n    tall.\n  </p>\n  <h>John\tis tall.</h>\n"
        "</problem></problems>");
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].premises[0] == "John is tall.");
    CHECK(ps[0].hypothesis == "John is tall.");
  }
  SECTION("structurally broken xml raises") {
    CHECK_THROWS_AS(ingest_fracas_text("<problems><problem></problems>"), MalformedXML);
    CHECK_THROWS_AS(ingest_fracas_text("<problems>"), MalformedXML);
    CHECK_THROWS_AS(
        ingest_fracas_text("<problems><problem id=\"1\" answer=\"maybe\"><p>x</p><h>y</h>"
                           "</problem></problems>"),
        MalformedXML);
    CHECK_THROWS_AS(
        ingest_fracas_text("<problems><problem id=\"1\" answer=\"yes\"><h>y</h>"
                           "</problem></problems>"),
        MalformedXML);
  }
}

TEST_CASE("ingest: the bundled regression dataset loads cleanly") {
  std::vector<Problem> ps = ingest_jsonl(curated_path());
  REQUIRE(ps.size() == 12);
  for (const Problem& p : ps) {
    CHECK(!p.id.empty());
    CHECK(!p.premises.empty());
    CHECK(!p.hypothesis.empty());
    CHECK(p.gold != Gold::Unlabeled);
    CHECK(!p.tags.empty());
  }
  CHECK(ps[0].id == "ex-1");
  CHECK(ps[4].id == "fracas-235");
  CHECK(ps[11].id == "cad-103");
}

TEST_CASE("aggregation: the answer combination table") {
  const Answer Y = Answer::Yes, N = Answer::No, U = Answer::Unknown;
  CHECK(combine_answers(Y, U) == Y);
  CHECK(combine_answers(U, Y) == Y);
  CHECK(combine_answers(N, U) == N);
  CHECK(combine_answers(U, N) == N);
  CHECK(combine_answers(Y, N) == U);
  CHECK(combine_answers(N, Y) == U);
  CHECK(combine_answers(Y, Y) == Y);
  CHECK(combine_answers(N, N) == N);
  CHECK(combine_answers(U, U) == U);
}

TEST_CASE("property: answer combination is commutative, idempotent, unknown-identity") {
  const Answer all[3] = {Answer::Yes, Answer::No, Answer::Unknown};
  testgen::Rng rng(777001);
  for (int i = 0; i < 220; ++i) {
    Answer a = all[rng.pick(3)];
    Answer b = all[rng.pick(3)];
    CHECK(combine_answers(a, b) == combine_answers(b, a));
    CHECK(combine_answers(a, a) == a);
    CHECK(combine_answers(a, Answer::Unknown) == a);
    CHECK(combine_answers(Answer::Unknown, a) == a);
  }
}

TEST_CASE("pipeline: a solvable problem reaches a verdict with artifacts") {
  Problem p;
  p.id = "ex-1";
  p.premises = {"John is taller than 6 feet.", "Bob is shorter than 5 feet."};
  p.hypothesis = "Bob is not taller than John.";
  PipelineConfig config;
  PipelineResult r = run_pipeline(p, config);
  CHECK(r.answer == Answer::Yes);
  CHECK(r.stage == Stage::Done);
  CHECK(r.failure.empty());
  CHECK(r.premise_lfs.size() == 2);
  CHECK(r.hypothesis_lf != nullptr);
}

TEST_CASE("pipeline: failures degrade to unknown with stage provenance") {
  PipelineConfig config;
  SECTION("a sentence outside the lexicon fails at the parse stage") {
    Problem p;
    p.id = "bad-lex";
    p.premises = {"Blorp the snozzle quuxed vehemently."};
    p.hypothesis = "John is tall.";
    PipelineResult r = run_pipeline(p, config);
    CHECK(r.answer == Answer::Unknown);
    CHECK(r.stage == Stage::Parse);
    CHECK(!r.failure.empty());
  }
  SECTION("known words with no grammatical spine fail at the parse stage") {
    Problem p;
    p.id = "bad-parse";
    p.premises = {"Tall than is John."};
    p.hypothesis = "John is tall.";
    PipelineResult r = run_pipeline(p, config);
    CHECK(r.answer == Answer::Unknown);
    CHECK(r.stage == Stage::Parse);
  }
  SECTION("a failing prover is recorded at the prove stage") {
    Problem p;
    p.id = "bad-prove";
    p.premises = {"John is tall."};
    p.hypothesis = "John is tall.";
    PipelineConfig throwing = config;
    throwing.decide_override = [](const std::vector<TermPtr>&, const TermPtr&,
                                  const KB&) -> Answer {
      throw ProverError("induced failure");
    };
    PipelineResult r = run_pipeline(p, throwing);
    CHECK(r.answer == Answer::Unknown);
    CHECK(r.stage == Stage::Prove);
    CHECK(r.failure.find("induced failure") != std::string::npos);
  }
  SECTION("empty-ish garbage never escapes as an exception") {
    for (const char* s : {"", ".", "???", "and and and.", "6 feet John."}) {
      Problem p;
      p.id = "garbage";
      p.premises = {s};
      p.hypothesis = "John is tall.";
      PipelineResult r;
      REQUIRE_NOTHROW(r = run_pipeline(p, config));
      CHECK(r.answer == Answer::Unknown);
      CHECK(r.stage != Stage::Done);
    }
  }
}

TEST_CASE("evaluation: the regression dataset scores perfectly") {
  std::vector<Problem> ps = ingest_jsonl(curated_path());
  PipelineConfig config;
  RunReport report = evaluate(ps, config, 4);
  CHECK(report.total == 12);
  CHECK(report.labeled == 12);
  CHECK(report.correct == 12);
  CHECK(report.accuracy == 1.0);
  for (const ProblemReport& row : report.rows) {
    CAPTURE(row.id, answer_name(row.answer), gold_name(row.gold));
    CHECK(row.correct);
    CHECK(row.stage == Stage::Done);
  }
  // Per-tag accounting matches ingestion exactly.
  CHECK(report.per_tag.at("example").total == 4);
  CHECK(report.per_tag.at("CAD").total == 4);
  CHECK(report.per_tag.at("MED").total == 2);
  CHECK(report.per_tag.at("Com").total == 1);
  CHECK(report.per_tag.at("Adj").total == 1);
  for (const auto& [tag, ts] : report.per_tag) {
    CHECK(ts.labeled == ts.total);
    CHECK(ts.accuracy == 1.0);
  }
  // The confusion matrix is diagonal: 6 yes, 2 no, 4 unknown.
  CHECK(report.confusion[0][0] == 6);
  CHECK(report.confusion[1][1] == 2);
  CHECK(report.confusion[2][2] == 4);
  for (int g = 0; g < 3; ++g)
    for (int a = 0; a < 3; ++a)
      if (g != a) CHECK(report.confusion[g][a] == 0);
}

TEST_CASE("evaluation: deterministic across runs and worker counts") {
  std::vector<Problem> ps = ingest_jsonl(curated_path());
  PipelineConfig config;
  RunReport r1 = evaluate(ps, config, 1);
  RunReport r2 = evaluate(ps, config, 1);
  RunReport r8 = evaluate(ps, config, 8);
  CHECK(strip_timing(report_jsonl(r1)) == strip_timing(report_jsonl(r2)));
  CHECK(strip_timing(report_jsonl(r1)) == strip_timing(report_jsonl(r8)));
  CHECK(report_jsonl(r1, false) == report_jsonl(r2, false));
  for (std::size_t i = 0; i < r1.rows.size(); ++i)
    CHECK(r1.rows[i].answer == r8.rows[i].answer);
}

TEST_CASE("evaluation: baseline arithmetic on the comparatives distribution") {
  std::vector<Problem> ps = com_distribution();
  CHECK(majority_baseline(ps) == Catch::Approx(19.0 / 31.0).epsilon(1e-12));
  CHECK(std::abs(majority_baseline(ps) - 0.61) < 0.005);

  PipelineConfig config;
  config.decide_override = always_unknown;
  RunReport report = evaluate(ps, config, 4);
  CHECK(report.labeled == 31);
  CHECK(report.correct == 3);
  CHECK(report.accuracy == Catch::Approx(3.0 / 31.0).epsilon(1e-12));
  CHECK(report.majority_baseline == Catch::Approx(19.0 / 31.0).epsilon(1e-12));
}

TEST_CASE("evaluation: unlabeled problems run but stay out of the denominators") {
  std::vector<Problem> ps = com_distribution();
  Problem extra;
  extra.id = "x-unlabeled";
  extra.premises = {"John is tall."};
  extra.hypothesis = "John is tall.";
  extra.gold = Gold::Unlabeled;
  extra.tags = {"Com"};
  ps.push_back(extra);
  PipelineConfig config;
  config.decide_override = always_unknown;
  RunReport report = evaluate(ps, config, 2);
  CHECK(report.total == 32);
  CHECK(report.labeled == 31);
  CHECK(report.accuracy == Catch::Approx(3.0 / 31.0).epsilon(1e-12));
  CHECK(report.per_tag.at("Com").total == 32);
  CHECK(report.per_tag.at("Com").labeled == 31);
  // The unlabeled row still ran and reports its outcome.
  CHECK(report.rows.back().id == "x-unlabeled");
  CHECK(report.rows.back().answer == Answer::Unknown);
  CHECK_FALSE(report.rows.back().labeled);
}

TEST_CASE("reports: the json-lines document carries rows plus a summary") {
  std::vector<Problem> ps = ingest_jsonl(curated_path());
  PipelineConfig config;
  RunReport report = evaluate(ps, config, 4);
  std::string jsonl = report_jsonl(report);
  std::istringstream in(jsonl);
  std::string line;
  std::vector<nlohmann::json> lines;
  while (std::getline(in, line)) lines.push_back(nlohmann::json::parse(line));
  REQUIRE(lines.size() == 13);  // 12 rows + summary
  CHECK(lines[0]["id"] == "ex-1");
  CHECK(lines[0]["answer"] == "yes");
  CHECK(lines[0]["correct"] == true);
  CHECK(lines[0]["stage"] == "done");
  CHECK(lines[0]["ms"].is_number());
  const nlohmann::json& s = lines.back();
  CHECK(s["summary"] == true);
  CHECK(s["accuracy"] == 1.0);
  CHECK(s["per_tag"]["CAD"]["total"] == 4);
  CHECK(s["confusion"]["yes"]["yes"] == 6);

  std::string table = report_table(report);
  CHECK(table.find("ex-1") != std::string::npos);
  CHECK(table.find("accuracy: 1.000 (12/12 labeled, 12 total)") != std::string::npos);
  CHECK(table.find("majority baseline:") != std::string::npos);
}

TEST_CASE("pipeline: two-strategy aggregation uses the combination table") {
  Problem p;
  p.id = "agg";
  p.premises = {"John is taller than 6 feet."};
  p.hypothesis = "John is taller than 5 feet.";
  // Force disagreement through the override: the answer depends on which
  // strategy's run is asking only via the call sequence, so instead check
  // the three config modes end to end on a real problem.
  PipelineConfig both;
  both.strategy = StrategyChoice::Both;
  PipelineConfig left;
  left.strategy = StrategyChoice::Left;
  PipelineConfig right;
  right.strategy = StrategyChoice::Right;
  Answer ab = run_pipeline(p, both).answer;
  Answer al = run_pipeline(p, left).answer;
  Answer ar = run_pipeline(p, right).answer;
  CHECK(ab == combine_answers(al, ar));
  CHECK(ab == Answer::Yes);
}
