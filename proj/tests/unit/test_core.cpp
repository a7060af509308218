#include "doctest.h"

#include <cmath>

#include "currikit/core.hpp"
#include "currikit/oracle.hpp"

using namespace currikit;

namespace {

CompletionSet make_set(const std::string& id, int k) {
  CompletionSet s{id, {}, std::nullopt};
  for (int i = 0; i < k; ++i) {
    s.traces.push_back(GenerationTrace{id, i, 0.7, {TokenRecord(-0.1, {-0.1, -2.0})}, "1"});
  }
  return s;
}

}  // namespace

TEST_CASE("TokenRecord sorts candidates and flags the repair") {
  TokenRecord sorted(-0.1, {-0.1, -0.2});
  CHECK_FALSE(sorted.was_reordered());
  TokenRecord t(-0.1, {-0.2, -0.1});
  CHECK(t.was_reordered());
  CHECK(t.topk_logprobs()[0] == -0.1);
  CHECK(t.topk_logprobs()[1] == -0.2);
  CHECK(t.candidate_count() == 2);
}

TEST_CASE("TokenRecord rejects invalid logprobs") {
  CHECK_THROWS_AS(TokenRecord(0.3, {-0.1}), Error);
  CHECK_THROWS_AS(TokenRecord(-0.1, {std::nan("")}), Error);
  CHECK_THROWS_AS(TokenRecord(-0.1, {}), Error);
  try {
    TokenRecord(-0.1, {0.5});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPositiveLogprob);
  }
}

TEST_CASE("TokenRecord invariant holds after construction from random input") {
  currikit::oracle::SyntheticTraceSpec spec;
  spec.token_count = 32;
  spec.seed = 99;
  auto trace = currikit::oracle::generate_trace(spec);
  for (const auto& tok : trace.tokens) {
    std::vector<double> shuffled(tok.topk_logprobs().rbegin(), tok.topk_logprobs().rend());
    TokenRecord rebuilt(tok.chosen_logprob(), shuffled);
    CHECK(rebuilt == tok);
  }
}

TEST_CASE("metric and strategy names round-trip") {
  for (Metric m : kAllMetrics) CHECK(parse_metric(metric_name(m)) == m);
  CHECK_FALSE(parse_metric("ppl"));
  for (auto s : {Strategy::kFcl, Strategy::kRcl, Strategy::kSgc, Strategy::kGfc, Strategy::kGrc,
                 Strategy::kShuf}) {
    CHECK(parse_strategy(strategy_name(s)) == s);
  }
  CHECK(parse_tier("medium") == Tier::kMedium);
  CHECK(parse_split_rule("quantile") == SplitRule::kQuantile);
}

TEST_CASE("MetricVector invariants") {
  MetricVector v{"p1"};
  v.acc = 0.75;
  v.vacc = 0.75 * 0.25;
  CHECK_NOTHROW(check_invariants(v));
  v.vacc = 0.2;
  CHECK_THROWS_AS(check_invariants(v), Error);
  v.vacc.reset();
  CHECK_THROWS_AS(check_invariants(v), Error);
  MetricVector w{"p2"};
  w.slp = HUGE_VAL;
  CHECK_THROWS_AS(check_invariants(w), Error);
}

TEST_CASE("validate_corpus: clean corpus has no violations") {
  std::vector<Problem> problems = {{"a", "q", "1", {}}, {"b", "q", "2", {}}, {"c", "q", "3", {}}};
  std::vector<CompletionSet> sets = {make_set("a", 20), make_set("b", 20), make_set("c", 20)};
  std::vector<AnnotationRecord> notes = {{"a", 1, 1, 1}, {"b", 2, 3, 4}, {"c", 0, 5, 5}};
  auto report = validate_corpus(problems, std::span<const CompletionSet>(sets),
                                std::span<const AnnotationRecord>(notes));
  CHECK(report.ok());
  CHECK(report.entries.empty());
}

TEST_CASE("validate_corpus: K mismatch") {
  std::vector<Problem> problems = {{"a", "q", "1", {}}};
  std::vector<CompletionSet> sets = {make_set("a", 19)};
  auto report = validate_corpus(problems, std::span<const CompletionSet>(sets), std::nullopt);
  REQUIRE(report.violation_count() == 1);
  CHECK(report.entries[0].problem_id == "a");
  CHECK(report.entries[0].message == "K mismatch: 19/20");

  ValidationOptions lax;
  lax.permissive = true;
  auto relaxed = validate_corpus(problems, std::span<const CompletionSet>(sets), std::nullopt, lax);
  CHECK(relaxed.ok());
  CHECK(relaxed.warning_count() == 1);
}

TEST_CASE("validate_corpus: annotation range and coverage") {
  std::vector<Problem> problems = {{"a", "q", "1", {}}, {"b", "q", "1", {}}};
  std::vector<AnnotationRecord> notes = {{"a", 1, 6, 1}};
  auto report = validate_corpus(problems, std::nullopt, std::span<const AnnotationRecord>(notes));
  REQUIRE(report.violation_count() == 2);
  CHECK(report.entries[0].message == "sc out of range");
  CHECK(report.entries[1].code == "missing_annotation");
  CHECK(report.entries[1].problem_id == "b");
}

TEST_CASE("validate_corpus: missing and orphan sets, duplicate completions") {
  std::vector<Problem> problems = {{"a", "q", "1", {}}, {"b", "q", "1", {}}};
  auto dup = make_set("a", 2);
  dup.traces[1].completion_index = 0;
  std::vector<CompletionSet> sets = {dup, make_set("z", 2)};
  ValidationOptions opts;
  opts.k_completions = 2;
  auto report = validate_corpus(problems, std::span<const CompletionSet>(sets), std::nullopt, opts);
  std::vector<std::string> codes;
  for (const auto& e : report.entries) codes.push_back(e.code);
  CHECK(std::count(codes.begin(), codes.end(), "duplicate_completion") == 1);
  CHECK(std::count(codes.begin(), codes.end(), "orphan_set") == 1);
  CHECK(std::count(codes.begin(), codes.end(), "missing_completion_set") == 1);
}
