// Copyright 2026 The currikit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "currikit/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace currikit {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kNonFiniteLogprob: return "NonFiniteLogprob";
    case ErrorCode::kPositiveLogprob: return "PositiveLogprob";
    case ErrorCode::kEmptyTrace: return "EmptyTrace";
    case ErrorCode::kCandidateCount: return "CandidateCount";
    case ErrorCode::kRangeViolation: return "RangeViolation";
    case ErrorCode::kCorrectnessUnset: return "CorrectnessUnset";
    case ErrorCode::kNoMetricSource: return "NoMetricSource";
    case ErrorCode::kMissingMetricSource: return "MissingMetricSource";
    case ErrorCode::kMissingMetric: return "MissingMetric";
    case ErrorCode::kCorpusTooSmall: return "CorpusTooSmall";
    case ErrorCode::kUnknownId: return "UnknownId";
    case ErrorCode::kUnknownStrategy: return "UnknownStrategy";
    case ErrorCode::kSampleTooLarge: return "SampleTooLarge";
    case ErrorCode::kEmptyAnswer: return "EmptyAnswer";
    case ErrorCode::kSinkFailure: return "SinkFailure";
  }
  return "Unknown";
}

TokenRecord::TokenRecord(double chosen_logprob, std::vector<double> topk_logprobs)
    : chosen_(chosen_logprob), topk_(std::move(topk_logprobs)) {
  if (topk_.empty()) {
    throw Error(ErrorCode::kCandidateCount, "token has no top-k candidates");
  }
  auto check = [](double v, std::string_view what) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFiniteLogprob, std::string(what) + " is not finite");
    }
    if (v > 0.0) {
      throw Error(ErrorCode::kPositiveLogprob, std::string(what) + " is positive");
    }
  };
  check(chosen_, "chosen_logprob");
  for (double v : topk_) check(v, "topk logprob");
  if (!std::is_sorted(topk_.begin(), topk_.end(), std::greater<>())) {
    std::stable_sort(topk_.begin(), topk_.end(), std::greater<>());
    reordered_ = true;
  }
}

namespace {

constexpr std::string_view kMetricNames[] = {"slp", "tlp", "lg", "sle", "tle",
                                             "acc", "vacc", "rs", "sc", "cd"};

}  // namespace

std::string_view metric_name(Metric m) noexcept {
  return kMetricNames[static_cast<std::size_t>(m)];
}

std::optional<Metric> parse_metric(std::string_view name) noexcept {
  for (Metric m : kAllMetrics) {
    if (metric_name(m) == name) return m;
  }
  return std::nullopt;
}

bool is_model_side(Metric m) noexcept {
  return m == Metric::kSlp || m == Metric::kTlp || m == Metric::kLg ||
         m == Metric::kSle || m == Metric::kTle;
}

bool is_annotation(Metric m) noexcept {
  return m == Metric::kRs || m == Metric::kSc || m == Metric::kCd;
}

std::optional<double> MetricVector::get(Metric m) const noexcept {
  auto as_real = [](const std::optional<std::int64_t>& v) -> std::optional<double> {
    if (!v) return std::nullopt;
    return static_cast<double>(*v);
  };
  switch (m) {
    case Metric::kSlp: return slp;
    case Metric::kTlp: return tlp;
    case Metric::kLg: return lg;
    case Metric::kSle: return sle;
    case Metric::kTle: return tle;
    case Metric::kAcc: return acc;
    case Metric::kVacc: return vacc;
    case Metric::kRs: return as_real(rs);
    case Metric::kSc: return as_real(sc);
    case Metric::kCd: return as_real(cd);
  }
  return std::nullopt;
}

void check_invariants(const MetricVector& v) {
  for (Metric m : kAllMetrics) {
    auto value = v.get(m);
    if (value && !std::isfinite(*value)) {
      throw Error(ErrorCode::kRangeViolation,
                  v.problem_id + ": " + std::string(metric_name(m)) + " is not finite");
    }
  }
  if (v.acc.has_value() != v.vacc.has_value()) {
    throw Error(ErrorCode::kRangeViolation,
                v.problem_id + ": acc and vacc must be present together");
  }
  if (v.acc) {
    if (*v.acc < 0.0 || *v.acc > 1.0) {
      throw Error(ErrorCode::kRangeViolation, v.problem_id + ": acc outside [0,1]");
    }
    if (std::abs(*v.vacc - *v.acc * (1.0 - *v.acc)) > 1e-12) {
      throw Error(ErrorCode::kRangeViolation, v.problem_id + ": vacc != acc*(1-acc)");
    }
  }
}

std::string_view strategy_name(Strategy s) noexcept {
  switch (s) {
    case Strategy::kFcl: return "fcl";
    case Strategy::kRcl: return "rcl";
    case Strategy::kSgc: return "sgc";
    case Strategy::kGfc: return "gfc";
    case Strategy::kGrc: return "grc";
    case Strategy::kShuf: return "shuf";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) noexcept {
  for (Strategy s : {Strategy::kFcl, Strategy::kRcl, Strategy::kSgc, Strategy::kGfc,
                     Strategy::kGrc, Strategy::kShuf}) {
    if (strategy_name(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view tier_name(Tier t) noexcept {
  switch (t) {
    case Tier::kLow: return "low";
    case Tier::kMedium: return "medium";
    case Tier::kHigh: return "high";
  }
  return "unknown";
}

std::optional<Tier> parse_tier(std::string_view name) noexcept {
  for (Tier t : {Tier::kLow, Tier::kMedium, Tier::kHigh}) {
    if (tier_name(t) == name) return t;
  }
  return std::nullopt;
}

std::string_view split_rule_name(SplitRule r) noexcept {
  return r == SplitRule::kEqualCount ? "equal" : "quantile";
}

std::optional<SplitRule> parse_split_rule(std::string_view name) noexcept {
  if (name == "equal" || name == "equal_count") return SplitRule::kEqualCount;
  if (name == "quantile") return SplitRule::kQuantile;
  return std::nullopt;
}

std::size_t ValidationReport::violation_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(),
      [](const ValidationEntry& e) { return e.severity == Severity::kViolation; }));
}

std::size_t ValidationReport::warning_count() const noexcept {
  return entries.size() - violation_count();
}

namespace {

void check_tokens(const GenerationTrace& trace, int k_topk, ValidationReport& report) {
  auto add = [&](std::string code, std::string message) {
    report.entries.push_back({Severity::kViolation, trace.problem_id, std::move(code),
                              "completion " + std::to_string(trace.completion_index) +
                                  ": " + std::move(message)});
  };
  if (trace.tokens.empty()) {
    add("empty_trace", "trace has no tokens");
    return;
  }
  for (std::size_t t = 0; t < trace.tokens.size(); ++t) {
    const auto& tok = trace.tokens[t];
    if (tok.candidate_count() > k_topk) {
      add("candidate_count", "position " + std::to_string(t) + " has " +
                                 std::to_string(tok.candidate_count()) +
                                 " candidates, k=" + std::to_string(k_topk));
    }
  }
}

}  // namespace

ValidationReport validate_corpus(
    std::span<const Problem> problems,
    std::optional<std::span<const CompletionSet>> sets,
    std::optional<std::span<const AnnotationRecord>> annotations,
    const ValidationOptions& options) {
  ValidationReport report;
  auto violation = [&](const std::string& id, std::string code, std::string message) {
    report.entries.push_back({Severity::kViolation, id, std::move(code), std::move(message)});
  };
  auto warning = [&](const std::string& id, std::string code, std::string message) {
    report.entries.push_back({Severity::kWarning, id, std::move(code), std::move(message)});
  };

  std::unordered_set<std::string> ids;
  for (const auto& p : problems) {
    if (p.id.empty()) violation(p.id, "empty_id", "problem id is empty");
    if (p.question.empty()) violation(p.id, "empty_question", "question is empty");
    if (!ids.insert(p.id).second) violation(p.id, "duplicate_id", "duplicate problem id");
  }

  if (sets) {
    std::unordered_map<std::string, const CompletionSet*> by_id;
    for (const auto& s : *sets) {
      if (!by_id.emplace(s.problem_id, &s).second) {
        violation(s.problem_id, "duplicate_set", "more than one completion set");
      }
      if (!ids.contains(s.problem_id)) {
        violation(s.problem_id, "orphan_set", "completion set for unknown problem");
      }
      if (s.correctness && s.correctness->size() != s.traces.size()) {
        violation(s.problem_id, "correctness_length",
                  "correctness flags do not match trace count");
      }
      std::set<int> seen;
      for (const auto& trace : s.traces) {
        if (trace.completion_index < 0 || trace.completion_index >= options.k_completions) {
          violation(s.problem_id, "completion_index",
                    "completion index " + std::to_string(trace.completion_index) +
                        " outside [0," + std::to_string(options.k_completions) + ")");
        }
        if (!seen.insert(trace.completion_index).second) {
          violation(s.problem_id, "duplicate_completion",
                    "completion index " + std::to_string(trace.completion_index) +
                        " repeated");
        }
        check_tokens(trace, options.k_topk, report);
      }
      if (static_cast<int>(s.traces.size()) != options.k_completions) {
        std::string msg = "K mismatch: " + std::to_string(s.traces.size()) + "/" +
                          std::to_string(options.k_completions);
        if (options.permissive) {
          warning(s.problem_id, "k_mismatch", std::move(msg));
        } else {
          violation(s.problem_id, "k_mismatch", std::move(msg));
        }
      }
    }
    for (const auto& p : problems) {
      if (!by_id.contains(p.id)) {
        violation(p.id, "missing_completion_set", "no completion set");
      }
    }
  }

  if (annotations) {
    std::unordered_set<std::string> annotated;
    for (const auto& a : *annotations) {
      if (!annotated.insert(a.problem_id).second) {
        violation(a.problem_id, "duplicate_annotation", "more than one annotation");
      }
      if (!ids.contains(a.problem_id)) {
        violation(a.problem_id, "orphan_annotation", "annotation for unknown problem");
      }
      if (a.rs < 0) violation(a.problem_id, "rs_range", "rs out of range");
      if (a.sc < 1 || a.sc > 5) violation(a.problem_id, "sc_range", "sc out of range");
      if (a.cd < 1 || a.cd > 5) violation(a.problem_id, "cd_range", "cd out of range");
    }
    for (const auto& p : problems) {
      if (!annotated.contains(p.id)) {
        violation(p.id, "missing_annotation", "no annotation");
      }
    }
  }
  return report;
}

}  // namespace currikit
