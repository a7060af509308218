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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace currikit {

/// Error categories shared by every module. The C API maps each one onto a
/// stable status code.
enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kMalformedRecord,
  kDuplicateId,
  kNonFiniteLogprob,
  kPositiveLogprob,
  kEmptyTrace,
  kCandidateCount,
  kRangeViolation,
  kCorrectnessUnset,
  kNoMetricSource,
  kMissingMetricSource,
  kMissingMetric,
  kCorpusTooSmall,
  kUnknownId,
  kUnknownStrategy,
  kSampleTooLarge,
  kEmptyAnswer,
  kSinkFailure,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Default number of sampled completions per problem.
inline constexpr int kDefaultCompletions = 20;
/// Default number of stored top-k candidates per position.
inline constexpr int kDefaultTopK = 5;
inline constexpr double kDefaultTemperature = 0.7;

struct Problem {
  std::string id;
  std::string question;
  std::string reference_answer;
  std::optional<std::string> source_tag;

  friend bool operator==(const Problem&, const Problem&) = default;
};

/// One generated position: the emitted token's logprob plus the stored top-k
/// candidate logprobs, all natural-log units.
///
/// Construction validates finiteness and sign, and sorts the candidates
/// non-increasing. `was_reordered()` reports whether sorting changed the input
/// order so ingestion can surface a warning.
class TokenRecord {
 public:
  TokenRecord(double chosen_logprob, std::vector<double> topk_logprobs);

  double chosen_logprob() const noexcept { return chosen_; }
  std::span<const double> topk_logprobs() const noexcept { return topk_; }
  int candidate_count() const noexcept { return static_cast<int>(topk_.size()); }
  bool was_reordered() const noexcept { return reordered_; }

  friend bool operator==(const TokenRecord& a, const TokenRecord& b) {
    return a.chosen_ == b.chosen_ && a.topk_ == b.topk_;
  }

 private:
  double chosen_;
  std::vector<double> topk_;
  bool reordered_ = false;
};

struct GenerationTrace {
  std::string problem_id;
  int completion_index = 0;
  double temperature = kDefaultTemperature;
  std::vector<TokenRecord> tokens;
  std::string final_answer_text;

  friend bool operator==(const GenerationTrace&, const GenerationTrace&) = default;
};

/// The K sampled completions of one problem. `correctness` stays empty until
/// the set has been judged.
struct CompletionSet {
  std::string problem_id;
  std::vector<GenerationTrace> traces;
  std::optional<std::vector<bool>> correctness;

  std::size_t size() const noexcept { return traces.size(); }
  bool judged() const noexcept {
    return correctness.has_value() && correctness->size() == traces.size();
  }

  friend bool operator==(const CompletionSet&, const CompletionSet&) = default;
};

/// Judge-model annotations: reasoning steps, symbolic complexity and
/// comprehension difficulty.
struct AnnotationRecord {
  std::string problem_id;
  std::int64_t rs = 0;
  std::int64_t sc = 1;
  std::int64_t cd = 1;

  friend bool operator==(const AnnotationRecord&, const AnnotationRecord&) = default;
};

struct MetricProvenance {
  std::size_t n_completions_used = 0;
  std::vector<std::string> warnings;

  friend bool operator==(const MetricProvenance&, const MetricProvenance&) = default;
};

enum class Metric { kSlp, kTlp, kLg, kSle, kTle, kAcc, kVacc, kRs, kSc, kCd };

inline constexpr Metric kAllMetrics[] = {
    Metric::kSlp, Metric::kTlp, Metric::kLg,  Metric::kSle, Metric::kTle,
    Metric::kAcc, Metric::kVacc, Metric::kRs, Metric::kSc,  Metric::kCd};

std::string_view metric_name(Metric m) noexcept;
std::optional<Metric> parse_metric(std::string_view name) noexcept;
bool is_model_side(Metric m) noexcept;
bool is_annotation(Metric m) noexcept;

struct MetricVector {
  std::string problem_id;
  std::optional<double> slp, tlp, lg, sle, tle;
  std::optional<double> acc, vacc;
  std::optional<std::int64_t> rs, sc, cd;
  std::map<std::string, MetricProvenance> provenance;

  /// Value of `m` as a real, absent when the metric was not computed.
  std::optional<double> get(Metric m) const noexcept;

  friend bool operator==(const MetricVector&, const MetricVector&) = default;
};

/// Throws kRangeViolation when a MetricVector breaks its invariants
/// (non-finite reals, acc without vacc, vacc != acc(1-acc)).
void check_invariants(const MetricVector& v);

enum class Strategy { kFcl, kRcl, kSgc, kGfc, kGrc, kShuf };
enum class Tier { kLow, kMedium, kHigh };
enum class SplitRule { kEqualCount, kQuantile };

std::string_view strategy_name(Strategy s) noexcept;
std::optional<Strategy> parse_strategy(std::string_view name) noexcept;
std::string_view tier_name(Tier t) noexcept;
std::optional<Tier> parse_tier(std::string_view name) noexcept;
std::string_view split_rule_name(SplitRule r) noexcept;
std::optional<SplitRule> parse_split_rule(std::string_view name) noexcept;

struct TierBoundary {
  Tier tier;
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive

  friend bool operator==(const TierBoundary&, const TierBoundary&) = default;
};

struct CurriculumPlan {
  Strategy strategy = Strategy::kShuf;
  std::string metric_name;
  std::uint64_t seed = 0;
  std::optional<Tier> tier_selector;
  std::optional<SplitRule> tier_rule;
  std::vector<std::string> ordering;
  std::vector<TierBoundary> tier_boundaries;
};

// --- corpus validation -------------------------------------------------------

enum class Severity { kViolation, kWarning };

struct ValidationEntry {
  Severity severity = Severity::kViolation;
  std::string problem_id;
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;

  std::size_t violation_count() const noexcept;
  std::size_t warning_count() const noexcept;
  bool ok() const noexcept { return violation_count() == 0; }
};

struct ValidationOptions {
  int k_completions = kDefaultCompletions;
  int k_topk = kDefaultTopK;
  /// Downgrades K mismatches to warnings.
  bool permissive = false;
};

/// Cross-checks problems, completion sets and annotations. Never throws for
/// data problems; every issue becomes a report entry. Pass nullopt for an
/// input that was not supplied so its absence is not reported per problem.
ValidationReport validate_corpus(
    std::span<const Problem> problems,
    std::optional<std::span<const CompletionSet>> sets,
    std::optional<std::span<const AnnotationRecord>> annotations,
    const ValidationOptions& options = {});

}  // namespace currikit
