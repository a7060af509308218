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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "currikit/core.hpp"

namespace currikit {

/// Neumaier-compensated running sum. Results depend only on the order values
/// are added, never on how a caller batches them.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Softmax renormalisation of one position's stored top-k candidates.
struct TruncatedDistribution {
  std::vector<double> probs;  // non-increasing, sums to 1
};

TruncatedDistribution truncate(const TokenRecord& record);

/// Shannon entropy of the truncated distribution, in nats and in bits.
/// Terms whose probability underflowed to zero contribute nothing.
double entropy_nats(const TruncatedDistribution& q);
double entropy_bits(const TruncatedDistribution& q);

// Per-trace metrics. Every trace is assumed non-empty (enforced at ingestion).
double slp(const GenerationTrace& trace);
double tlp(const GenerationTrace& trace);
/// Mean top-1/top-2 logprob margin over positions with >= 2 candidates;
/// absent when no such position exists.
std::optional<double> lg(const GenerationTrace& trace);
double sle(const GenerationTrace& trace);
/// Mean per-position base-2 entropy.
double tle(const GenerationTrace& trace);

struct TraceMetrics {
  double slp = 0.0;
  double tlp = 0.0;
  std::optional<double> lg;
  double sle = 0.0;
  double tle = 0.0;
};

/// All five metrics from a single pass over the trace; bitwise equal to the
/// individual functions.
TraceMetrics compute_trace_metrics(const GenerationTrace& trace);

struct Aggregate {
  std::optional<double> value;
  MetricProvenance provenance;
};

/// Arithmetic mean over the present values. `expected_k` only feeds the
/// provenance warnings: fewer present values than K records a shrinkage.
Aggregate aggregate(std::span<const std::optional<double>> per_trace_values, int expected_k);

/// Per-problem model-side metrics: each trace's metrics averaged over the
/// completion set. Keys are metric names ("slp", "tlp", "lg", "sle", "tle").
struct ModelSideScores {
  std::optional<double> slp, tlp, lg, sle, tle;
  std::map<std::string, MetricProvenance> provenance;
};

ModelSideScores score_model_side(const CompletionSet& set, int expected_k);

}  // namespace currikit
