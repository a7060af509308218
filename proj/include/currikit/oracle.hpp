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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "currikit/core.hpp"

// Reference implementations used to cross-check the production metrics.
// Nothing here shares reduction code with metrics.cpp: softmax is unshifted,
// sums are plain left-to-right loops and the top-2 gap is found by scanning.
namespace currikit::oracle {

enum class EntropyProfile { kUniform, kDeterministic, kRandom };

struct SyntheticTraceSpec {
  int token_count = 1;
  /// Candidates per position; empty means k at every position.
  std::vector<int> candidate_counts;
  EntropyProfile profile = EntropyProfile::kRandom;
  std::uint64_t seed = 0;
  int k_topk = kDefaultTopK;
  std::string problem_id = "synthetic";
  int completion_index = 0;
  std::string final_answer_text;
};

/// uniform: every candidate at a position gets log(1/m).
/// deterministic: one candidate at 0, the rest at -1e4 (probability 0 after
/// renormalisation); the emitted token is the certain one.
/// random: a seeded Exp(1) draw per candidate plus one for the mass outside
/// the top-k, normalised and logged; the emitted token is a uniformly chosen
/// candidate.
GenerationTrace generate_trace(const SyntheticTraceSpec& spec);

/// Seeded fuzz corpus: T uniform in [1, max_tokens], m_t uniform in
/// [1, max_candidates], random profile.
std::vector<GenerationTrace> fuzz_traces(std::size_t count, std::uint64_t seed,
                                         int max_tokens = 64, int max_candidates = 5);

/// Direct transliteration of the metric definitions for slp, tlp, lg, sle
/// and tle. LG is absent when no position has two candidates.
std::optional<double> oracle_metric(const GenerationTrace& trace, Metric metric);

/// Literal deviation sum (1/K) * sum (z_s - p)^2.
double oracle_vacc(const std::vector<bool>& flags);

}  // namespace currikit::oracle
