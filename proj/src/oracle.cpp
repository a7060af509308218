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

#include "currikit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "currikit/rng.hpp"

namespace currikit::oracle {

namespace {

double open_unit(SplitMix64& rng) {
  return (static_cast<double>(rng.next() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

GenerationTrace generate_trace(const SyntheticTraceSpec& spec) {
  if (spec.token_count < 1) throw Error(ErrorCode::kInvalidArgument, "token_count < 1");
  if (!spec.candidate_counts.empty() &&
      static_cast<int>(spec.candidate_counts.size()) != spec.token_count) {
    throw Error(ErrorCode::kInvalidArgument, "candidate_counts length != token_count");
  }
  SplitMix64 rng(spec.seed);
  GenerationTrace trace;
  trace.problem_id = spec.problem_id;
  trace.completion_index = spec.completion_index;
  trace.temperature = kDefaultTemperature;
  trace.final_answer_text = spec.final_answer_text;
  for (int t = 0; t < spec.token_count; ++t) {
    const int m = spec.candidate_counts.empty() ? spec.k_topk : spec.candidate_counts[t];
    if (m < 1 || m > spec.k_topk) {
      throw Error(ErrorCode::kInvalidArgument, "candidate count outside [1,k]");
    }
    std::vector<double> topk(static_cast<std::size_t>(m));
    double chosen = 0.0;
    switch (spec.profile) {
      case EntropyProfile::kUniform:
        std::fill(topk.begin(), topk.end(), std::log(1.0 / m));
        chosen = topk.front();
        break;
      case EntropyProfile::kDeterministic:
        std::fill(topk.begin(), topk.end(), -1.0e4);
        topk.front() = 0.0;
        chosen = 0.0;
        break;
      case EntropyProfile::kRandom: {
        std::vector<double> w(static_cast<std::size_t>(m) + 1);
        double total = 0.0;
        for (double& x : w) {
          x = -std::log(open_unit(rng));
          total += x;
        }
        for (int i = 0; i < m; ++i) topk[i] = std::log(w[i] / total);
        std::sort(topk.begin(), topk.end(), std::greater<>());
        chosen = topk[rng.below(static_cast<std::uint64_t>(m))];
        break;
      }
    }
    trace.tokens.emplace_back(chosen, std::move(topk));
  }
  return trace;
}

std::vector<GenerationTrace> fuzz_traces(std::size_t count, std::uint64_t seed, int max_tokens,
                                         int max_candidates) {
  SplitMix64 rng(seed);
  std::vector<GenerationTrace> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SyntheticTraceSpec spec;
    spec.token_count = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_tokens)));
    spec.k_topk = max_candidates;
    for (int t = 0; t < spec.token_count; ++t) {
      spec.candidate_counts.push_back(
          1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_candidates))));
    }
    spec.profile = EntropyProfile::kRandom;
    spec.seed = rng.next();
    spec.problem_id = "fuzz" + std::to_string(i);
    out.push_back(generate_trace(spec));
  }
  return out;
}

std::optional<double> oracle_metric(const GenerationTrace& trace, Metric metric) {
  const double T = static_cast<double>(trace.tokens.size());
  double sum_chosen = 0.0;
  double sum_h_nats = 0.0;
  double sum_h_bits = 0.0;
  double sum_gap = 0.0;
  int gap_positions = 0;
  const double ln2 = std::log(2.0);
  for (const auto& tok : trace.tokens) {
    sum_chosen += tok.chosen_logprob();
    auto l = tok.topk_logprobs();
    double z = 0.0;
    for (double x : l) z += std::exp(x);
    double h = 0.0;
    double h2 = 0.0;
    for (double x : l) {
      double q = std::exp(x) / z;
      if (q == 0.0) continue;
      h -= q * std::log(q);
      h2 -= q * (std::log(q) / ln2);
    }
    sum_h_nats += h;
    sum_h_bits += h2;
    if (l.size() >= 2) {
      double first = -std::numeric_limits<double>::infinity();
      double second = -std::numeric_limits<double>::infinity();
      for (double x : l) {
        if (x > first) {
          second = first;
          first = x;
        } else if (x > second) {
          second = x;
        }
      }
      sum_gap += first - second;
      ++gap_positions;
    }
  }
  switch (metric) {
    case Metric::kSlp: return std::exp(-sum_chosen / T);
    case Metric::kTlp: return std::exp(sum_h_nats / T);
    case Metric::kLg:
      if (gap_positions == 0) return std::nullopt;
      return sum_gap / gap_positions;
    case Metric::kSle: return sum_h_bits;
    case Metric::kTle: return sum_h_bits / T;
    default: break;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "oracle_metric covers model-side metrics only, got " +
                  std::string(metric_name(metric)));
}

double oracle_vacc(const std::vector<bool>& flags) {
  if (flags.empty()) throw Error(ErrorCode::kInvalidArgument, "K must be >= 1");
  const double k = static_cast<double>(flags.size());
  double correct = 0.0;
  for (bool z : flags) correct += z ? 1.0 : 0.0;
  const double p = correct / k;
  double dev = 0.0;
  for (bool z : flags) {
    const double d = (z ? 1.0 : 0.0) - p;
    dev += d * d;
  }
  return dev / k;
}

}  // namespace currikit::oracle
