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

#include "currikit/metrics.hpp"

#include <cmath>

namespace currikit {

void CompensatedSum::add(double x) noexcept {
  double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

TruncatedDistribution truncate(const TokenRecord& record) {
  auto logprobs = record.topk_logprobs();
  // Candidates are sorted, so the first entry is the maximum.
  const double shift = logprobs.front();
  TruncatedDistribution q;
  q.probs.reserve(logprobs.size());
  CompensatedSum total;
  for (double l : logprobs) {
    double w = std::exp(l - shift);
    q.probs.push_back(w);
    total.add(w);
  }
  const double z = total.value();
  for (double& p : q.probs) p /= z;
  return q;
}

double entropy_nats(const TruncatedDistribution& q) {
  CompensatedSum h;
  for (double p : q.probs) {
    if (p > 0.0) h.add(-p * std::log(p));
  }
  return h.value();
}

double entropy_bits(const TruncatedDistribution& q) {
  CompensatedSum h;
  for (double p : q.probs) {
    if (p > 0.0) h.add(-p * std::log2(p));
  }
  return h.value();
}

TraceMetrics compute_trace_metrics(const GenerationTrace& trace) {
  CompensatedSum chosen, nats, bits, gaps;
  std::size_t gap_positions = 0;
  for (const auto& tok : trace.tokens) {
    chosen.add(tok.chosen_logprob());
    const TruncatedDistribution q = truncate(tok);
    nats.add(entropy_nats(q));
    bits.add(entropy_bits(q));
    if (tok.candidate_count() >= 2) {
      auto top = tok.topk_logprobs();
      gaps.add(top[0] - top[1]);
      ++gap_positions;
    }
  }
  const double t = static_cast<double>(trace.tokens.size());
  TraceMetrics m;
  m.slp = std::exp(-chosen.value() / t);
  m.tlp = std::exp(nats.value() / t);
  m.sle = bits.value();
  m.tle = bits.value() / t;
  if (gap_positions > 0) m.lg = gaps.value() / static_cast<double>(gap_positions);
  return m;
}

double slp(const GenerationTrace& trace) { return compute_trace_metrics(trace).slp; }
double tlp(const GenerationTrace& trace) { return compute_trace_metrics(trace).tlp; }
std::optional<double> lg(const GenerationTrace& trace) {
  return compute_trace_metrics(trace).lg;
}
double sle(const GenerationTrace& trace) { return compute_trace_metrics(trace).sle; }
double tle(const GenerationTrace& trace) { return compute_trace_metrics(trace).tle; }

Aggregate aggregate(std::span<const std::optional<double>> per_trace_values, int expected_k) {
  Aggregate out;
  CompensatedSum sum;
  std::size_t n = 0;
  for (const auto& v : per_trace_values) {
    if (!v) continue;
    sum.add(*v);
    ++n;
  }
  out.provenance.n_completions_used = n;
  if (n > 0) out.value = sum.value() / static_cast<double>(n);
  if (n < static_cast<std::size_t>(expected_k)) {
    out.provenance.warnings.push_back("used " + std::to_string(n) + " of " +
                                      std::to_string(expected_k) + " completions");
  }
  return out;
}

ModelSideScores score_model_side(const CompletionSet& set, int expected_k) {
  const std::size_t k = set.traces.size();
  std::vector<std::optional<double>> slps(k), tlps(k), lgs(k), sles(k), tles(k);
  for (std::size_t s = 0; s < k; ++s) {
    const TraceMetrics m = compute_trace_metrics(set.traces[s]);
    slps[s] = m.slp;
    tlps[s] = m.tlp;
    lgs[s] = m.lg;
    sles[s] = m.sle;
    tles[s] = m.tle;
  }
  ModelSideScores out;
  auto fill = [&](const char* name, std::optional<double>& slot,
                  const std::vector<std::optional<double>>& values) {
    Aggregate a = aggregate(values, expected_k);
    slot = a.value;
    out.provenance[name] = std::move(a.provenance);
  };
  fill("slp", out.slp, slps);
  fill("tlp", out.tlp, tlps);
  fill("lg", out.lg, lgs);
  fill("sle", out.sle, sles);
  fill("tle", out.tle, tles);
  return out;
}

}  // namespace currikit
