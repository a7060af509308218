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

#include "currikit/curriculum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "currikit/ingest.hpp"
#include "currikit/rng.hpp"
#include "json.hpp"

namespace currikit {

void seeded_shuffle(std::vector<std::string>& ids, std::uint64_t seed) {
  std::sort(ids.begin(), ids.end());
  SplitMix64 rng(seed);
  for (std::size_t i = ids.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(ids[i - 1], ids[j]);
  }
}

const std::vector<std::string>& TierPartition::members(Tier t) const noexcept {
  switch (t) {
    case Tier::kLow: return low;
    case Tier::kMedium: return medium;
    case Tier::kHigh: return high;
  }
  return low;
}

namespace {

struct Keyed {
  double value;
  std::size_t index;
};

// Corpus positions sorted ascending by metric value, ties by position.
std::vector<Keyed> ascending(std::span<const MetricVector> scores, Metric metric) {
  std::vector<Keyed> keyed;
  keyed.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    auto v = scores[i].get(metric);
    if (!v) {
      throw Error(ErrorCode::kMissingMetric, "MissingMetric(" + scores[i].problem_id + ", " +
                                                 std::string(metric_name(metric)) + ")");
    }
    keyed.push_back({*v, i});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.index < b.index;
  });
  return keyed;
}

double quantile(const std::vector<Keyed>& sorted, double p) {
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo].value + (h - static_cast<double>(lo)) * (sorted[hi].value - sorted[lo].value);
}

CurriculumPlan shuffled_tiers(const TierPartition& partition, std::uint64_t seed,
                              Strategy strategy, std::span<const Tier> order) {
  CurriculumPlan plan;
  plan.strategy = strategy;
  plan.metric_name = partition.metric_name;
  plan.seed = seed;
  plan.tier_rule = partition.split_rule;
  for (Tier t : order) {
    std::vector<std::string> block = partition.members(t);
    seeded_shuffle(block, tier_seed(seed, t));
    const std::size_t start = plan.ordering.size();
    plan.ordering.insert(plan.ordering.end(), block.begin(), block.end());
    plan.tier_boundaries.push_back({t, start, plan.ordering.size()});
  }
  return plan;
}

}  // namespace

CurriculumPlan order_fcl(std::span<const MetricVector> scores, Metric metric) {
  CurriculumPlan plan;
  plan.strategy = Strategy::kFcl;
  plan.metric_name = std::string(metric_name(metric));
  for (const auto& k : ascending(scores, metric)) {
    plan.ordering.push_back(scores[k.index].problem_id);
  }
  return plan;
}

CurriculumPlan order_rcl(std::span<const MetricVector> scores, Metric metric) {
  CurriculumPlan plan = order_fcl(scores, metric);
  plan.strategy = Strategy::kRcl;
  std::reverse(plan.ordering.begin(), plan.ordering.end());
  return plan;
}

TierPartition partition_tiers(std::span<const MetricVector> scores, Metric metric,
                              SplitRule rule) {
  if (rule == SplitRule::kEqualCount && scores.size() < 3) {
    throw Error(ErrorCode::kCorpusTooSmall,
                "equal-count tiers need at least 3 problems, got " +
                    std::to_string(scores.size()));
  }
  if (scores.empty()) throw Error(ErrorCode::kCorpusTooSmall, "no problems to partition");
  const std::vector<Keyed> sorted = ascending(scores, metric);
  TierPartition out;
  out.metric_name = std::string(metric_name(metric));
  out.split_rule = rule;

  if (rule == SplitRule::kEqualCount) {
    const std::size_t n = sorted.size();
    const std::size_t base = n / 3;
    const std::size_t extra = n % 3;
    const std::size_t low_end = base + (extra > 0 ? 1 : 0);
    const std::size_t mid_end = low_end + base + (extra > 1 ? 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& id = scores[sorted[i].index].problem_id;
      (i < low_end ? out.low : i < mid_end ? out.medium : out.high).push_back(id);
    }
    return out;
  }

  const double q1 = quantile(sorted, 1.0 / 3.0);
  const double q2 = quantile(sorted, 2.0 / 3.0);
  for (const auto& k : sorted) {
    const auto& id = scores[k.index].problem_id;
    (k.value <= q1 ? out.low : k.value <= q2 ? out.medium : out.high).push_back(id);
  }
  return out;
}

std::uint64_t tier_seed(std::uint64_t seed, Tier t) noexcept {
  return seed ^ static_cast<std::uint64_t>(t);
}

CurriculumPlan order_sgc(const TierPartition& partition, Tier tier, std::uint64_t seed) {
  const Tier only[] = {tier};
  CurriculumPlan plan = shuffled_tiers(partition, seed, Strategy::kSgc, only);
  plan.tier_selector = tier;
  return plan;
}

CurriculumPlan order_gfc(const TierPartition& partition, std::uint64_t seed) {
  static constexpr Tier kForward[] = {Tier::kLow, Tier::kMedium, Tier::kHigh};
  return shuffled_tiers(partition, seed, Strategy::kGfc, kForward);
}

CurriculumPlan order_grc(const TierPartition& partition, std::uint64_t seed) {
  static constexpr Tier kReverse[] = {Tier::kHigh, Tier::kMedium, Tier::kLow};
  return shuffled_tiers(partition, seed, Strategy::kGrc, kReverse);
}

CurriculumPlan order_shuf(std::span<const std::string> ids, std::uint64_t seed) {
  CurriculumPlan plan;
  plan.strategy = Strategy::kShuf;
  plan.seed = seed;
  plan.ordering.assign(ids.begin(), ids.end());
  seeded_shuffle(plan.ordering, seed);
  return plan;
}

CurriculumPlan build_plan(std::span<const MetricVector> scores, const PlanRequest& request) {
  if (request.strategy == Strategy::kShuf) {
    std::vector<std::string> ids;
    ids.reserve(scores.size());
    for (const auto& v : scores) ids.push_back(v.problem_id);
    CurriculumPlan plan = order_shuf(ids, request.seed);
    if (request.metric) plan.metric_name = std::string(metric_name(*request.metric));
    return plan;
  }
  if (!request.metric) {
    throw Error(ErrorCode::kMissingMetric,
                std::string(strategy_name(request.strategy)) + " requires a metric");
  }
  const Metric metric = *request.metric;
  switch (request.strategy) {
    case Strategy::kFcl: return order_fcl(scores, metric);
    case Strategy::kRcl: return order_rcl(scores, metric);
    case Strategy::kSgc: {
      if (!request.tier) throw Error(ErrorCode::kInvalidArgument, "sgc requires a tier");
      return order_sgc(partition_tiers(scores, metric, request.tier_rule), *request.tier,
                       request.seed);
    }
    case Strategy::kGfc:
      return order_gfc(partition_tiers(scores, metric, request.tier_rule), request.seed);
    case Strategy::kGrc:
      return order_grc(partition_tiers(scores, metric, request.tier_rule), request.seed);
    case Strategy::kShuf: break;
  }
  throw Error(ErrorCode::kUnknownStrategy, "unknown strategy");
}

std::string plan_manifest_json(const CurriculumPlan& plan, const EmitOptions& options) {
  nlohmann::ordered_json j;
  j["strategy"] = strategy_name(plan.strategy);
  j["metric"] = plan.metric_name.empty() ? nlohmann::ordered_json(nullptr)
                                          : nlohmann::ordered_json(plan.metric_name);
  j["seed"] = plan.seed;
  j["prng"] = kPrngName;
  j["tier_rule"] = plan.tier_rule ? nlohmann::ordered_json(split_rule_name(*plan.tier_rule))
                                  : nlohmann::ordered_json(nullptr);
  j["tier"] = plan.tier_selector ? nlohmann::ordered_json(tier_name(*plan.tier_selector))
                                 : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json bounds = nlohmann::ordered_json::array();
  for (const auto& b : plan.tier_boundaries) {
    nlohmann::ordered_json e;
    e["tier"] = tier_name(b.tier);
    e["start"] = b.start;
    e["end"] = b.end;
    bounds.push_back(std::move(e));
  }
  j["tier_boundaries"] = std::move(bounds);
  j["count"] = plan.ordering.size();
  j["repeat"] = options.repeat;
  j["input_digests"] = nlohmann::ordered_json::object();
  for (const auto& [role, d] : options.input_digests) j["input_digests"][role] = d;
  return j.dump(2);
}

std::string partition_json(const TierPartition& partition) {
  nlohmann::ordered_json j;
  j["metric"] = partition.metric_name;
  j["tier_rule"] = split_rule_name(partition.split_rule);
  j["prng"] = kPrngName;
  for (Tier t : {Tier::kLow, Tier::kMedium, Tier::kHigh}) {
    j[std::string(tier_name(t))] = partition.members(t);
  }
  return j.dump(2);
}

std::size_t emit_plan(const CurriculumPlan& plan, std::span<const Problem> problems,
                      std::ostream& train_out, std::ostream& manifest_out,
                      const EmitOptions& options) {
  std::unordered_map<std::string_view, const Problem*> by_id;
  for (const auto& p : problems) by_id.emplace(p.id, &p);
  std::vector<const Problem*> ordered;
  ordered.reserve(plan.ordering.size());
  for (const auto& id : plan.ordering) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw Error(ErrorCode::kUnknownId, "UnknownId(" + id + ")");
    ordered.push_back(it->second);
  }
  std::size_t written = 0;
  for (unsigned r = 0; r < options.repeat; ++r) {
    for (const Problem* p : ordered) {
      train_out << to_json_line(*p);
      ++written;
    }
  }
  manifest_out << plan_manifest_json(plan, options) << '\n';
  if (!train_out || !manifest_out) throw Error(ErrorCode::kSinkFailure, "write failed");
  return written;
}

}  // namespace currikit
