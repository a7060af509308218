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
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "currikit/core.hpp"

namespace currikit {

struct TierPartition {
  std::string metric_name;
  SplitRule split_rule = SplitRule::kEqualCount;
  std::vector<std::string> low, medium, high;

  const std::vector<std::string>& members(Tier t) const noexcept;
};

/// Ascending by metric value; ties keep corpus order.
CurriculumPlan order_fcl(std::span<const MetricVector> scores, Metric metric);
/// Exact reverse of order_fcl.
CurriculumPlan order_rcl(std::span<const MetricVector> scores, Metric metric);

/// Equal-count: contiguous thirds of the FCL order, the first N mod 3 tiers
/// taking one extra element. Quantile: cut at the 1/3 and 2/3 empirical
/// quantiles (linear interpolation), values equal to a cut going to the lower
/// tier.
TierPartition partition_tiers(std::span<const MetricVector> scores, Metric metric,
                              SplitRule rule = SplitRule::kEqualCount);

/// Per-tier shuffles use the sub-seed `seed ^ tier_index` (low=0, medium=1,
/// high=2), so SGC, GFC and GRC agree on every within-tier permutation.
std::uint64_t tier_seed(std::uint64_t seed, Tier t) noexcept;

CurriculumPlan order_sgc(const TierPartition& partition, Tier tier, std::uint64_t seed);
CurriculumPlan order_gfc(const TierPartition& partition, std::uint64_t seed);
CurriculumPlan order_grc(const TierPartition& partition, std::uint64_t seed);
CurriculumPlan order_shuf(std::span<const std::string> ids, std::uint64_t seed);

struct PlanRequest {
  Strategy strategy = Strategy::kShuf;
  std::optional<Metric> metric;  // required for everything but SHUF
  std::uint64_t seed = 0;
  std::optional<Tier> tier;  // SGC only
  SplitRule tier_rule = SplitRule::kEqualCount;
};

/// Dispatches on the requested strategy. Throws kMissingMetric when a
/// strategy other than SHUF has no metric or a vector lacks it, and
/// kInvalidArgument when SGC has no tier.
CurriculumPlan build_plan(std::span<const MetricVector> scores, const PlanRequest& request);

struct EmitOptions {
  unsigned repeat = 1;  // emit the ordering this many times back to back
  std::map<std::string, std::string> input_digests;
};

/// Writes the problems in plan order to `train_out` and the plan manifest to
/// `manifest_out`. Returns the number of training records written. Throws
/// kUnknownId when the plan names an id the corpus lacks.
std::size_t emit_plan(const CurriculumPlan& plan, std::span<const Problem> problems,
                      std::ostream& train_out, std::ostream& manifest_out,
                      const EmitOptions& options = {});

/// Plan manifest as a JSON document (no trailing newline).
std::string plan_manifest_json(const CurriculumPlan& plan, const EmitOptions& options);

/// Tier partition as a JSON document (no trailing newline).
std::string partition_json(const TierPartition& partition);

}  // namespace currikit
