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

#include <optional>

#include "currikit/core.hpp"
#include "currikit/metrics.hpp"

namespace currikit {

/// Fraction of judged-correct completions. Throws kCorrectnessUnset when the
/// set has not been judged or is empty.
double acc(const CompletionSet& set);

/// Correctness variance across the K trials, from the closed form
/// acc * (1 - acc).
double vacc(const CompletionSet& set);

/// Builds a MetricVector from whichever sources are present. acc and vacc are
/// filled together from a judged set. Throws kNoMetricSource when nothing is
/// supplied.
MetricVector assemble(const std::string& problem_id, const ModelSideScores* model_side,
                      const CompletionSet* judged_set,
                      const AnnotationRecord* annotation);

}  // namespace currikit
