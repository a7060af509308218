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

#include "currikit/outcome.hpp"

namespace currikit {

double acc(const CompletionSet& set) {
  if (!set.judged() || set.traces.empty()) {
    throw Error(ErrorCode::kCorrectnessUnset, set.problem_id + ": correctness not set");
  }
  std::size_t correct = 0;
  for (bool z : *set.correctness) correct += z ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(set.traces.size());
}

double vacc(const CompletionSet& set) {
  const double p = acc(set);
  return p * (1.0 - p);
}

MetricVector assemble(const std::string& problem_id, const ModelSideScores* model_side,
                      const CompletionSet* judged_set,
                      const AnnotationRecord* annotation) {
  if (!model_side && !judged_set && !annotation) {
    throw Error(ErrorCode::kNoMetricSource, problem_id + ": no metric source");
  }
  MetricVector v;
  v.problem_id = problem_id;
  if (model_side) {
    v.slp = model_side->slp;
    v.tlp = model_side->tlp;
    v.lg = model_side->lg;
    v.sle = model_side->sle;
    v.tle = model_side->tle;
    v.provenance = model_side->provenance;
  }
  if (judged_set) {
    const double p = acc(*judged_set);
    v.acc = p;
    v.vacc = p * (1.0 - p);
    MetricProvenance prov{judged_set->traces.size(), {}};
    v.provenance["acc"] = prov;
    v.provenance["vacc"] = prov;
  }
  if (annotation) {
    v.rs = annotation->rs;
    v.sc = annotation->sc;
    v.cd = annotation->cd;
  }
  check_invariants(v);
  return v;
}

}  // namespace currikit
