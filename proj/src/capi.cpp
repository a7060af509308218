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

#include "currikit/currikit.h"

#include <algorithm>
#include <filesystem>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "currikit/curriculum.hpp"
#include "currikit/ingest.hpp"
#include "currikit/pipeline.hpp"

struct ck_corpus {
  currikit::Corpus corpus;
};

struct ck_scores {
  std::vector<currikit::MetricVector> scores;
};

struct ck_plan {
  currikit::CurriculumPlan plan;
};

namespace {

thread_local std::string g_last_error;

ck_status to_status(currikit::ErrorCode code) {
  using currikit::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kCorrectnessUnset:
      return CK_ERR_INVALID_ARGUMENT;
    case ErrorCode::kIo:
    case ErrorCode::kSinkFailure:
      return CK_ERR_IO;
    case ErrorCode::kMalformedRecord:
    case ErrorCode::kDuplicateId:
    case ErrorCode::kNonFiniteLogprob:
    case ErrorCode::kPositiveLogprob:
    case ErrorCode::kEmptyTrace:
    case ErrorCode::kCandidateCount:
    case ErrorCode::kRangeViolation:
    case ErrorCode::kEmptyAnswer:
      return CK_ERR_MALFORMED;
    case ErrorCode::kNoMetricSource:
    case ErrorCode::kMissingMetricSource:
      return CK_ERR_MISSING_SOURCE;
    case ErrorCode::kMissingMetric: return CK_ERR_MISSING_METRIC;
    case ErrorCode::kCorpusTooSmall: return CK_ERR_CORPUS_TOO_SMALL;
    case ErrorCode::kUnknownId: return CK_ERR_UNKNOWN_ID;
    case ErrorCode::kUnknownStrategy: return CK_ERR_UNKNOWN_STRATEGY;
    case ErrorCode::kSampleTooLarge: return CK_ERR_SAMPLE_TOO_LARGE;
  }
  return CK_ERR_INTERNAL;
}

ck_status fail(ck_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename Fn>
ck_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const currikit::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(CK_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(CK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CK_ERR_INTERNAL, "unknown error");
  }
}

std::vector<currikit::Metric> parse_metric_list(const char* csv) {
  std::vector<currikit::Metric> out;
  if (!csv) return out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto first = item.find_first_not_of(' ');
    if (first == std::string::npos) continue;
    item = item.substr(first, item.find_last_not_of(' ') - first + 1);
    auto m = currikit::parse_metric(item);
    if (!m) throw currikit::Error(currikit::ErrorCode::kInvalidArgument, "unknown metric " + item);
    out.push_back(*m);
  }
  return out;
}

currikit::Metric require_metric(const char* name) {
  if (!name || !*name) {
    throw currikit::Error(currikit::ErrorCode::kMissingMetric, "a metric is required");
  }
  auto m = currikit::parse_metric(name);
  if (!m) {
    throw currikit::Error(currikit::ErrorCode::kInvalidArgument,
                          std::string("unknown metric ") + name);
  }
  return *m;
}

currikit::SplitRule to_rule(ck_tier_rule rule) {
  switch (rule) {
    case CK_TIER_RULE_EQUAL: return currikit::SplitRule::kEqualCount;
    case CK_TIER_RULE_QUANTILE: return currikit::SplitRule::kQuantile;
  }
  throw currikit::Error(currikit::ErrorCode::kInvalidArgument, "unknown tier rule");
}

#define CK_REQUIRE(cond, what)                                      \
  do {                                                              \
    if (!(cond)) return fail(CK_ERR_INVALID_ARGUMENT, what);        \
  } while (0)

}  // namespace

extern "C" {

const char* ck_version(void) { return "0.1.0"; }

const char* ck_status_name(ck_status status) {
  switch (status) {
    case CK_OK: return "CK_OK";
    case CK_ERR_INVALID_ARGUMENT: return "CK_ERR_INVALID_ARGUMENT";
    case CK_ERR_IO: return "CK_ERR_IO";
    case CK_ERR_MALFORMED: return "CK_ERR_MALFORMED";
    case CK_ERR_VALIDATION: return "CK_ERR_VALIDATION";
    case CK_ERR_MISSING_SOURCE: return "CK_ERR_MISSING_SOURCE";
    case CK_ERR_MISSING_METRIC: return "CK_ERR_MISSING_METRIC";
    case CK_ERR_UNKNOWN_ID: return "CK_ERR_UNKNOWN_ID";
    case CK_ERR_UNKNOWN_STRATEGY: return "CK_ERR_UNKNOWN_STRATEGY";
    case CK_ERR_CORPUS_TOO_SMALL: return "CK_ERR_CORPUS_TOO_SMALL";
    case CK_ERR_SAMPLE_TOO_LARGE: return "CK_ERR_SAMPLE_TOO_LARGE";
    case CK_ERR_INTERNAL: return "CK_ERR_INTERNAL";
  }
  return "CK_ERR_UNKNOWN";
}

const char* ck_last_error(void) { return g_last_error.c_str(); }

void ck_corpus_config_init(ck_corpus_config* config) {
  if (!config) return;
  *config = ck_corpus_config{};
  config->k_completions = currikit::kDefaultCompletions;
  config->k_topk = currikit::kDefaultTopK;
  config->temperature = currikit::kDefaultTemperature;
}

void ck_plan_config_init(ck_plan_config* config) {
  if (!config) return;
  *config = ck_plan_config{};
  config->strategy = CK_STRATEGY_SHUF;
  config->tier = CK_TIER_LOW;
  config->tier_rule = CK_TIER_RULE_EQUAL;
}

ck_status ck_corpus_open(const ck_corpus_config* config, ck_corpus** out) {
  CK_REQUIRE(config && out, "null argument");
  CK_REQUIRE(config->problems_path && *config->problems_path, "problems_path is required");
  *out = nullptr;
  return guarded([&] {
    currikit::CorpusPaths paths;
    paths.problems = config->problems_path;
    if (config->traces_path && *config->traces_path) paths.traces = config->traces_path;
    if (config->annotations_path && *config->annotations_path) {
      paths.annotations = config->annotations_path;
    }
    currikit::CorpusManifest manifest;
    if (config->k_completions > 0) manifest.k_completions = config->k_completions;
    if (config->k_topk > 0) manifest.k_topk = config->k_topk;
    if (config->temperature > 0) manifest.temperature = config->temperature;
    auto handle = std::make_unique<ck_corpus>();
    handle->corpus = currikit::load_corpus(paths, manifest);
    *out = handle.release();
    return CK_OK;
  });
}

void ck_corpus_free(ck_corpus* corpus) { delete corpus; }

size_t ck_corpus_problem_count(const ck_corpus* corpus) {
  return corpus ? corpus->corpus.problems.size() : 0;
}

ck_status ck_corpus_validate(const ck_corpus* corpus, int permissive, const char* report_path,
                             size_t* violations, size_t* warnings) {
  CK_REQUIRE(corpus, "null corpus");
  return guarded([&] {
    const auto report = currikit::validate(corpus->corpus, permissive != 0);
    if (violations) *violations = report.violation_count();
    if (warnings) *warnings = report.warning_count();
    if (report_path && *report_path) {
      currikit::write_file(report_path, currikit::validation_report_json(report) + "\n");
    }
    if (!report.ok()) {
      const auto& first = *std::find_if(
          report.entries.begin(), report.entries.end(),
          [](const auto& e) { return e.severity == currikit::Severity::kViolation; });
      return fail(CK_ERR_VALIDATION, std::to_string(report.violation_count()) +
                                         " violation(s); first: " + first.problem_id + " " +
                                         first.code + ": " + first.message);
    }
    return CK_OK;
  });
}

ck_status ck_score(const ck_corpus* corpus, const char* metrics_csv, unsigned threads,
                   int permissive, ck_scores** out) {
  CK_REQUIRE(corpus && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    currikit::ScoreRequest request;
    request.metrics = parse_metric_list(metrics_csv);
    request.threads = threads;
    currikit::resolve_metrics(corpus->corpus, request.metrics);
    const auto report = currikit::validate(corpus->corpus, permissive != 0);
    if (!report.ok()) {
      for (const auto& e : report.entries) {
        if (e.severity == currikit::Severity::kViolation) {
          return fail(CK_ERR_VALIDATION, "corpus has " + std::to_string(report.violation_count()) +
                                             " violation(s); first: " + e.problem_id + " " +
                                             e.code + ": " + e.message);
        }
      }
    }
    auto handle = std::make_unique<ck_scores>();
    handle->scores = currikit::score_corpus(corpus->corpus, request);
    *out = handle.release();
    return CK_OK;
  });
}

ck_status ck_scores_write(const ck_scores* scores, const ck_corpus* corpus, const char* out_dir) {
  CK_REQUIRE(scores && corpus && out_dir && *out_dir, "null argument");
  return guarded([&] {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    std::ostringstream lines;
    currikit::write_scores(scores->scores, lines);
    currikit::write_file(dir / "scores.jsonl", lines.str());
    std::ostringstream prov;
    currikit::write_provenance(scores->scores, prov);
    currikit::write_file(dir / "score_provenance.jsonl", prov.str());

    currikit::CorpusManifest manifest = corpus->corpus.manifest;
    manifest.counts["scores"] = scores->scores.size();
    manifest.content_digest["scores"] = currikit::sha256_hex(lines.str());
    std::ostringstream m;
    currikit::write_manifest(manifest, m);
    currikit::write_file(dir / "manifest.json", m.str());
    return CK_OK;
  });
}

ck_status ck_scores_read(const char* scores_path, ck_scores** out) {
  CK_REQUIRE(scores_path && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::istringstream in(currikit::read_file(scores_path));
    auto handle = std::make_unique<ck_scores>();
    handle->scores = currikit::read_scores(in);
    if (handle->scores.empty()) {
      return fail(CK_ERR_MALFORMED, std::string(scores_path) + " holds no scores");
    }
    *out = handle.release();
    return CK_OK;
  });
}

void ck_scores_free(ck_scores* scores) { delete scores; }

size_t ck_scores_count(const ck_scores* scores) { return scores ? scores->scores.size() : 0; }

ck_status ck_scores_get(const ck_scores* scores, size_t index, const char* metric, double* value,
                        int* present) {
  CK_REQUIRE(scores && metric && value && present, "null argument");
  CK_REQUIRE(index < scores->scores.size(), "index out of range");
  return guarded([&] {
    auto v = scores->scores[index].get(require_metric(metric));
    *present = v ? 1 : 0;
    *value = v.value_or(0.0);
    return CK_OK;
  });
}

const char* ck_scores_problem_id(const ck_scores* scores, size_t index) {
  if (!scores || index >= scores->scores.size()) return nullptr;
  return scores->scores[index].problem_id.c_str();
}

ck_status ck_plan_build(const ck_scores* scores, const ck_plan_config* config, ck_plan** out) {
  CK_REQUIRE(scores && config && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    currikit::PlanRequest request;
    switch (config->strategy) {
      case CK_STRATEGY_FCL: request.strategy = currikit::Strategy::kFcl; break;
      case CK_STRATEGY_RCL: request.strategy = currikit::Strategy::kRcl; break;
      case CK_STRATEGY_SGC: request.strategy = currikit::Strategy::kSgc; break;
      case CK_STRATEGY_GFC: request.strategy = currikit::Strategy::kGfc; break;
      case CK_STRATEGY_GRC: request.strategy = currikit::Strategy::kGrc; break;
      case CK_STRATEGY_SHUF: request.strategy = currikit::Strategy::kShuf; break;
      default: return fail(CK_ERR_UNKNOWN_STRATEGY, "UnknownStrategy");
    }
    if (config->metric && *config->metric) {
      request.metric = require_metric(config->metric);
    } else if (request.strategy != currikit::Strategy::kShuf) {
      return fail(CK_ERR_MISSING_METRIC, "strategy requires a metric");
    }
    request.seed = config->seed;
    switch (config->tier) {
      case CK_TIER_LOW: request.tier = currikit::Tier::kLow; break;
      case CK_TIER_MEDIUM: request.tier = currikit::Tier::kMedium; break;
      case CK_TIER_HIGH: request.tier = currikit::Tier::kHigh; break;
      default: return fail(CK_ERR_INVALID_ARGUMENT, "unknown tier");
    }
    request.tier_rule = to_rule(config->tier_rule);
    auto handle = std::make_unique<ck_plan>();
    handle->plan = currikit::build_plan(scores->scores, request);
    *out = handle.release();
    return CK_OK;
  });
}

void ck_plan_free(ck_plan* plan) { delete plan; }

size_t ck_plan_size(const ck_plan* plan) { return plan ? plan->plan.ordering.size() : 0; }

const char* ck_plan_id_at(const ck_plan* plan, size_t index) {
  if (!plan || index >= plan->plan.ordering.size()) return nullptr;
  return plan->plan.ordering[index].c_str();
}

ck_status ck_plan_emit(const ck_plan* plan, const char* problems_path, const char* scores_path,
                       const char* out_dir, unsigned repeat) {
  CK_REQUIRE(plan && problems_path && out_dir && *out_dir, "null argument");
  return guarded([&] {
    const std::string problem_bytes = currikit::read_file(problems_path);
    std::istringstream in(problem_bytes);
    const auto problems = currikit::read_problems(in);
    currikit::EmitOptions options;
    options.repeat = repeat == 0 ? 1 : repeat;
    options.input_digests["problems"] = currikit::sha256_hex(problem_bytes);
    if (scores_path && *scores_path) {
      options.input_digests["scores"] = currikit::sha256_hex(currikit::read_file(scores_path));
    }
    std::ostringstream train, manifest;
    currikit::emit_plan(plan->plan, problems, train, manifest, options);
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    currikit::write_file(dir / "ordered_train.jsonl", train.str());
    currikit::write_file(dir / "plan.json", manifest.str());
    return CK_OK;
  });
}

ck_status ck_tiers_write(const ck_scores* scores, const char* metric, ck_tier_rule rule,
                         const char* path) {
  CK_REQUIRE(scores && path && *path, "null argument");
  return guarded([&] {
    const auto partition =
        currikit::partition_tiers(scores->scores, require_metric(metric), to_rule(rule));
    currikit::write_file(path, currikit::partition_json(partition) + "\n");
    return CK_OK;
  });
}

ck_status ck_report_write(const ck_scores* scores, size_t sample_size, uint64_t seed,
                          const char* path) {
  CK_REQUIRE(scores && path && *path, "null argument");
  return guarded([&] {
    const auto report = currikit::build_report(scores->scores, sample_size, seed);
    currikit::write_file(path, currikit::report_json(report) + "\n");
    return CK_OK;
  });
}

}  // extern "C"
