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

#include "currikit/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "currikit/answer.hpp"
#include "currikit/metrics.hpp"
#include "currikit/outcome.hpp"
#include "currikit/rng.hpp"
#include "json.hpp"

namespace currikit {

Corpus load_corpus(const CorpusPaths& paths, const CorpusManifest& config) {
  check_invariants(config);
  Corpus corpus;
  corpus.manifest = config;
  corpus.manifest.counts.clear();
  corpus.manifest.content_digest.clear();

  auto ingest = [&](const std::string& role, const std::filesystem::path& path, auto&& reader) {
    const std::string bytes = read_file(path);
    corpus.manifest.content_digest[role] = sha256_hex(bytes);
    std::istringstream in(bytes);
    Diagnostics diag;
    auto records = reader(in, diag);
    for (auto& d : diag.items) d.message = path.filename().string() + ": " + d.message;
    corpus.diagnostics.items.insert(corpus.diagnostics.items.end(), diag.items.begin(),
                                    diag.items.end());
    return records;
  };

  corpus.problems = ingest("problems", paths.problems,
                           [](std::istream& in, Diagnostics& d) { return read_problems(in, d); });
  corpus.manifest.counts["problems"] = corpus.problems.size();
  if (paths.traces) {
    corpus.sets = ingest("traces", *paths.traces, [&](std::istream& in, Diagnostics& d) {
      return read_traces(in, corpus.manifest, d);
    });
    std::size_t n = 0;
    for (const auto& s : *corpus.sets) n += s.traces.size();
    corpus.manifest.counts["traces"] = n;
  }
  if (paths.annotations) {
    corpus.annotations = ingest("annotations", *paths.annotations,
                                [](std::istream& in, Diagnostics& d) {
                                  return read_annotations(in, d);
                                });
    corpus.manifest.counts["annotations"] = corpus.annotations->size();
  }
  return corpus;
}

ValidationReport validate(const Corpus& corpus, bool permissive) {
  ValidationReport report;
  for (const auto& d : corpus.diagnostics.items) {
    report.entries.push_back({d.severity, d.problem_id, std::string(error_code_name(d.code)),
                              "line " + std::to_string(d.line) + ": " + d.message});
  }
  ValidationOptions options;
  options.k_completions = corpus.manifest.k_completions;
  options.k_topk = corpus.manifest.k_topk;
  options.permissive = permissive;
  std::optional<std::span<const CompletionSet>> sets;
  if (corpus.sets) sets = std::span<const CompletionSet>(*corpus.sets);
  std::optional<std::span<const AnnotationRecord>> annotations;
  if (corpus.annotations) annotations = std::span<const AnnotationRecord>(*corpus.annotations);
  ValidationReport found = validate_corpus(corpus.problems, sets, annotations, options);
  report.entries.insert(report.entries.end(), found.entries.begin(), found.entries.end());
  return report;
}

std::string validation_report_json(const ValidationReport& report) {
  nlohmann::ordered_json j;
  j["ok"] = report.ok();
  j["violation_count"] = report.violation_count();
  j["warning_count"] = report.warning_count();
  auto list = [&](Severity sev) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : report.entries) {
      if (e.severity != sev) continue;
      nlohmann::ordered_json o;
      o["problem_id"] = e.problem_id;
      o["code"] = e.code;
      o["message"] = e.message;
      arr.push_back(std::move(o));
    }
    return arr;
  };
  j["violations"] = list(Severity::kViolation);
  j["warnings"] = list(Severity::kWarning);
  return j.dump(2);
}

std::vector<Metric> resolve_metrics(const Corpus& corpus, std::span<const Metric> requested) {
  std::vector<Metric> selected(requested.begin(), requested.end());
  if (selected.empty()) {
    for (Metric m : kAllMetrics) {
      if ((is_annotation(m) && corpus.annotations) || (!is_annotation(m) && corpus.sets)) {
        selected.push_back(m);
      }
    }
  }
  auto has = [&](Metric m) { return std::find(selected.begin(), selected.end(), m) != selected.end(); };
  if (has(Metric::kAcc) && !has(Metric::kVacc)) selected.push_back(Metric::kVacc);
  if (has(Metric::kVacc) && !has(Metric::kAcc)) selected.push_back(Metric::kAcc);

  for (Metric m : selected) {
    if (is_annotation(m) && !corpus.annotations) {
      throw Error(ErrorCode::kMissingMetricSource,
                  "MissingMetricSource: " + std::string(metric_name(m)) +
                      " needs an annotations file (--annotations)");
    }
    if (!is_annotation(m) && !corpus.sets) {
      throw Error(ErrorCode::kMissingMetricSource,
                  "MissingMetricSource: " + std::string(metric_name(m)) +
                      (is_model_side(m) ? " needs a traces file (--traces)"
                                        : " needs judged completions from a traces file (--traces)"));
    }
  }
  std::vector<Metric> ordered;
  for (Metric m : kAllMetrics) {
    if (has(m)) {
      ordered.push_back(m);
    }
  }
  return ordered;
}

namespace {

void clear_metric(MetricVector& v, Metric m) {
  switch (m) {
    case Metric::kSlp: v.slp.reset(); break;
    case Metric::kTlp: v.tlp.reset(); break;
    case Metric::kLg: v.lg.reset(); break;
    case Metric::kSle: v.sle.reset(); break;
    case Metric::kTle: v.tle.reset(); break;
    case Metric::kAcc: v.acc.reset(); break;
    case Metric::kVacc: v.vacc.reset(); break;
    case Metric::kRs: v.rs.reset(); break;
    case Metric::kSc: v.sc.reset(); break;
    case Metric::kCd: v.cd.reset(); break;
  }
  v.provenance.erase(std::string(metric_name(m)));
}

}  // namespace

std::vector<MetricVector> score_corpus(const Corpus& corpus, const ScoreRequest& request) {
  const std::vector<Metric> selected = resolve_metrics(corpus, request.metrics);
  auto wanted = [&](Metric m) {
    return std::find(selected.begin(), selected.end(), m) != selected.end();
  };
  const bool want_model = std::any_of(selected.begin(), selected.end(), is_model_side);
  const bool want_outcome = wanted(Metric::kAcc);
  const bool want_annotation = std::any_of(selected.begin(), selected.end(), is_annotation);

  std::unordered_map<std::string_view, const CompletionSet*> sets;
  if (corpus.sets) {
    for (const auto& s : *corpus.sets) sets.emplace(s.problem_id, &s);
  }
  std::unordered_map<std::string_view, const AnnotationRecord*> notes;
  if (corpus.annotations) {
    for (const auto& a : *corpus.annotations) notes.emplace(a.problem_id, &a);
  }

  const std::size_t n = corpus.problems.size();
  std::vector<MetricVector> out(n);
  std::vector<std::exception_ptr> errors(n);

  auto score_one = [&](std::size_t i) {
    const Problem& problem = corpus.problems[i];
    const CompletionSet* set = nullptr;
    if (auto it = sets.find(problem.id); it != sets.end()) set = it->second;
    const AnnotationRecord* note = nullptr;
    if (auto it = notes.find(problem.id); it != notes.end()) note = it->second;

    std::optional<ModelSideScores> model;
    std::optional<CompletionSet> judged;
    std::vector<std::string> warnings;
    if (set && want_model) model = score_model_side(*set, corpus.manifest.k_completions);
    if (set && want_outcome && !set->traces.empty()) judged = judge_set(*set, problem, &warnings);
    if (!want_annotation) note = nullptr;

    MetricVector v = assemble(problem.id, model ? &*model : nullptr,
                              judged ? &*judged : nullptr, note);
    for (Metric m : kAllMetrics) {
      if (!wanted(m)) clear_metric(v, m);
    }
    if (!set && (want_model || want_outcome)) {
      for (Metric m : selected) {
        if (!is_annotation(m)) {
          v.provenance[std::string(metric_name(m))].warnings.push_back("no completion set");
        }
      }
    }
    if (judged) {
      for (const auto& w : warnings) v.provenance["acc"].warnings.push_back(w);
    }
    out[i] = std::move(v);
  };

  unsigned threads = request.threads == 0 ? std::thread::hardware_concurrency() : request.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        score_one(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  // Lowest-index failure wins so errors are independent of scheduling.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

Report build_report(std::span<const MetricVector> scores, std::size_t sample_size,
                    std::uint64_t seed) {
  if (sample_size > scores.size()) {
    throw Error(ErrorCode::kSampleTooLarge,
                "SampleTooLarge: sample of " + std::to_string(sample_size) +
                    " exceeds corpus of " + std::to_string(scores.size()));
  }
  std::vector<std::string> ids;
  ids.reserve(scores.size());
  for (const auto& v : scores) ids.push_back(v.problem_id);
  seeded_shuffle(ids, seed);
  ids.resize(sample_size);
  std::sort(ids.begin(), ids.end());

  Report report;
  report.seed = seed;
  report.corpus_size = scores.size();
  std::vector<const MetricVector*> sample;
  for (const auto& v : scores) {
    if (std::binary_search(ids.begin(), ids.end(), v.problem_id)) {
      sample.push_back(&v);
      report.sampled_ids.push_back(v.problem_id);
    }
  }
  for (Metric m : kAllMetrics) {
    CompensatedSum sum;
    MetricSummary summary;
    for (const MetricVector* v : sample) {
      if (auto x = v->get(m)) {
        sum.add(*x);
        ++summary.count;
      }
    }
    if (summary.count > 0) summary.mean = sum.value() / static_cast<double>(summary.count);
    report.metrics.emplace_back(m, summary);
  }
  return report;
}

std::string report_json(const Report& report) {
  nlohmann::ordered_json j;
  j["sample_size"] = report.sampled_ids.size();
  j["corpus_size"] = report.corpus_size;
  j["seed"] = report.seed;
  j["prng"] = kPrngName;
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  for (const auto& [m, s] : report.metrics) {
    nlohmann::ordered_json e;
    e["count"] = s.count;
    e["mean"] = s.mean ? nlohmann::ordered_json(*s.mean) : nlohmann::ordered_json(nullptr);
    metrics[std::string(metric_name(m))] = std::move(e);
  }
  j["metrics"] = std::move(metrics);
  j["sampled_ids"] = report.sampled_ids;
  return j.dump(2);
}

}  // namespace currikit
