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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "currikit/core.hpp"
#include "currikit/ingest.hpp"

namespace currikit {

struct CorpusPaths {
  std::filesystem::path problems;
  std::optional<std::filesystem::path> traces;
  std::optional<std::filesystem::path> annotations;
};

/// Everything read from disk for one run. Ingestion problems are kept in
/// `diagnostics` instead of aborting the load.
struct Corpus {
  CorpusManifest manifest;
  std::vector<Problem> problems;
  std::optional<std::vector<CompletionSet>> sets;
  std::optional<std::vector<AnnotationRecord>> annotations;
  Diagnostics diagnostics;
};

/// Reads the input files. Throws kIo when a file cannot be opened; malformed
/// records become diagnostics. `config` supplies K, k and temperature; its
/// counts and digests are filled from the files read.
Corpus load_corpus(const CorpusPaths& paths, const CorpusManifest& config);

/// Ingestion diagnostics plus validate_corpus findings.
ValidationReport validate(const Corpus& corpus, bool permissive);

std::string validation_report_json(const ValidationReport& report);

struct ScoreRequest {
  /// Metrics to compute; empty selects every metric whose inputs are loaded.
  /// acc and vacc are always emitted together.
  std::vector<Metric> metrics;
  /// Worker threads; 0 means hardware concurrency.
  unsigned threads = 1;
};

/// Selection after defaulting and acc/vacc pairing. Throws
/// kMissingMetricSource naming the missing input for any metric that cannot
/// be computed from what was loaded.
std::vector<Metric> resolve_metrics(const Corpus& corpus, std::span<const Metric> requested);

/// One MetricVector per problem in corpus order. Output is identical for any
/// thread count.
std::vector<MetricVector> score_corpus(const Corpus& corpus, const ScoreRequest& request);

struct MetricSummary {
  std::size_t count = 0;
  std::optional<double> mean;
};

struct Report {
  std::uint64_t seed = 0;
  std::size_t corpus_size = 0;
  std::vector<std::string> sampled_ids;  // corpus order
  std::vector<std::pair<Metric, MetricSummary>> metrics;
};

inline constexpr std::size_t kDefaultSampleSize = 200;

/// Averages every metric over a seeded sample of `sample_size` problems.
/// Throws kSampleTooLarge when the sample exceeds the corpus.
Report build_report(std::span<const MetricVector> scores, std::size_t sample_size,
                    std::uint64_t seed);

std::string report_json(const Report& report);

}  // namespace currikit
