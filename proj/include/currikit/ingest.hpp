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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "currikit/core.hpp"

namespace currikit {

inline constexpr std::string_view kSchemaVersion = "1";

struct CorpusManifest {
  std::string schema_version{kSchemaVersion};
  int k_completions = kDefaultCompletions;
  int k_topk = kDefaultTopK;
  double temperature = kDefaultTemperature;
  std::map<std::string, std::size_t> counts;          // file role -> records
  std::map<std::string, std::string> content_digest;  // file role -> sha256 hex

  friend bool operator==(const CorpusManifest&, const CorpusManifest&) = default;
};

/// Throws kRangeViolation unless k_topk >= 1, k_completions >= 1 and
/// temperature > 0.
void check_invariants(const CorpusManifest& m);

/// Ingestion failure tied to a 1-based input line.
class IngestError : public Error {
 public:
  IngestError(ErrorCode code, std::size_t line, const std::string& reason)
      : Error(code, "line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

struct Diagnostic {
  Severity severity = Severity::kViolation;
  ErrorCode code = ErrorCode::kMalformedRecord;
  std::size_t line = 0;
  std::string problem_id;
  std::string message;
};

/// Collects every rejected line (as a violation) and every repaired record
/// (as a warning). Readers that take a Diagnostics never throw on bad data.
struct Diagnostics {
  std::vector<Diagnostic> items;

  bool has_errors() const noexcept;
  /// Throws the first violation as an IngestError, if any.
  void raise_first() const;
};

// Readers. The overloads without a Diagnostics argument throw the first
// violation as an IngestError; warnings are discarded.
std::vector<Problem> read_problems(std::istream& in, Diagnostics& diag);
std::vector<Problem> read_problems(std::istream& in);

/// Groups traces into completion sets in order of first appearance of each
/// problem_id; traces inside a set are ordered by completion_index. Unsorted
/// candidate lists are repaired with a warning. Correctness is left unset.
std::vector<CompletionSet> read_traces(std::istream& in, const CorpusManifest& manifest,
                                       Diagnostics& diag);
std::vector<CompletionSet> read_traces(std::istream& in, const CorpusManifest& manifest);

std::vector<AnnotationRecord> read_annotations(std::istream& in, Diagnostics& diag);
std::vector<AnnotationRecord> read_annotations(std::istream& in);

std::vector<MetricVector> read_scores(std::istream& in, Diagnostics& diag);
std::vector<MetricVector> read_scores(std::istream& in);

CorpusManifest read_manifest(std::istream& in);

// Writers. Every writer emits one LF-terminated JSON object per record with
// a fixed key order, so identical input produces identical bytes.
std::string to_json_line(const Problem& p);
std::string to_json_line(const GenerationTrace& t);
std::string to_json_line(const AnnotationRecord& a);
std::string to_json_line(const MetricVector& v);

std::size_t write_problems(std::span<const Problem> problems, std::ostream& out);
std::size_t write_traces(std::span<const CompletionSet> sets, std::ostream& out);
std::size_t write_annotations(std::span<const AnnotationRecord> records, std::ostream& out);
/// Throws kInvalidArgument on an empty list and kSinkFailure when the stream
/// goes bad.
std::size_t write_scores(std::span<const MetricVector> scores, std::ostream& out);
/// Per-problem metric provenance, one JSON line per vector.
std::size_t write_provenance(std::span<const MetricVector> scores, std::ostream& out);
void write_manifest(const CorpusManifest& m, std::ostream& out);

std::string sha256_hex(std::string_view bytes);
/// Reads a whole file; throws kIo when it cannot be opened.
std::string read_file(const std::filesystem::path& path);
/// Writes bytes to a file; throws kIo on failure.
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace currikit
