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

#include "currikit/ingest.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <memory>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace currikit {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void check_invariants(const CorpusManifest& m) {
  if (m.k_topk < 1) throw Error(ErrorCode::kRangeViolation, "k_topk must be >= 1");
  if (m.k_completions < 1) {
    throw Error(ErrorCode::kRangeViolation, "k_completions must be >= 1");
  }
  if (!(m.temperature > 0.0) || !std::isfinite(m.temperature)) {
    throw Error(ErrorCode::kRangeViolation, "temperature must be > 0");
  }
}

bool Diagnostics::has_errors() const noexcept {
  return std::any_of(items.begin(), items.end(), [](const Diagnostic& d) {
    return d.severity == Severity::kViolation;
  });
}

void Diagnostics::raise_first() const {
  for (const auto& d : items) {
    if (d.severity == Severity::kViolation) throw IngestError(d.code, d.line, d.message);
  }
}

namespace {

// Field accessors. Each throws IngestError naming the field.
class Record {
 public:
  Record(const json& j, std::size_t line) : j_(j), line_(line) {}

  const json& require(const char* key) const {
    auto it = j_.find(key);
    if (it == j_.end()) fail(std::string("missing field ") + key);
    return *it;
  }

  bool has(const char* key) const {
    auto it = j_.find(key);
    return it != j_.end() && !it->is_null();
  }

  std::string string(const char* key) const {
    const json& v = require(key);
    if (!v.is_string()) fail(std::string("field ") + key + " must be a string");
    return v.get<std::string>();
  }

  std::int64_t integer(const char* key) const { return as_integer(require(key), key); }

  std::int64_t as_integer(const json& v, const char* key) const {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
      double d = v.get<double>();
      if (std::isfinite(d) && d == std::trunc(d) && std::abs(d) < 9.0e15) {
        return static_cast<std::int64_t>(d);
      }
    }
    fail(std::string("field ") + key + " must be an integer");
  }

  double real(const char* key) const { return as_real(require(key), key); }

  // Numbers pass through; the strings NaN/Infinity/-Infinity map to the
  // corresponding non-finite values so they are reported as such downstream.
  double as_real(const json& v, const char* key) const {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      const auto& s = v.get_ref<const std::string&>();
      if (s == "NaN" || s == "nan") return std::nan("");
      if (s == "Infinity" || s == "inf") return HUGE_VAL;
      if (s == "-Infinity" || s == "-inf") return -HUGE_VAL;
    }
    fail(std::string("field ") + key + " must be a number");
  }

  std::optional<double> optional_real(const char* key) const {
    if (!has(key)) return std::nullopt;
    return real(key);
  }

  std::optional<std::int64_t> optional_integer(const char* key) const {
    if (!has(key)) return std::nullopt;
    return integer(key);
  }

  [[noreturn]] void fail(const std::string& reason,
                         ErrorCode code = ErrorCode::kMalformedRecord) const {
    throw IngestError(code, line_, reason);
  }

  std::size_t line() const noexcept { return line_; }
  const json& raw() const noexcept { return j_; }

 private:
  const json& j_;
  std::size_t line_;
};

// Calls `fn(record)` for every non-blank line. Lines that fail to parse or
// that `fn` rejects become violations in `diag`.
template <typename Fn>
void for_each_record(std::istream& in, Diagnostics& diag, Fn&& fn) {
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      diag.items.push_back({Severity::kViolation, ErrorCode::kMalformedRecord, line, "",
                            "invalid JSON"});
      continue;
    }
    if (!j.is_object()) {
      diag.items.push_back({Severity::kViolation, ErrorCode::kMalformedRecord, line, "",
                            "record is not a JSON object"});
      continue;
    }
    std::string pid;
    if (auto it = j.find("problem_id"); it != j.end() && it->is_string()) {
      pid = it->get<std::string>();
    } else if (auto id = j.find("id"); id != j.end() && id->is_string()) {
      pid = id->get<std::string>();
    }
    try {
      fn(Record(j, line));
    } catch (const IngestError& e) {
      diag.items.push_back({Severity::kViolation, e.code(), line, pid, e.reason()});
    } catch (const Error& e) {
      diag.items.push_back({Severity::kViolation, e.code(), line, pid, e.what()});
    }
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failure");
}

Problem parse_problem(const Record& r) {
  Problem p;
  p.id = r.string("id");
  p.question = r.string("question");
  p.reference_answer = r.string("reference_answer");
  if (r.has("source_tag")) p.source_tag = r.string("source_tag");
  if (p.id.empty()) r.fail("field id is empty");
  if (p.question.empty()) r.fail("field question is empty");
  return p;
}

GenerationTrace parse_trace(const Record& r, const CorpusManifest& manifest,
                            Diagnostics& diag) {
  GenerationTrace t;
  t.problem_id = r.string("problem_id");
  t.completion_index = static_cast<int>(r.integer("completion_index"));
  t.temperature = r.real("temperature");
  t.final_answer_text = r.string("final_answer_text");
  const json& tokens = r.require("tokens");
  if (!tokens.is_array()) r.fail("field tokens must be an array");
  if (tokens.empty()) {
    r.fail("empty trace for " + t.problem_id + " completion " +
               std::to_string(t.completion_index),
           ErrorCode::kEmptyTrace);
  }
  std::size_t reordered = 0;
  t.tokens.reserve(tokens.size());
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    const json& tok = tokens[pos];
    const std::string where = t.problem_id + " position " + std::to_string(pos);
    if (!tok.is_object()) r.fail("token " + std::to_string(pos) + " is not an object");
    Record tr(tok, r.line());
    double chosen = tr.real("chosen_logprob");
    const json& topk_json = tr.require("topk_logprobs");
    if (!topk_json.is_array()) r.fail("topk_logprobs must be an array at " + where);
    std::vector<double> topk;
    topk.reserve(topk_json.size());
    for (const json& v : topk_json) topk.push_back(tr.as_real(v, "topk_logprobs"));
    auto count = tr.integer("candidate_count");
    if (count != static_cast<std::int64_t>(topk.size())) {
      r.fail("candidate_count " + std::to_string(count) + " != " +
                 std::to_string(topk.size()) + " candidates at " + where,
             ErrorCode::kCandidateCount);
    }
    if (count < 1 || count > manifest.k_topk) {
      r.fail("candidate_count " + std::to_string(count) + " outside [1," +
                 std::to_string(manifest.k_topk) + "] at " + where,
             ErrorCode::kCandidateCount);
    }
    try {
      t.tokens.emplace_back(chosen, std::move(topk));
    } catch (const Error& e) {
      r.fail(std::string(e.what()) + " at " + where, e.code());
    }
    if (t.tokens.back().was_reordered()) ++reordered;
  }
  if (reordered > 0) {
    diag.items.push_back({Severity::kWarning, ErrorCode::kMalformedRecord, r.line(),
                          t.problem_id,
                          "sorted unsorted topk_logprobs at " + std::to_string(reordered) +
                              " position(s)"});
  }
  if (t.temperature != manifest.temperature) {
    diag.items.push_back({Severity::kWarning, ErrorCode::kRangeViolation, r.line(),
                          t.problem_id, "temperature differs from manifest"});
  }
  return t;
}

AnnotationRecord parse_annotation(const Record& r) {
  AnnotationRecord a;
  a.problem_id = r.string("problem_id");
  a.rs = r.integer("rs");
  a.sc = r.integer("sc");
  a.cd = r.integer("cd");
  if (a.rs < 0) r.fail("RangeViolation(rs," + std::to_string(a.rs) + ")", ErrorCode::kRangeViolation);
  if (a.sc < 1 || a.sc > 5) {
    r.fail("RangeViolation(sc," + std::to_string(a.sc) + ")", ErrorCode::kRangeViolation);
  }
  if (a.cd < 1 || a.cd > 5) {
    r.fail("RangeViolation(cd," + std::to_string(a.cd) + ")", ErrorCode::kRangeViolation);
  }
  return a;
}

MetricVector parse_score(const Record& r) {
  MetricVector v;
  v.problem_id = r.string("problem_id");
  v.slp = r.optional_real("slp");
  v.tlp = r.optional_real("tlp");
  v.lg = r.optional_real("lg");
  v.sle = r.optional_real("sle");
  v.tle = r.optional_real("tle");
  v.acc = r.optional_real("acc");
  v.vacc = r.optional_real("vacc");
  v.rs = r.optional_integer("rs");
  v.sc = r.optional_integer("sc");
  v.cd = r.optional_integer("cd");
  check_invariants(v);
  return v;
}

template <typename T>
std::vector<T> strict(std::vector<T> records, const Diagnostics& diag) {
  diag.raise_first();
  return records;
}

void put(ordered_json& j, const char* key, const std::optional<double>& v) {
  j[key] = v ? json(*v) : json(nullptr);
}

void put(ordered_json& j, const char* key, const std::optional<std::int64_t>& v) {
  j[key] = v ? json(*v) : json(nullptr);
}

std::string dump_line(const ordered_json& j) {
  std::string s = j.dump(-1, ' ', false, json::error_handler_t::strict);
  s.push_back('\n');
  return s;
}

}  // namespace

std::vector<Problem> read_problems(std::istream& in, Diagnostics& diag) {
  std::vector<Problem> out;
  std::unordered_set<std::string> seen;
  for_each_record(in, diag, [&](const Record& r) {
    Problem p = parse_problem(r);
    if (!seen.insert(p.id).second) r.fail("DuplicateId(" + p.id + ")", ErrorCode::kDuplicateId);
    out.push_back(std::move(p));
  });
  return out;
}

std::vector<Problem> read_problems(std::istream& in) {
  Diagnostics diag;
  auto records = read_problems(in, diag);
  return strict(std::move(records), diag);
}

std::vector<CompletionSet> read_traces(std::istream& in, const CorpusManifest& manifest,
                                       Diagnostics& diag) {
  check_invariants(manifest);
  std::vector<CompletionSet> sets;
  std::unordered_map<std::string, std::size_t> index;
  for_each_record(in, diag, [&](const Record& r) {
    GenerationTrace t = parse_trace(r, manifest, diag);
    auto [it, inserted] = index.emplace(t.problem_id, sets.size());
    if (inserted) {
      sets.push_back(CompletionSet{t.problem_id, {}, std::nullopt});
    }
    sets[it->second].traces.push_back(std::move(t));
  });
  for (auto& s : sets) {
    std::stable_sort(s.traces.begin(), s.traces.end(),
                     [](const GenerationTrace& a, const GenerationTrace& b) {
                       return a.completion_index < b.completion_index;
                     });
  }
  return sets;
}

std::vector<CompletionSet> read_traces(std::istream& in, const CorpusManifest& manifest) {
  Diagnostics diag;
  auto records = read_traces(in, manifest, diag);
  return strict(std::move(records), diag);
}

std::vector<AnnotationRecord> read_annotations(std::istream& in, Diagnostics& diag) {
  std::vector<AnnotationRecord> out;
  for_each_record(in, diag, [&](const Record& r) { out.push_back(parse_annotation(r)); });
  return out;
}

std::vector<AnnotationRecord> read_annotations(std::istream& in) {
  Diagnostics diag;
  auto records = read_annotations(in, diag);
  return strict(std::move(records), diag);
}

std::vector<MetricVector> read_scores(std::istream& in, Diagnostics& diag) {
  std::vector<MetricVector> out;
  std::unordered_set<std::string> seen;
  for_each_record(in, diag, [&](const Record& r) {
    MetricVector v = parse_score(r);
    if (!seen.insert(v.problem_id).second) {
      r.fail("DuplicateId(" + v.problem_id + ")", ErrorCode::kDuplicateId);
    }
    out.push_back(std::move(v));
  });
  return out;
}

std::vector<MetricVector> read_scores(std::istream& in) {
  Diagnostics diag;
  auto records = read_scores(in, diag);
  return strict(std::move(records), diag);
}

CorpusManifest read_manifest(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error&) {
    throw Error(ErrorCode::kMalformedRecord, "manifest is not valid JSON");
  }
  CorpusManifest m;
  try {
    m.schema_version = j.at("schema_version").get<std::string>();
    m.k_completions = j.at("k_completions").get<int>();
    m.k_topk = j.at("k_topk").get<int>();
    m.temperature = j.at("temperature").get<double>();
    if (j.contains("counts")) m.counts = j["counts"].get<std::map<std::string, std::size_t>>();
    if (j.contains("content_digest")) {
      m.content_digest = j["content_digest"].get<std::map<std::string, std::string>>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, std::string("manifest: ") + e.what());
  }
  check_invariants(m);
  return m;
}

std::string to_json_line(const Problem& p) {
  ordered_json j;
  j["id"] = p.id;
  j["question"] = p.question;
  j["reference_answer"] = p.reference_answer;
  if (p.source_tag) j["source_tag"] = *p.source_tag;
  return dump_line(j);
}

std::string to_json_line(const GenerationTrace& t) {
  ordered_json j;
  j["problem_id"] = t.problem_id;
  j["completion_index"] = t.completion_index;
  j["temperature"] = t.temperature;
  j["final_answer_text"] = t.final_answer_text;
  ordered_json tokens = ordered_json::array();
  for (const auto& tok : t.tokens) {
    ordered_json o;
    o["chosen_logprob"] = tok.chosen_logprob();
    o["topk_logprobs"] =
        std::vector<double>(tok.topk_logprobs().begin(), tok.topk_logprobs().end());
    o["candidate_count"] = tok.candidate_count();
    tokens.push_back(std::move(o));
  }
  j["tokens"] = std::move(tokens);
  return dump_line(j);
}

std::string to_json_line(const AnnotationRecord& a) {
  ordered_json j;
  j["problem_id"] = a.problem_id;
  j["rs"] = a.rs;
  j["sc"] = a.sc;
  j["cd"] = a.cd;
  return dump_line(j);
}

std::string to_json_line(const MetricVector& v) {
  ordered_json j;
  j["problem_id"] = v.problem_id;
  put(j, "slp", v.slp);
  put(j, "tlp", v.tlp);
  put(j, "lg", v.lg);
  put(j, "sle", v.sle);
  put(j, "tle", v.tle);
  put(j, "acc", v.acc);
  put(j, "vacc", v.vacc);
  put(j, "rs", v.rs);
  put(j, "sc", v.sc);
  put(j, "cd", v.cd);
  return dump_line(j);
}

namespace {

template <typename Range>
std::size_t write_lines(const Range& records, std::ostream& out) {
  std::size_t n = 0;
  for (const auto& r : records) {
    out << to_json_line(r);
    ++n;
  }
  if (!out) throw Error(ErrorCode::kSinkFailure, "write failed");
  return n;
}

}  // namespace

std::size_t write_problems(std::span<const Problem> problems, std::ostream& out) {
  return write_lines(problems, out);
}

std::size_t write_traces(std::span<const CompletionSet> sets, std::ostream& out) {
  std::size_t n = 0;
  for (const auto& s : sets) n += write_lines(s.traces, out);
  return n;
}

std::size_t write_annotations(std::span<const AnnotationRecord> records, std::ostream& out) {
  return write_lines(records, out);
}

std::size_t write_scores(std::span<const MetricVector> scores, std::ostream& out) {
  if (scores.empty()) throw Error(ErrorCode::kInvalidArgument, "no scores to write");
  return write_lines(scores, out);
}

std::size_t write_provenance(std::span<const MetricVector> scores, std::ostream& out) {
  for (const auto& v : scores) {
    ordered_json j;
    j["problem_id"] = v.problem_id;
    ordered_json prov = ordered_json::object();
    for (const auto& [name, p] : v.provenance) {
      ordered_json e;
      e["n_completions_used"] = p.n_completions_used;
      e["warnings"] = p.warnings;
      prov[name] = std::move(e);
    }
    j["provenance"] = std::move(prov);
    out << dump_line(j);
  }
  if (!out) throw Error(ErrorCode::kSinkFailure, "write failed");
  return scores.size();
}

void write_manifest(const CorpusManifest& m, std::ostream& out) {
  ordered_json j;
  j["schema_version"] = m.schema_version;
  j["k_completions"] = m.k_completions;
  j["k_topk"] = m.k_topk;
  j["temperature"] = m.temperature;
  j["counts"] = ordered_json::object();
  for (const auto& [role, n] : m.counts) j["counts"][role] = n;
  j["content_digest"] = ordered_json::object();
  for (const auto& [role, d] : m.content_digest) j["content_digest"][role] = d;
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kSinkFailure, "write failed");
}

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw Error(ErrorCode::kInvalidArgument, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

}  // namespace currikit
