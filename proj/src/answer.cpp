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

#include "currikit/answer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <regex>

namespace currikit {

namespace {

using boost::multiprecision::cpp_int;

std::string_view trim(std::string_view s) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Index of the brace closing the one at `open`, or npos.
std::size_t matching_brace(std::string_view s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '{') ++depth;
    if (s[i] == '}' && --depth == 0) return i;
  }
  return std::string_view::npos;
}

bool strip_command(std::string_view& s, std::string_view command) {
  if (!s.starts_with(command)) return false;
  std::size_t open = command.size() - 1;
  if (matching_brace(s, open) != s.size() - 1) return false;
  s = s.substr(command.size(), s.size() - command.size() - 1);
  return true;
}

bool strip_pair(std::string_view& s, std::string_view open, std::string_view close) {
  if (s.size() < open.size() + close.size()) return false;
  if (!s.starts_with(open) || !s.ends_with(close)) return false;
  s = s.substr(open.size(), s.size() - open.size() - close.size());
  return true;
}

std::string_view strip_wrappers(std::string_view s) {
  static constexpr std::array<std::string_view, 4> kCommands = {
      "\\boxed{", "\\fbox{", "\\text{", "\\mathrm{"};
  bool changed = true;
  while (changed) {
    changed = false;
    s = trim(s);
    while (!s.empty() && s.back() == '.') {
      s.remove_suffix(1);
      changed = true;
    }
    s = trim(s);
    if (strip_pair(s, "$$", "$$") || strip_pair(s, "$", "$") ||
        strip_pair(s, "\\(", "\\)") || strip_pair(s, "\\[", "\\]")) {
      changed = true;
      continue;
    }
    for (auto cmd : kCommands) {
      if (strip_command(s, cmd)) {
        changed = true;
        break;
      }
    }
  }
  return s;
}

// Decimal digits only; cpp_int's string constructor would read a leading 0
// as an octal prefix.
cpp_int parse_digits(std::string_view digits) {
  cpp_int n = 0;
  for (char c : digits) {
    if (c == '+' || c == '-') continue;
    n = n * 10 + (c - '0');
  }
  return (!digits.empty() && digits.front() == '-') ? cpp_int(-n) : n;
}

cpp_int pow10(std::size_t n) {
  cpp_int p = 1;
  for (std::size_t i = 0; i < n; ++i) p *= 10;
  return p;
}

// Exact decimal expansion of a rational whose denominator has only factors
// of 2 and 5. Always contains a decimal point so the text re-parses as a
// decimal literal.
std::string decimal_text(const Rational& v) {
  cpp_int num = boost::multiprecision::numerator(v);
  cpp_int den = boost::multiprecision::denominator(v);
  std::string sign = num < 0 ? "-" : "";
  if (num < 0) num = -num;
  cpp_int whole = num / den;
  cpp_int rem = num % den;
  std::string frac;
  while (rem != 0) {
    rem *= 10;
    frac.push_back(static_cast<char>('0' + static_cast<int>(rem / den)));
    rem %= den;
  }
  if (frac.empty()) frac = "0";
  return sign + whole.str() + "." + frac;
}

std::string rational_text(const Rational& v) {
  cpp_int num = boost::multiprecision::numerator(v);
  cpp_int den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

struct ParsedNumber {
  Rational value;
  bool decimal = false;
};

std::optional<ParsedNumber> parse_number(std::string s) {
  static const std::regex kThousands(R"(^[+-]?\d{1,3}(,\d{3})+(\.\d+)?$)");
  static const std::regex kInteger(R"(^([+-]?)(\d+)$)");
  static const std::regex kDecimal(R"(^([+-]?)(\d*)\.(\d*)$)");
  static const std::regex kFraction(R"(^([+-]?)(\d+)/(\d+)$)");
  static const std::regex kTexFraction(R"(^([+-]?)\\[dt]?frac\{([+-]?\d+)\}\{([+-]?\d+)\}$)");

  bool percent = false;
  if (s.ends_with("\\%")) {
    s.resize(s.size() - 2);
    percent = true;
  } else if (s.ends_with("%")) {
    s.pop_back();
    percent = true;
  }
  if (percent) s = std::string(trim(s));
  if (std::regex_match(s, kThousands)) std::erase(s, ',');

  std::smatch m;
  std::optional<ParsedNumber> out;
  if (std::regex_match(s, m, kInteger)) {
    cpp_int n = parse_digits(m[2].str());
    out = ParsedNumber{Rational(m[1] == "-" ? cpp_int(-n) : n), false};
  } else if (std::regex_match(s, m, kDecimal) && (m[2].length() + m[3].length()) > 0) {
    std::string digits = m[2].str() + m[3].str();
    cpp_int n = parse_digits(digits);
    Rational v(n, pow10(static_cast<std::size_t>(m[3].length())));
    out = ParsedNumber{m[1] == "-" ? Rational(-v) : v, true};
  } else if (std::regex_match(s, m, kFraction) || std::regex_match(s, m, kTexFraction)) {
    cpp_int n = parse_digits(m[2].str());
    cpp_int d = parse_digits(m[3].str());
    if (d == 0) return std::nullopt;
    Rational v(n, d);
    out = ParsedNumber{m[1] == "-" ? Rational(-v) : v, false};
  }
  if (out && percent) out->value /= 100;
  return out;
}

}  // namespace

NormalizedAnswer normalize(std::string_view raw) {
  std::string s(strip_wrappers(raw));
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s.empty()) throw Error(ErrorCode::kEmptyAnswer, "empty answer");

  NormalizedAnswer out;
  if (auto num = parse_number(s)) {
    out.kind = AnswerKind::kNumeric;
    out.numeric_value = num->value;
    out.from_decimal = num->decimal;
    out.canonical_text = num->decimal ? decimal_text(num->value) : rational_text(num->value);
    return out;
  }
  std::string collapsed;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      if (!collapsed.empty() && collapsed.back() != ' ') collapsed.push_back(' ');
    } else {
      collapsed.push_back(static_cast<char>(c));
    }
  }
  s = std::move(collapsed);
  out.kind = AnswerKind::kSymbolicText;
  out.canonical_text = std::move(s);
  return out;
}

bool equivalent(const NormalizedAnswer& a, const NormalizedAnswer& b) {
  if (a.kind == AnswerKind::kNumeric && b.kind == AnswerKind::kNumeric) {
    if (a.from_decimal || b.from_decimal) {
      Rational diff = *a.numeric_value - *b.numeric_value;
      if (diff < 0) diff = -diff;
      return diff <= kDecimalTolerance;
    }
    return *a.numeric_value == *b.numeric_value;
  }
  return a.canonical_text == b.canonical_text;
}

CompletionSet judge_set(CompletionSet set, const Problem& reference,
                        std::vector<std::string>* warnings) {
  auto warn = [&](std::string msg) {
    if (warnings) warnings->push_back(std::move(msg));
  };
  std::vector<bool> flags(set.traces.size(), false);
  std::optional<NormalizedAnswer> ref;
  try {
    ref = normalize(reference.reference_answer);
  } catch (const Error&) {
    warn(reference.id + ": reference answer is empty; all completions judged incorrect");
  }
  if (ref) {
    for (std::size_t s = 0; s < set.traces.size(); ++s) {
      try {
        flags[s] = equivalent(normalize(set.traces[s].final_answer_text), *ref);
      } catch (const Error&) {
        warn(reference.id + ": completion " +
             std::to_string(set.traces[s].completion_index) +
             " has an empty answer; judged incorrect");
      }
    }
  }
  set.correctness = std::move(flags);
  return set;
}

}  // namespace currikit
