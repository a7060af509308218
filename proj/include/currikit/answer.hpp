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
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "currikit/core.hpp"

namespace currikit {

using Rational = boost::multiprecision::cpp_rational;

enum class AnswerKind { kNumeric, kSymbolicText };

/// A final answer reduced to a comparable form. Numeric answers carry an
/// exact rational; `from_decimal` marks values written with a decimal point,
/// which are compared with an absolute tolerance instead of exactly.
struct NormalizedAnswer {
  std::string canonical_text;
  std::optional<Rational> numeric_value;
  AnswerKind kind = AnswerKind::kSymbolicText;
  bool from_decimal = false;

  friend bool operator==(const NormalizedAnswer&, const NormalizedAnswer&) = default;
};

/// Absolute tolerance applied when either side came from a decimal literal.
inline const Rational kDecimalTolerance{1, 1000000};

/// Strips answer wrappers (\boxed{}, \fbox{}, $...$, \(...\), \[...\],
/// trailing periods), lowercases, and parses integers, decimals, a/b
/// fractions, \frac{a}{b} and percentages into exact rationals. Anything
/// else is kept as text with whitespace runs collapsed to one space. Throws
/// kEmptyAnswer when nothing is left.
NormalizedAnswer normalize(std::string_view raw);

bool equivalent(const NormalizedAnswer& a, const NormalizedAnswer& b);

/// Fills `set.correctness` against `reference.reference_answer`. Answers that
/// fail to normalize are judged incorrect and reported through `warnings`.
CompletionSet judge_set(CompletionSet set, const Problem& reference,
                        std::vector<std::string>* warnings = nullptr);

}  // namespace currikit
