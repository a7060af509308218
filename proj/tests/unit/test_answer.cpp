#include "doctest.h"

#include <fstream>
#include <sstream>

#include "currikit/answer.hpp"
#include "currikit/rng.hpp"
#include "support/rational_oracle.hpp"

using namespace currikit;

namespace {

std::string value_text(const NormalizedAnswer& a) {
  const auto& v = *a.numeric_value;
  auto num = boost::multiprecision::numerator(v);
  auto den = boost::multiprecision::denominator(v);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

struct Case {
  std::string answer, reference;
  bool expected;
};

std::vector<Case> load_cases() {
  std::ifstream in(CURRIKIT_TEST_DATA "/answer_cases.tsv");
  REQUIRE(in);
  std::vector<Case> cases;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto t1 = line.find('\t');
    auto t2 = line.find('\t', t1 + 1);
    cases.push_back({line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1), line.substr(t2 + 1) == "1"});
  }
  return cases;
}

}  // namespace

TEST_CASE("normalize examples") {
  auto boxed = normalize("\\boxed{42}");
  CHECK(boxed.kind == AnswerKind::kNumeric);
  CHECK(*boxed.numeric_value == 42);
  CHECK(boxed.canonical_text == "42");

  auto grouped = normalize(" 1,000 ");
  CHECK(*grouped.numeric_value == 1000);
  CHECK_FALSE(grouped.from_decimal);

  auto frac = normalize("3/4");
  CHECK(*frac.numeric_value == Rational(3, 4));
  CHECK_FALSE(frac.from_decimal);
  CHECK(frac.canonical_text == "3/4");

  auto pct = normalize("12.5%");
  CHECK(*pct.numeric_value == Rational(1, 8));
  CHECK(pct.from_decimal);
  CHECK(pct.canonical_text == "0.125");

  auto text = normalize("  $\\text{Hello World}$. ");
  CHECK(text.kind == AnswerKind::kSymbolicText);
  CHECK(text.canonical_text == "hello world");

  CHECK_THROWS_AS(normalize("   "), Error);
  CHECK_THROWS_AS(normalize("\\boxed{}"), Error);
  CHECK_THROWS_AS(normalize("$ . $"), Error);
}

TEST_CASE("equivalent examples") {
  CHECK(equivalent(normalize("0.5"), normalize("1/2")));
  CHECK_FALSE(equivalent(normalize("42"), normalize("43")));
  // |0.3333333 - 1/3| = 1/30000000, well inside the tolerance.
  CHECK(Rational(1, 3) - Rational(3333333, 10000000) == Rational(1, 30000000));
  CHECK(equivalent(normalize("0.3333333"), normalize("1/3")));
  // Exact values never use the tolerance.
  CHECK_FALSE(equivalent(normalize("1000000/1000001"), normalize("1")));
  CHECK(equivalent(normalize("1/3"), normalize("2/6")));
}

TEST_CASE("judge_set") {
  Problem p{"p1", "q", "\\boxed{1/2}", {}};
  CompletionSet set{"p1", {}, std::nullopt};
  for (int i = 0; i < 20; ++i) {
    std::string answer = i < 15 ? (i % 2 ? "0.5" : "\\boxed{1/2}") : "7";
    if (i == 19) answer = "";
    set.traces.push_back(GenerationTrace{"p1", i, 0.7, {TokenRecord(-0.1, {-0.1})}, answer});
  }
  std::vector<std::string> warnings;
  auto judged = judge_set(set, p, &warnings);
  REQUIRE(judged.judged());
  CHECK(std::count(judged.correctness->begin(), judged.correctness->end(), true) == 15);
  CHECK((*judged.correctness)[1]);
  CHECK_FALSE((*judged.correctness)[19]);
  CHECK(warnings.size() == 1);
}

TEST_CASE("normalize is idempotent and equivalent is reflexive and symmetric") {
  SplitMix64 rng(11);
  const std::vector<std::string> atoms = {"\\boxed{", "}", "$", "-", "+", "1", "0", "7", ".",
                                          "/", ",", "%", "x", " ", "3", "\\frac{", "}{", "2"};
  std::vector<NormalizedAnswer> seen;
  for (int i = 0; i < 3000; ++i) {
    std::string raw;
    const auto len = 1 + rng.below(8);
    for (std::uint64_t j = 0; j < len; ++j) raw += atoms[rng.below(atoms.size())];
    NormalizedAnswer a;
    try {
      a = normalize(raw);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kEmptyAnswer);
      continue;
    }
    INFO("raw = '" << raw << "' canonical = '" << a.canonical_text << "'");
    CHECK(normalize(a.canonical_text) == a);
    CHECK(equivalent(a, a));
    if (!seen.empty()) {
      const auto& b = seen[rng.below(seen.size())];
      CHECK(equivalent(a, b) == equivalent(b, a));
    }
    seen.push_back(a);
  }
}

TEST_CASE("exact comparison is transitive") {
  std::vector<NormalizedAnswer> xs;
  for (const char* s : {"1/2", "2/4", "3/6", "50%", "\\frac{4}{8}", "1/3", "2/6"}) {
    xs.push_back(normalize(s));
  }
  for (const auto& a : xs)
    for (const auto& b : xs)
      for (const auto& c : xs)
        if (equivalent(a, b) && equivalent(b, c)) CHECK(equivalent(a, c));
}

TEST_CASE("50-case fixture agrees with the GMP rational oracle") {
  const auto cases = load_cases();
  REQUIRE(cases.size() == 50);
  for (const auto& c : cases) {
    INFO("answer='" << c.answer << "' reference='" << c.reference << "'");
    CHECK(oracle_answers::equivalent(c.answer, c.reference) == c.expected);
    CHECK(equivalent(normalize(c.answer), normalize(c.reference)) == c.expected);
    for (const auto& raw : {c.answer, c.reference}) {
      auto expected = oracle_answers::parse(raw);
      auto got = normalize(raw);
      CHECK((got.kind == AnswerKind::kNumeric) == expected.numeric);
      if (expected.numeric) {
        CHECK(value_text(got) == expected.value);
        CHECK(got.from_decimal == expected.decimal);
      } else {
        CHECK(got.canonical_text == expected.text);
      }
    }
  }
}
