#include "doctest.h"

#include <cmath>

#include "currikit/metrics.hpp"
#include "currikit/oracle.hpp"

using namespace currikit;
using namespace currikit::oracle;

namespace {

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

TEST_CASE("generate_trace profiles") {
  auto uniform = generate_trace({2, {5, 5}, EntropyProfile::kUniform, 0});
  CHECK(std::abs(sle(uniform) - 2 * std::log2(5.0)) <= 1e-12);

  auto det = generate_trace({4, {}, EntropyProfile::kDeterministic, 0});
  CHECK(tlp(det) == 1.0);
  CHECK(slp(det) == 1.0);

  CHECK(generate_trace({30, {}, EntropyProfile::kRandom, 7}) ==
        generate_trace({30, {}, EntropyProfile::kRandom, 7}));
  CHECK_FALSE(generate_trace({30, {}, EntropyProfile::kRandom, 7}) ==
              generate_trace({30, {}, EntropyProfile::kRandom, 8}));

  CHECK_THROWS_AS(generate_trace({0, {}, EntropyProfile::kRandom, 0}), Error);
  CHECK_THROWS_AS(generate_trace({2, {6, 1}, EntropyProfile::kRandom, 0}), Error);
}

TEST_CASE("oracle agrees with the production metrics") {
  auto uniform = generate_trace({6, {}, EntropyProfile::kUniform, 0});
  CHECK(close_rel(*oracle_metric(uniform, Metric::kTle), tle(uniform), 1e-14));

  for (const auto& t : fuzz_traces(200, 31)) {
    const auto m = compute_trace_metrics(t);
    CHECK(close_rel(*oracle_metric(t, Metric::kSlp), m.slp, 1e-10));
    CHECK(close_rel(*oracle_metric(t, Metric::kTlp), m.tlp, 1e-10));
    CHECK(close_rel(*oracle_metric(t, Metric::kSle), m.sle, 1e-10));
    CHECK(close_rel(*oracle_metric(t, Metric::kTle), m.tle, 1e-10));
    auto olg = oracle_metric(t, Metric::kLg);
    REQUIRE(olg.has_value() == m.lg.has_value());
    if (olg) CHECK(close_rel(*olg, *m.lg, 1e-10));
  }
}

TEST_CASE("LG is absent on single-candidate traces in both paths") {
  auto t = generate_trace({5, {1, 1, 1, 1, 1}, EntropyProfile::kRandom, 3});
  CHECK_FALSE(oracle_metric(t, Metric::kLg));
  CHECK_FALSE(lg(t));
}

TEST_CASE("oracle_metric rejects outcome metrics") {
  auto t = generate_trace({1, {}, EntropyProfile::kUniform, 0});
  CHECK_THROWS_AS(oracle_metric(t, Metric::kAcc), Error);
}

TEST_CASE("oracle_vacc") {
  CHECK(oracle_vacc(std::vector<bool>(7, true)) == 0.0);
  CHECK(oracle_vacc({true, false}) == 0.25);
  CHECK_THROWS_AS(oracle_vacc({}), Error);
}
