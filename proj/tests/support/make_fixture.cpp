// Writes the 12-problem end-to-end fixture (problems, traces, annotations)
// into the directory given as argv[1]. Output depends only on the constants
// below.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "currikit/ingest.hpp"
#include "currikit/oracle.hpp"
#include "currikit/rng.hpp"

using namespace currikit;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixture <out-dir>\n";
    return 2;
  }
  const std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir);

  struct Item {
    const char* question;
    const char* answer;
    const char* wrong;
  };
  const Item items[] = {
      {"What is 6 * 7?", "42", "43"},
      {"Simplify 6/8.", "3/4", "2/3"},
      {"What is 1/2 as a decimal?", "0.5", "0.25"},
      {"How many grams are in 1 kilogram?", "1,000", "100"},
      {"What is 15% of 40?", "6", "4"},
      {"Solve x + 3 = 1.", "-2", "2"},
      {"What is 1/3 to 7 decimal places?", "\\frac{1}{3}", "0.3"},
      {"Compute 12 squared.", "144", "124"},
      {"What fraction of 20 is 5?", "1/4", "1/5"},
      {"What is 2.5 * 4?", "10", "12"},
      {"Capital of France?", "Paris", "Lyon"},
      {"What is 9/3?", "3", "6"},
  };
  constexpr int kCompletions = 8;

  std::vector<Problem> problems;
  std::vector<CompletionSet> sets;
  std::vector<AnnotationRecord> notes;
  SplitMix64 rng(20240601);
  for (int i = 0; i < 12; ++i) {
    char id[8];
    std::snprintf(id, sizeof id, "p%02d", i + 1);
    problems.push_back({id, items[i].question, items[i].answer,
                        std::string(i % 2 ? "gsm8k" : "math")});
    CompletionSet set{id, {}, std::nullopt};
    // Problem i is answered correctly by roughly (12 - i) / 12 of its samples.
    for (int c = 0; c < kCompletions; ++c) {
      oracle::SyntheticTraceSpec spec;
      spec.problem_id = id;
      spec.completion_index = c;
      spec.token_count = 3 + static_cast<int>(rng.below(10));
      for (int t = 0; t < spec.token_count; ++t) {
        spec.candidate_counts.push_back(1 + static_cast<int>(rng.below(5)));
      }
      spec.profile = c == 0 && i % 4 == 0 ? oracle::EntropyProfile::kUniform
                                          : oracle::EntropyProfile::kRandom;
      spec.seed = rng.next();
      const bool correct = rng.below(12) < static_cast<std::uint64_t>(12 - i);
      std::string answer = correct ? items[i].answer : items[i].wrong;
      if (correct && c % 3 == 1) answer = "\\boxed{" + answer + "}";
      if (c == 7 && i == 5) answer = "";
      spec.final_answer_text = answer;
      set.traces.push_back(oracle::generate_trace(spec));
    }
    sets.push_back(std::move(set));
    notes.push_back({id, 1 + static_cast<std::int64_t>(rng.below(8)),
                     1 + static_cast<std::int64_t>(rng.below(5)),
                     1 + static_cast<std::int64_t>(rng.below(5))});
  }

  std::ofstream p(dir / "problems.jsonl", std::ios::binary);
  write_problems(problems, p);
  std::ofstream t(dir / "traces.jsonl", std::ios::binary);
  write_traces(sets, t);
  std::ofstream a(dir / "annotations.jsonl", std::ios::binary);
  write_annotations(notes, a);
  std::cout << "wrote fixture to " << dir << "\n";
  return 0;
}
