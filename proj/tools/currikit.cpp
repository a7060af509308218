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

// currikit command-line front end. Talks to the library only through the C
// API in currikit/currikit.h.
//
// Exit codes: 0 success, 1 domain violation, 2 environment or I/O failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "currikit/currikit.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitEnvironment = 2;

struct Options {
  std::string problems;
  std::string traces;
  std::string annotations;
  std::string scores;
  std::string out = ".";
  std::string metrics;
  std::string strategy;
  std::string tier = "low";
  std::string tier_rule = "equal";
  std::uint64_t seed = 0;
  int k = 20;
  int topk = 5;
  double temperature = 0.7;
  std::size_t sample_size = 200;
  unsigned repeat = 1;
  bool permissive = false;
};

struct CorpusDeleter {
  void operator()(ck_corpus* c) const { ck_corpus_free(c); }
};
struct ScoresDeleter {
  void operator()(ck_scores* s) const { ck_scores_free(s); }
};
struct PlanDeleter {
  void operator()(ck_plan* p) const { ck_plan_free(p); }
};
using CorpusPtr = std::unique_ptr<ck_corpus, CorpusDeleter>;
using ScoresPtr = std::unique_ptr<ck_scores, ScoresDeleter>;
using PlanPtr = std::unique_ptr<ck_plan, PlanDeleter>;

int exit_code(ck_status status) {
  switch (status) {
    case CK_OK: return kExitOk;
    case CK_ERR_IO:
    case CK_ERR_INTERNAL:
      return kExitEnvironment;
    default: return kExitDomain;
  }
}

int report_failure(const char* what, ck_status status) {
  std::cerr << "currikit " << what << ": " << ck_status_name(status) << ": " << ck_last_error()
            << "\n";
  return exit_code(status);
}

unsigned thread_cap() {
  const char* env = std::getenv("CURRIKIT_THREADS");
  if (!env || !*env) return 0;
  try {
    long n = std::stol(env);
    return n > 0 ? static_cast<unsigned>(n) : 0;
  } catch (const std::exception&) {
    std::cerr << "currikit: ignoring invalid CURRIKIT_THREADS=" << env << "\n";
    return 0;
  }
}

std::string out_path(const Options& o, const char* name) {
  return (std::filesystem::path(o.out) / name).string();
}

std::string scores_path(const Options& o) {
  return o.scores.empty() ? out_path(o, "scores.jsonl") : o.scores;
}

ck_status open_corpus(const Options& o, CorpusPtr& corpus) {
  ck_corpus_config config;
  ck_corpus_config_init(&config);
  config.problems_path = o.problems.c_str();
  config.traces_path = o.traces.empty() ? nullptr : o.traces.c_str();
  config.annotations_path = o.annotations.empty() ? nullptr : o.annotations.c_str();
  config.k_completions = o.k;
  config.k_topk = o.topk;
  config.temperature = o.temperature;
  ck_corpus* raw = nullptr;
  ck_status status = ck_corpus_open(&config, &raw);
  corpus.reset(raw);
  return status;
}

ck_status open_scores(const Options& o, ScoresPtr& scores) {
  ck_scores* raw = nullptr;
  ck_status status = ck_scores_read(scores_path(o).c_str(), &raw);
  scores.reset(raw);
  return status;
}

std::error_code make_out_dir(const Options& o) {
  std::error_code ec;
  std::filesystem::create_directories(o.out, ec);
  return ec;
}

int cmd_validate(const Options& o) {
  CorpusPtr corpus;
  if (auto s = open_corpus(o, corpus); s != CK_OK) return report_failure("validate", s);
  if (auto ec = make_out_dir(o)) {
    std::cerr << "currikit validate: cannot create " << o.out << ": " << ec.message() << "\n";
    return kExitEnvironment;
  }
  std::size_t violations = 0;
  std::size_t warnings = 0;
  const std::string report = out_path(o, "validation.json");
  ck_status s = ck_corpus_validate(corpus.get(), o.permissive, report.c_str(), &violations,
                                   &warnings);
  std::cout << "validate: " << violations << " violation(s), " << warnings
            << " warning(s); report " << report << "\n";
  if (s == CK_ERR_VALIDATION) {
    std::cerr << "currikit validate: " << ck_last_error() << "\n";
    return kExitDomain;
  }
  return s == CK_OK ? kExitOk : report_failure("validate", s);
}

int cmd_score(const Options& o) {
  CorpusPtr corpus;
  if (auto s = open_corpus(o, corpus); s != CK_OK) return report_failure("score", s);
  ck_scores* raw = nullptr;
  ck_status s = ck_score(corpus.get(), o.metrics.c_str(), thread_cap(), o.permissive, &raw);
  ScoresPtr scores(raw);
  if (s != CK_OK) return report_failure("score", s);
  if (s = ck_scores_write(scores.get(), corpus.get(), o.out.c_str()); s != CK_OK) {
    return report_failure("score", s);
  }
  std::cout << "score: " << ck_scores_count(scores.get()) << " problem(s) -> "
            << out_path(o, "scores.jsonl") << "\n";
  return kExitOk;
}

std::optional<ck_strategy> parse_strategy(const std::string& name) {
  if (name == "fcl") return CK_STRATEGY_FCL;
  if (name == "rcl") return CK_STRATEGY_RCL;
  if (name == "sgc") return CK_STRATEGY_SGC;
  if (name == "gfc") return CK_STRATEGY_GFC;
  if (name == "grc") return CK_STRATEGY_GRC;
  if (name == "shuf") return CK_STRATEGY_SHUF;
  return std::nullopt;
}

std::optional<ck_tier> parse_tier(const std::string& name) {
  if (name == "low") return CK_TIER_LOW;
  if (name == "medium") return CK_TIER_MEDIUM;
  if (name == "high") return CK_TIER_HIGH;
  return std::nullopt;
}

std::optional<ck_tier_rule> parse_rule(const std::string& name) {
  if (name == "equal") return CK_TIER_RULE_EQUAL;
  if (name == "quantile") return CK_TIER_RULE_QUANTILE;
  return std::nullopt;
}

int cmd_order(const Options& o) {
  auto strategy = parse_strategy(o.strategy);
  if (!strategy) {
    std::cerr << "currikit order: UnknownStrategy(" << o.strategy << ")\n";
    return kExitDomain;
  }
  auto tier = parse_tier(o.tier);
  auto rule = parse_rule(o.tier_rule);
  if (!tier || !rule) {
    std::cerr << "currikit order: unknown --tier or --tier-rule\n";
    return kExitDomain;
  }
  ScoresPtr scores;
  if (auto s = open_scores(o, scores); s != CK_OK) return report_failure("order", s);

  ck_plan_config config;
  ck_plan_config_init(&config);
  config.strategy = *strategy;
  config.metric = o.metrics.c_str();
  config.seed = o.seed;
  config.tier = *tier;
  config.tier_rule = *rule;
  ck_plan* raw = nullptr;
  ck_status s = ck_plan_build(scores.get(), &config, &raw);
  PlanPtr plan(raw);
  if (s != CK_OK) return report_failure("order", s);
  s = ck_plan_emit(plan.get(), o.problems.c_str(), scores_path(o).c_str(), o.out.c_str(),
                   o.repeat);
  if (s != CK_OK) return report_failure("order", s);
  std::cout << "order: " << o.strategy << " over " << ck_plan_size(plan.get())
            << " problem(s) -> " << out_path(o, "ordered_train.jsonl") << "\n";
  return kExitOk;
}

int cmd_tier(const Options& o) {
  auto rule = parse_rule(o.tier_rule);
  if (!rule) {
    std::cerr << "currikit tier: unknown --tier-rule " << o.tier_rule << "\n";
    return kExitDomain;
  }
  ScoresPtr scores;
  if (auto s = open_scores(o, scores); s != CK_OK) return report_failure("tier", s);
  if (auto ec = make_out_dir(o)) {
    std::cerr << "currikit tier: cannot create " << o.out << ": " << ec.message() << "\n";
    return kExitEnvironment;
  }
  const std::string path = out_path(o, "tiers.json");
  if (auto s = ck_tiers_write(scores.get(), o.metrics.c_str(), *rule, path.c_str()); s != CK_OK) {
    return report_failure("tier", s);
  }
  std::cout << "tier: " << path << "\n";
  return kExitOk;
}

int cmd_report(const Options& o) {
  ScoresPtr scores;
  if (auto s = open_scores(o, scores); s != CK_OK) return report_failure("report", s);
  if (auto ec = make_out_dir(o)) {
    std::cerr << "currikit report: cannot create " << o.out << ": " << ec.message() << "\n";
    return kExitEnvironment;
  }
  const std::string path = out_path(o, "report.json");
  if (auto s = ck_report_write(scores.get(), o.sample_size, o.seed, path.c_str()); s != CK_OK) {
    return report_failure("report", s);
  }
  std::cout << "report: " << path << "\n";
  return kExitOk;
}

}  // namespace

// Orderings always sort by raw metric value. This table says which end of
// each metric is the harder one; nothing is flipped automatically.
constexpr const char* kPolarity = R"(Metric polarity (raw values are never sign-flipped):
  slp   sequence perplexity         higher = less certain (harder)
  tlp   mean token perplexity       higher = harder
  lg    mean top-1/top-2 margin     higher = more confident (easier)
  sle   summed entropy, bits        higher = harder
  tle   mean entropy, bits          higher = harder
  acc   fraction correct            higher = easier
  vacc  p(1-p)                      peaks at acc = 0.5
  rs    distinct logical operations higher = harder
  sc    notational richness, 1-5    higher = harder
  cd    comprehension difficulty    higher = harder)";

int main(int argc, char** argv) {
  CLI::App app{"currikit: difficulty scoring and curriculum ordering for training problems"};
  app.require_subcommand(1);
  app.footer(kPolarity);
  Options o;

  auto corpus_flags = [&](CLI::App* cmd) {
    cmd->add_option("--problems", o.problems, "problems.jsonl")->required();
    cmd->add_option("--traces", o.traces, "traces.jsonl");
    cmd->add_option("--annotations", o.annotations, "annotations.jsonl");
    cmd->add_option("--k", o.k, "completions per problem")->capture_default_str();
    cmd->add_option("--topk", o.topk, "top-k candidates per position")->capture_default_str();
    cmd->add_option("--temperature", o.temperature, "sampling temperature of the traces")
        ->capture_default_str();
    cmd->add_flag("--permissive", o.permissive, "treat K mismatches as warnings");
  };
  auto out_flag = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out, "output directory")->capture_default_str();
  };
  auto scores_flag = [&](CLI::App* cmd) {
    cmd->add_option("--scores", o.scores, "scores.jsonl (default: <out>/scores.jsonl)");
  };

  auto* validate = app.add_subcommand("validate", "check inputs; writes validation.json");
  corpus_flags(validate);
  out_flag(validate);

  auto* score = app.add_subcommand("score", "compute metrics; writes scores.jsonl, manifest.json");
  corpus_flags(score);
  out_flag(score);
  score->add_option("--metrics", o.metrics, "comma-separated metrics (default: all available)");

  auto* order = app.add_subcommand("order", "build a curriculum; writes ordered_train.jsonl, plan.json");
  order->add_option("--problems", o.problems, "problems.jsonl")->required();
  scores_flag(order);
  out_flag(order);
  order->add_option("--strategy", o.strategy, "fcl|rcl|sgc|gfc|grc|shuf")->required();
  order->add_option("--metrics,--metric", o.metrics, "metric to order by");
  order->add_option("--tier", o.tier, "low|medium|high (sgc)")->capture_default_str();
  order->add_option("--tier-rule", o.tier_rule, "equal|quantile")->capture_default_str();
  order->add_option("--seed", o.seed, "shuffle seed")->capture_default_str();
  order->add_option("--repeat", o.repeat, "emit the ordering this many times")
      ->capture_default_str();

  auto* tier = app.add_subcommand("tier", "partition into low/medium/high; writes tiers.json");
  scores_flag(tier);
  out_flag(tier);
  tier->add_option("--metrics,--metric", o.metrics, "metric to partition by")->required();
  tier->add_option("--tier-rule", o.tier_rule, "equal|quantile")->capture_default_str();

  auto* report = app.add_subcommand("report", "sampled per-metric means; writes report.json");
  scores_flag(report);
  out_flag(report);
  report->add_option("--sample-size", o.sample_size, "problems to sample")->capture_default_str();
  report->add_option("--seed", o.seed, "sampling seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitEnvironment;
  }

  if (*validate) return cmd_validate(o);
  if (*score) return cmd_score(o);
  if (*order) return cmd_order(o);
  if (*tier) return cmd_tier(o);
  if (*report) return cmd_report(o);
  return kExitEnvironment;
}
