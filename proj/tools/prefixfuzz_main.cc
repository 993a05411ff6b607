// Copyright 2026 The Prefixfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// prefixfuzz: failure-feedback fuzzing from the command line.
//
//   prefixfuzz list-subjects
//   prefixfuzz fuzz --subject hello --seed 1 --budget-validations 100000 --out out
//   prefixfuzz compare --subject json_subset --budget-validations 100000 --out cmp
//   prefixfuzz conformance --subject tinyc_subset
//   prefixfuzz replay --subject hello --corpus out/corpus

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "prefixfuzz/campaign.h"
#include "prefixfuzz/conformance.h"
#include "prefixfuzz/corpus.h"
#include "prefixfuzz/explorer.h"
#include "prefixfuzz/subjects.h"
#include "prefixfuzz/subprocess.h"
#include "prefixfuzz/symbol.h"

namespace prefixfuzz {
namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string subject;
  std::string command;
  int timeout_ms = 500;
  std::string alphabet = "bytes";
  int oapprox = 1;
  size_t max_len = 1000;
  std::optional<double> budget_seconds;
  std::optional<uint64_t> budget_validations;
  std::optional<uint64_t> seed;
  std::string out;
  std::string trace;
  std::string mode = "feedback";
  size_t baseline_max_len = 16;
  // conformance
  size_t samples = 1000;
  std::string golden_dir;
  // replay
  std::string corpus;
};

// The subject under test, in or out of process.
struct Target {
  const SubjectInfo *info = nullptr;
  std::unique_ptr<Validator> validator;
  std::unique_ptr<Executor> executor;
};

absl::StatusOr<Target> MakeTarget(const Flags &flags) {
  Target target;
  if (!flags.subject.empty()) {
    target.info = SubjectRegistry::BuiltIn().Find(flags.subject);
    if (target.info == nullptr) {
      return absl::NotFoundError(absl::StrCat(
          "unknown subject '", flags.subject, "'; see list-subjects"));
    }
    target.validator = target.info->make();
    target.executor = std::make_unique<InProcessExecutor>(*target.validator);
    return target;
  }
  if (flags.command.empty()) {
    return absl::InvalidArgumentError("one of --subject or --command is required");
  }
  if (flags.timeout_ms <= 0) {
    return absl::InvalidArgumentError("--timeout-ms must be positive");
  }
  std::vector<std::string> argv =
      absl::StrSplit(flags.command, absl::ByAnyChar(" \t"), absl::SkipEmpty());
  SubprocessOptions options;
  options.timeout = std::chrono::milliseconds(flags.timeout_ms);
  target.executor =
      std::make_unique<SubprocessExecutor>(std::move(argv), options);
  return target;
}

void AddTargetFlags(CLI::App *app, Flags &flags) {
  CLI::Option *subject =
      app->add_option("--subject", flags.subject, "built-in subject name");
  CLI::Option *command = app->add_option(
      "--command", flags.command,
      "subject program and arguments, split on whitespace; speaks the "
      "exit-code protocol");
  subject->excludes(command);
  app->add_option("--timeout-ms", flags.timeout_ms,
                  "per-execution limit for --command")
      ->check(CLI::PositiveNumber);
  app->add_option("--alphabet", flags.alphabet, "bytes, printable or file:PATH");
  app->add_option("--seed", flags.seed,
                  "root seed; a fresh one is chosen and printed if omitted");
}

void AddCampaignFlags(CLI::App *app, Flags &flags) {
  AddTargetFlags(app, flags);
  app->add_option("--oapprox", flags.oapprox, "longest repair symbol")
      ->check(CLI::Range(1, kMaxOverapproximation));
  app->add_option("--max-len", flags.max_len, "restart past this length")
      ->check(CLI::PositiveNumber);
  app->add_option("--budget-seconds", flags.budget_seconds, "wall-clock budget")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--budget-validations", flags.budget_validations,
                  "validation budget");
  app->add_option("--out", flags.out, "output directory")->required();
  app->add_option("--trace", flags.trace, "explorer trace file");
  app->add_option("--baseline-max-len", flags.baseline_max_len,
                  "longest random-baseline input")
      ->check(CLI::PositiveNumber);
}

uint64_t ResolveSeed(const Flags &flags) {
  if (flags.seed.has_value()) return *flags.seed;
  std::random_device device;
  const uint64_t seed = (uint64_t{device()} << 32) | device();
  std::cout << "seed: " << seed << "\n";
  return seed;
}

absl::StatusOr<CampaignConfig> MakeCampaignConfig(const Flags &flags,
                                                  uint64_t seed) {
  absl::StatusOr<ByteArray> alphabet = ParseAlphabet(flags.alphabet);
  if (!alphabet.ok()) return alphabet.status();
  CampaignConfig config;
  config.explorer.alphabet = *std::move(alphabet);
  config.explorer.oapprox = flags.oapprox;
  config.explorer.max_len = flags.max_len;
  config.seed = seed;
  config.budget_seconds = flags.budget_seconds;
  config.budget_validations = flags.budget_validations;
  config.baseline_max_len = flags.baseline_max_len;
  if (flags.mode == "feedback") {
    config.mode = CampaignMode::kFailureFeedback;
  } else if (flags.mode == "baseline") {
    config.mode = CampaignMode::kRandomBaseline;
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown --mode '", flags.mode, "'"));
  }
  config.corpus_dir = fs::path(flags.out) / "corpus";
  if (absl::Status s = ValidateCampaignConfig(config); !s.ok()) return s;
  return config;
}

// Report counts describe the files one run wrote, so a run never adds to an
// existing corpus.
absl::Status RequireFreshCorpus(const fs::path &dir) {
  std::error_code ec;
  if (fs::exists(dir, ec) && !fs::is_empty(dir, ec)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "corpus directory '", dir.string(),
        "' is not empty; choose a fresh --out"));
  }
  return absl::OkStatus();
}

// Re-validates every corpus file; fails unless all are Complete.
absl::Status Replay(Executor &executor, const fs::path &dir) {
  absl::StatusOr<std::vector<ByteArray>> inputs = ReadCorpus(dir);
  if (!inputs.ok()) return inputs.status();
  size_t failed = 0;
  for (const ByteArray &input : *inputs) {
    absl::StatusOr<Verdict> verdict = executor.Execute(input);
    if (!verdict.ok()) return verdict.status();
    if (!verdict->is_complete()) {
      ++failed;
      std::cerr << "replay: " << ContentHash(input) << " answered " << *verdict
                << "\n";
    }
  }
  std::cout << "replayed: " << inputs->size() << " failed: " << failed << "\n";
  if (failed > 0) {
    return absl::DataLossError(absl::StrCat(
        failed, " of ", inputs->size(), " corpus files did not re-validate"));
  }
  return absl::OkStatus();
}

absl::Status OpenTrace(const Flags &flags, std::ofstream &trace,
                       CampaignConfig &config) {
  if (flags.trace.empty()) return absl::OkStatus();
  trace.open(flags.trace, std::ios::trunc);
  if (!trace) {
    return absl::InternalError(
        absl::StrCat("cannot open trace file '", flags.trace, "'"));
  }
  config.trace = &trace;
  return absl::OkStatus();
}

absl::Status RunFuzz(const Flags &flags) {
  absl::StatusOr<Target> target = MakeTarget(flags);
  if (!target.ok()) return target.status();
  const uint64_t seed = ResolveSeed(flags);
  absl::StatusOr<CampaignConfig> config = MakeCampaignConfig(flags, seed);
  if (!config.ok()) return config.status();
  if (absl::Status s = RequireFreshCorpus(config->corpus_dir); !s.ok()) {
    return s;
  }
  std::ofstream trace;
  if (absl::Status s = OpenTrace(flags, trace, *config); !s.ok()) return s;

  absl::StatusOr<CampaignReport> report =
      RunCampaign(*target->executor, *config);
  if (!report.ok()) return report.status();
  if (absl::Status s = WriteReport(flags.out, *report); !s.ok()) return s;
  std::cout << FormatReportText(*report);
  std::cout << absl::StrFormat("elapsed_seconds: %.3f\n",
                               report->elapsed_seconds);
  return Replay(*target->executor, config->corpus_dir);
}

absl::Status RunCompare(const Flags &flags) {
  absl::StatusOr<Target> target = MakeTarget(flags);
  if (!target.ok()) return target.status();
  const uint64_t seed = ResolveSeed(flags);
  absl::StatusOr<CampaignConfig> config = MakeCampaignConfig(flags, seed);
  if (!config.ok()) return config.status();
  config->corpus_dir = flags.out;
  for (CampaignMode mode :
       {CampaignMode::kFailureFeedback, CampaignMode::kRandomBaseline}) {
    if (absl::Status s = RequireFreshCorpus(config->corpus_dir /
                                            std::string(ModeName(mode)) /
                                            "corpus");
        !s.ok()) {
      return s;
    }
  }
  std::ofstream trace;
  if (absl::Status s = OpenTrace(flags, trace, *config); !s.ok()) return s;

  absl::StatusOr<ModeComparison> cmp = CompareModes(*target->executor, *config);
  if (!cmp.ok()) return cmp.status();
  for (const CampaignReport *r : {&cmp->feedback, &cmp->baseline}) {
    const fs::path dir = fs::path(flags.out) / std::string(ModeName(r->mode));
    if (absl::Status s = WriteReport(dir, *r); !s.ok()) return s;
    std::cout << FormatReportText(*r);
    std::cout << absl::StrFormat("elapsed_seconds: %.3f\n\n", r->elapsed_seconds);
    if (absl::Status s = Replay(*target->executor, dir / "corpus"); !s.ok()) {
      return s;
    }
  }
  std::cout << absl::StrFormat("ratio: %.6f\n", cmp->ratio);
  return absl::OkStatus();
}

absl::Status RunConformance(const Flags &flags) {
  absl::StatusOr<Target> target = MakeTarget(flags);
  if (!target.ok()) return target.status();
  absl::StatusOr<ByteArray> alphabet = ParseAlphabet(flags.alphabet);
  if (!alphabet.ok()) return alphabet.status();
  std::vector<ByteArray> goldens;
  if (target->info != nullptr) goldens = target->info->goldens;
  if (!flags.golden_dir.empty()) {
    absl::StatusOr<std::vector<ByteArray>> extra = ReadCorpus(flags.golden_dir);
    if (!extra.ok()) return extra.status();
    goldens.insert(goldens.end(), extra->begin(), extra->end());
  }
  Rng rng(ResolveSeed(flags));
  std::vector<ByteArray> samples = goldens;
  std::vector<ByteArray> random =
      RandomPrefixSamples(goldens, *alphabet, flags.samples, rng);
  samples.insert(samples.end(), random.begin(), random.end());

  absl::StatusOr<ConformanceReport> report =
      CheckConformance(*target->executor, samples);
  if (!report.ok()) return report.status();
  for (const ConformanceViolation &v : report->violations) {
    std::cout << "violation: " << ToHex(v.prefix) << " answered "
              << v.prefix_verdict << " but " << ToHex(v.sample) << " answered "
              << v.sample_verdict << "\n";
  }
  std::cout << "samples: " << report->samples
            << " accepted: " << report->accepted_samples
            << " executions: " << report->executions
            << " violations: " << report->violations.size() << "\n";
  if (!report->ok()) {
    return absl::FailedPreconditionError(absl::StrCat(
        report->violations.size(), " prefix-consistency violations"));
  }
  return absl::OkStatus();
}

absl::Status RunReplay(const Flags &flags) {
  absl::StatusOr<Target> target = MakeTarget(flags);
  if (!target.ok()) return target.status();
  return Replay(*target->executor, flags.corpus);
}

void ListSubjects() {
  for (const SubjectInfo &info : SubjectRegistry::BuiltIn().subjects()) {
    std::cout << absl::StrFormat("%-20s %s\n", info.name, info.description);
  }
}

}  // namespace
}  // namespace prefixfuzz

int main(int argc, char **argv) {
  using namespace prefixfuzz;
  CLI::App app{"Failure-feedback fuzzer"};
  app.require_subcommand(1);
  Flags flags;

  CLI::App *fuzz = app.add_subcommand("fuzz", "run one campaign");
  AddCampaignFlags(fuzz, flags);
  fuzz->add_option("--mode", flags.mode, "feedback or baseline")
      ->check(CLI::IsMember({"feedback", "baseline"}));

  CLI::App *compare =
      app.add_subcommand("compare", "run both modes on one budget");
  AddCampaignFlags(compare, flags);

  CLI::App *conformance = app.add_subcommand(
      "conformance", "check prefix consistency on goldens and random samples");
  AddTargetFlags(conformance, flags);
  conformance->add_option("--samples", flags.samples,
                          "number of random samples");
  conformance->add_option("--golden-dir", flags.golden_dir,
                          "directory of extra accepted inputs");

  app.add_subcommand("list-subjects", "list built-in subjects");

  CLI::App *replay =
      app.add_subcommand("replay", "re-validate a corpus directory");
  AddTargetFlags(replay, flags);
  replay->add_option("--corpus", flags.corpus, "corpus directory")->required();

  CLI11_PARSE(app, argc, argv);

  absl::Status status;
  if (fuzz->parsed()) {
    status = RunFuzz(flags);
  } else if (compare->parsed()) {
    status = RunCompare(flags);
  } else if (conformance->parsed()) {
    status = RunConformance(flags);
  } else if (replay->parsed()) {
    status = RunReplay(flags);
  } else {
    ListSubjects();
  }
  if (!status.ok()) {
    std::cerr << "prefixfuzz: " << status.message() << "\n";
    return 1;
  }
  return 0;
}
