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

#include "prefixfuzz/campaign.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "json.hpp"
#include "prefixfuzz/corpus.h"
#include "prefixfuzz/symbol.h"

namespace prefixfuzz {
namespace {

using Clock = std::chrono::steady_clock;

class Budget {
 public:
  Budget(const CampaignConfig &config, const Executor &executor)
      : executor_(executor), start_executions_(executor.stats().executions) {
    if (config.budget_seconds.has_value()) {
      deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(
                                         *config.budget_seconds));
    }
    limit_ = config.budget_validations.value_or(
        std::numeric_limits<uint64_t>::max());
  }

  uint64_t used() const {
    return executor_.stats().executions - start_executions_;
  }
  uint64_t remaining() const { return limit_ - std::min(limit_, used()); }
  bool TimeUp() const { return deadline_.has_value() && Clock::now() >= *deadline_; }
  bool Spent() const { return remaining() == 0 || TimeUp(); }
  const std::optional<Clock::time_point> &deadline() const { return deadline_; }

 private:
  const Executor &executor_;
  uint64_t start_executions_;
  uint64_t limit_;
  std::optional<Clock::time_point> deadline_;
};

class CorpusWriter {
 public:
  CorpusWriter(const std::filesystem::path &dir, CampaignReport &report)
      : dir_(dir), report_(report) {}

  absl::Status Add(ByteSpan input, uint64_t validations) {
    absl::StatusOr<bool> stored = DedupAndStore(dir_, input);
    if (!stored.ok()) return stored.status();
    if (!*stored) return absl::OkStatus();
    ++report_.unique_valid;
    total_len_ += input.size();
    report_.max_len = std::max<uint64_t>(report_.max_len, input.size());
    report_.mean_len =
        static_cast<double>(total_len_) / static_cast<double>(report_.unique_valid);
    report_.growth.push_back({validations, report_.unique_valid});
    return absl::OkStatus();
  }

 private:
  std::filesystem::path dir_;
  CampaignReport &report_;
  uint64_t total_len_ = 0;
};

absl::Status RunFeedback(Executor &executor, const CampaignConfig &config,
                         Budget &budget, CorpusWriter &corpus,
                         CampaignReport &report) {
  for (uint64_t call = 0; !budget.Spent(); ++call) {
    ExplorerConfig explorer = config.explorer;
    explorer.rng_seed = DeriveSeed(config.seed, call);
    explorer.max_validations =
        std::min(explorer.max_validations, budget.remaining());
    explorer.deadline = budget.deadline();
    Rng rng(explorer.rng_seed);
    if (config.trace != nullptr) {
      *config.trace << "G " << call << " " << explorer.rng_seed << "\n";
    }
    GenerateResult progress;
    absl::StatusOr<GenerateResult> result =
        Generate(executor, explorer, rng, {}, config.trace, &progress);
    ++report.generate_calls;
    report.restarts += progress.restarts;
    if (result.ok()) {
      if (absl::Status s = corpus.Add(result->input, budget.used()); !s.ok()) {
        return s;
      }
      continue;
    }
    switch (result.status().code()) {
      case absl::StatusCode::kNotFound:
        ++report.search_exhausted;
        if (progress.validations <= 1) {
          // The subject rejects the empty input; every seed would agree.
          return absl::OkStatus();
        }
        break;
      case absl::StatusCode::kResourceExhausted:
        // A campaign budget stop is not an abandoned search.
        if (!budget.Spent()) ++report.abandoned;
        break;
      case absl::StatusCode::kDeadlineExceeded:
        return absl::OkStatus();
      default:
        return result.status();
    }
  }
  return absl::OkStatus();
}

absl::Status RunBaseline(Executor &executor, const CampaignConfig &config,
                         Budget &budget, CorpusWriter &corpus) {
  const ByteArray &alphabet = config.explorer.alphabet;
  Rng rng(config.seed);
  ByteArray input;
  while (!budget.Spent()) {
    input.resize(1 + rng.Uniform(config.baseline_max_len));
    for (uint8_t &b : input) b = alphabet[rng.Uniform(alphabet.size())];
    absl::StatusOr<Verdict> verdict = executor.Execute(input);
    if (!verdict.ok()) return verdict.status();
    if (verdict->is_complete()) {
      if (absl::Status s = corpus.Add(input, budget.used()); !s.ok()) return s;
    }
  }
  return absl::OkStatus();
}

}  // namespace

std::string_view ModeName(CampaignMode mode) {
  return mode == CampaignMode::kFailureFeedback ? "failure_feedback"
                                                : "random_baseline";
}

absl::Status ValidateCampaignConfig(const CampaignConfig &config) {
  if (absl::Status s = ValidateExplorerConfig(config.explorer); !s.ok()) {
    return s;
  }
  if (!config.budget_seconds.has_value() &&
      !config.budget_validations.has_value()) {
    return absl::InvalidArgumentError(
        "invalid config: set a wall-clock or validation budget");
  }
  if (config.budget_seconds.has_value() && !(*config.budget_seconds >= 0)) {
    return absl::InvalidArgumentError(
        "invalid config: budget_seconds must be non-negative");
  }
  if (config.corpus_dir.empty()) {
    return absl::InvalidArgumentError("invalid config: no corpus directory");
  }
  if (config.mode == CampaignMode::kRandomBaseline &&
      config.baseline_max_len < 1) {
    return absl::InvalidArgumentError(
        "invalid config: baseline_max_len must be positive");
  }
  return absl::OkStatus();
}

absl::StatusOr<CampaignReport> RunCampaign(Executor &executor,
                                           const CampaignConfig &config) {
  if (absl::Status s = ValidateCampaignConfig(config); !s.ok()) return s;
  std::error_code ec;
  std::filesystem::create_directories(config.corpus_dir, ec);
  if (ec) {
    return absl::InternalError(absl::StrCat("corpus I/O: cannot create ",
                                            config.corpus_dir.string(), ": ",
                                            ec.message()));
  }
  const Clock::time_point start = Clock::now();
  const ExecutionStats before = executor.stats();
  Budget budget(config, executor);

  CampaignReport report;
  report.subject = executor.name();
  report.mode = config.mode;
  report.seed = config.seed;
  CorpusWriter corpus(config.corpus_dir, report);
  absl::Status status =
      config.mode == CampaignMode::kFailureFeedback
          ? RunFeedback(executor, config, budget, corpus, report)
          : RunBaseline(executor, config, budget, corpus);
  if (!status.ok()) return status;

  const ExecutionStats &after = executor.stats();
  report.total_validations = budget.used();
  report.crashes =
      (after.crashes - before.crashes) + (after.panics - before.panics);
  report.timeouts = after.timeouts - before.timeouts;
  report.elapsed_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

absl::StatusOr<ModeComparison> CompareModes(Executor &executor,
                                            const CampaignConfig &config) {
  ModeComparison out;
  CampaignConfig feedback = config;
  feedback.mode = CampaignMode::kFailureFeedback;
  feedback.corpus_dir = config.corpus_dir / ModeName(feedback.mode) / "corpus";
  absl::StatusOr<CampaignReport> ff = RunCampaign(executor, feedback);
  if (!ff.ok()) return ff.status();
  out.feedback = *std::move(ff);

  CampaignConfig baseline = config;
  baseline.mode = CampaignMode::kRandomBaseline;
  baseline.trace = nullptr;
  baseline.corpus_dir = config.corpus_dir / ModeName(baseline.mode) / "corpus";
  absl::StatusOr<CampaignReport> rb = RunCampaign(executor, baseline);
  if (!rb.ok()) return rb.status();
  out.baseline = *std::move(rb);

  out.ratio = static_cast<double>(out.feedback.unique_valid) /
              static_cast<double>(std::max<uint64_t>(1, out.baseline.unique_valid));
  return out;
}

std::string FormatReportText(const CampaignReport &r) {
  std::string out = absl::StrCat("format: ", std::string(kReportFormat), "\n");
  absl::StrAppend(&out, "subject: ", r.subject, "\n", "mode: ",
                  std::string(ModeName(r.mode)), "\n", "seed: ", r.seed, "\n");
  absl::StrAppend(&out, "unique_valid: ", r.unique_valid, "\n", "max_len: ",
                  r.max_len, "\n");
  absl::StrAppendFormat(&out, "mean_len: %.6f\n", r.mean_len);
  absl::StrAppend(&out, "total_validations: ", r.total_validations, "\n",
                  "crashes: ", r.crashes, "\n", "timeouts: ", r.timeouts, "\n",
                  "restarts: ", r.restarts, "\n", "generate_calls: ",
                  r.generate_calls, "\n", "search_exhausted: ",
                  r.search_exhausted, "\n", "abandoned: ", r.abandoned, "\n");
  out += "growth:";
  for (const GrowthPoint &g : r.growth) {
    absl::StrAppend(&out, " ", g.validations, ":", g.unique_valid);
  }
  out += "\n";
  return out;
}

std::string FormatReportJson(const CampaignReport &r) {
  nlohmann::ordered_json j;
  j["format"] = kReportFormat;
  j["subject"] = r.subject;
  j["mode"] = ModeName(r.mode);
  j["seed"] = r.seed;
  j["unique_valid"] = r.unique_valid;
  j["max_len"] = r.max_len;
  j["mean_len"] = r.mean_len;
  j["total_validations"] = r.total_validations;
  j["crashes"] = r.crashes;
  j["timeouts"] = r.timeouts;
  j["restarts"] = r.restarts;
  j["generate_calls"] = r.generate_calls;
  j["search_exhausted"] = r.search_exhausted;
  j["abandoned"] = r.abandoned;
  j["growth"] = nlohmann::ordered_json::array();
  for (const GrowthPoint &g : r.growth) {
    j["growth"].push_back({g.validations, g.unique_valid});
  }
  return j.dump(2) + "\n";
}

absl::Status WriteReport(const std::filesystem::path &dir,
                         const CampaignReport &report) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::InternalError(absl::StrCat(
        "corpus I/O: cannot create ", dir.string(), ": ", ec.message()));
  }
  const std::pair<const char *, std::string> files[] = {
      {"report.txt", FormatReportText(report)},
      {"report.json", FormatReportJson(report)}};
  for (const auto &[name, text] : files) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
      return absl::InternalError(
          absl::StrCat("corpus I/O: cannot write ", (dir / name).string()));
    }
  }
  return absl::OkStatus();
}

}  // namespace prefixfuzz
