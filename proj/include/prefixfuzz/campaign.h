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

// Budgeted fuzzing campaigns that fill a deduplicated corpus directory.

#ifndef PREFIXFUZZ_CAMPAIGN_H_
#define PREFIXFUZZ_CAMPAIGN_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "prefixfuzz/executor.h"
#include "prefixfuzz/explorer.h"

namespace prefixfuzz {

enum class CampaignMode { kFailureFeedback, kRandomBaseline };

std::string_view ModeName(CampaignMode mode);

struct CampaignConfig {
  // alphabet, oapprox and max_len apply to both modes. rng_seed is ignored;
  // `seed` drives the campaign.
  ExplorerConfig explorer;
  uint64_t seed = 0;
  // At least one budget must be set. Zero runs an empty campaign.
  std::optional<double> budget_seconds;
  std::optional<uint64_t> budget_validations;
  std::filesystem::path corpus_dir;
  CampaignMode mode = CampaignMode::kFailureFeedback;
  size_t baseline_max_len = 16;
  // Receives the explorer trace of every generate call, each preceded by a
  // "G <call_index> <seed>" line.
  std::ostream *trace = nullptr;
};

// Points where unique_valid grew.
struct GrowthPoint {
  uint64_t validations = 0;
  uint64_t unique_valid = 0;
};

struct CampaignReport {
  std::string subject;
  CampaignMode mode = CampaignMode::kFailureFeedback;
  uint64_t seed = 0;
  uint64_t unique_valid = 0;
  uint64_t max_len = 0;
  double mean_len = 0;
  uint64_t total_validations = 0;
  // Child processes killed by a signal plus in-process validators that threw.
  uint64_t crashes = 0;
  uint64_t timeouts = 0;
  uint64_t restarts = 0;
  // FailureFeedback: generate calls made, and how many ended without input.
  uint64_t generate_calls = 0;
  uint64_t search_exhausted = 0;
  uint64_t abandoned = 0;
  std::vector<GrowthPoint> growth;
  // Not serialized, so reports of identical runs are identical files.
  double elapsed_seconds = 0;
};

absl::Status ValidateCampaignConfig(const CampaignConfig &config);

// Runs until a budget trips. Errors: kInvalidArgument for a bad config,
// kInternal for corpus I/O, kAborted for a subject that changed its verdict;
// executor errors propagate.
absl::StatusOr<CampaignReport> RunCampaign(Executor &executor,
                                           const CampaignConfig &config);

struct ModeComparison {
  CampaignReport feedback;
  CampaignReport baseline;
  // feedback.unique_valid / max(1, baseline.unique_valid).
  double ratio = 0;
};

// Runs both modes with `config`'s budgets, into
// corpus_dir/failure_feedback/corpus and corpus_dir/random_baseline/corpus.
absl::StatusOr<ModeComparison> CompareModes(Executor &executor,
                                            const CampaignConfig &config);

inline constexpr std::string_view kReportFormat = "prefixfuzz-report/1";

// "key: value" lines.
std::string FormatReportText(const CampaignReport &report);
std::string FormatReportJson(const CampaignReport &report);

// Writes report.txt and report.json into `dir`.
absl::Status WriteReport(const std::filesystem::path &dir,
                         const CampaignReport &report);

}  // namespace prefixfuzz

#endif  // PREFIXFUZZ_CAMPAIGN_H_
