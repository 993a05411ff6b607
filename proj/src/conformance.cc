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

#include "prefixfuzz/conformance.h"

#include <string>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"

namespace prefixfuzz {

absl::StatusOr<ConformanceReport> CheckConformance(
    Executor &executor, std::span<const ByteArray> samples) {
  if (samples.empty()) {
    return absl::InvalidArgumentError("conformance check needs samples");
  }
  ConformanceReport report;
  report.samples = samples.size();

  absl::flat_hash_map<std::string, Verdict> memo;
  auto verdict_of = [&](ByteSpan input) -> absl::StatusOr<Verdict> {
    std::string key = AsString(input);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    absl::StatusOr<Verdict> verdict = executor.Execute(input);
    if (!verdict.ok()) return verdict.status();
    memo.emplace(std::move(key), *verdict);
    return *verdict;
  };

  absl::flat_hash_set<std::string> reported;
  for (const ByteArray &sample : samples) {
    absl::StatusOr<Verdict> sample_verdict = verdict_of(sample);
    if (!sample_verdict.ok()) return sample_verdict.status();
    if (sample_verdict->is_incorrect()) continue;
    ++report.accepted_samples;
    for (size_t len = 0; len < sample.size(); ++len) {
      ByteSpan prefix(sample.data(), len);
      absl::StatusOr<Verdict> verdict = verdict_of(prefix);
      if (!verdict.ok()) return verdict.status();
      if (!verdict->is_incorrect()) continue;
      if (!reported.insert(AsString(prefix)).second) continue;
      report.violations.push_back(
          {sample, *sample_verdict, ByteArray(prefix.begin(), prefix.end()),
           *verdict});
    }
  }
  report.executions = memo.size();
  return report;
}

std::vector<ByteArray> RandomPrefixSamples(std::span<const ByteArray> goldens,
                                           const ByteArray &alphabet,
                                           size_t count, Rng &rng) {
  std::vector<ByteArray> samples;
  samples.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    ByteArray sample;
    size_t tail = 1 + rng.Uniform(8);
    if (!goldens.empty()) {
      const ByteArray &golden = goldens[rng.Uniform(goldens.size())];
      sample.assign(golden.begin(),
                    golden.begin() + rng.Uniform(golden.size() + 1));
      tail = rng.Uniform(5);
    }
    for (size_t j = 0; j < tail && !alphabet.empty(); ++j) {
      sample.push_back(alphabet[rng.Uniform(alphabet.size())]);
    }
    samples.push_back(std::move(sample));
  }
  return samples;
}

}  // namespace prefixfuzz
