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

#ifndef PREFIXFUZZ_CONFORMANCE_H_
#define PREFIXFUZZ_CONFORMANCE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "prefixfuzz/bytes.h"
#include "prefixfuzz/executor.h"
#include "prefixfuzz/symbol.h"
#include "prefixfuzz/verdict.h"

namespace prefixfuzz {

// A proper prefix answered Incorrect although a longer input it prefixes was
// accepted as Complete or Incomplete.
struct ConformanceViolation {
  ByteArray sample;
  Verdict sample_verdict = Verdict::Incomplete();
  ByteArray prefix;
  Verdict prefix_verdict = Verdict::Incorrect();
};

struct ConformanceReport {
  size_t samples = 0;
  // Samples answered Complete or Incomplete, i.e. those whose prefixes were
  // checked.
  size_t accepted_samples = 0;
  // Distinct inputs executed, samples included.
  size_t executions = 0;
  std::vector<ConformanceViolation> violations;

  bool ok() const { return violations.empty(); }
};

// Checks the prefix-consistency contract: every proper prefix of an input
// answered Complete or Incomplete must itself be answered Complete or
// Incomplete. Each distinct input is executed once. Fails with
// kInvalidArgument on an empty sample list; executor errors propagate.
absl::StatusOr<ConformanceReport> CheckConformance(
    Executor &executor, std::span<const ByteArray> samples);

// `count` random samples: a random prefix of a random golden followed by up
// to 4 random alphabet bytes, or, when `goldens` is empty, 1 to 8 random
// alphabet bytes.
std::vector<ByteArray> RandomPrefixSamples(std::span<const ByteArray> goldens,
                                           const ByteArray &alphabet,
                                           size_t count, Rng &rng);

}  // namespace prefixfuzz

#endif  // PREFIXFUZZ_CONFORMANCE_H_
