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

// On-disk corpus: one raw file per input, named by the lowercase hex SHA-256
// of its contents.

#ifndef PREFIXFUZZ_CORPUS_H_
#define PREFIXFUZZ_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "prefixfuzz/bytes.h"

namespace prefixfuzz {

std::string ContentHash(ByteSpan input);

// Writes `input` into `dir` (created if needed) unless a file with the same
// contents is already there. Returns whether a file was written.
absl::StatusOr<bool> DedupAndStore(const std::filesystem::path &dir,
                                   ByteSpan input);

// Corpus files of `dir`, ordered by file name. Files not named like a
// content hash are skipped.
absl::StatusOr<std::vector<ByteArray>> ReadCorpus(
    const std::filesystem::path &dir);

struct CorpusSummary {
  size_t unique = 0;
  size_t max_len = 0;
  double mean_len = 0;
};

// Over distinct inputs.
CorpusSummary Summarize(std::span<const ByteArray> inputs);

}  // namespace prefixfuzz

#endif  // PREFIXFUZZ_CORPUS_H_
