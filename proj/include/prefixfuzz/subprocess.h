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

#ifndef PREFIXFUZZ_SUBPROCESS_H_
#define PREFIXFUZZ_SUBPROCESS_H_

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "prefixfuzz/bytes.h"
#include "prefixfuzz/executor.h"
#include "prefixfuzz/verdict.h"

namespace prefixfuzz {

struct SubprocessOptions {
  std::chrono::milliseconds timeout{500};
};

// Runs `argv` with `input` on standard input and decodes the exit status.
// The child's standard output is discarded.
//
// Errors:
//   kFailedPrecondition  the command could not be spawned.
//   kDataLoss            the exit status or index line broke the protocol.
// A child killed by a signal counts in `stats.crashes`, a child that runs past
// `options.timeout` is killed and counts in `stats.timeouts`; both decode to
// Incorrect without an index.
absl::StatusOr<Verdict> ValidateSubprocess(const std::vector<std::string> &argv,
                                           ByteSpan input,
                                           const SubprocessOptions &options,
                                           ExecutionStats &stats);

class SubprocessExecutor : public Executor {
 public:
  SubprocessExecutor(std::vector<std::string> argv, SubprocessOptions options);

  absl::StatusOr<Verdict> Execute(ByteSpan input) override {
    return ValidateSubprocess(argv_, input, options_, stats_);
  }
  std::string name() const override;

 private:
  std::vector<std::string> argv_;
  SubprocessOptions options_;
};

}  // namespace prefixfuzz

#endif  // PREFIXFUZZ_SUBPROCESS_H_
