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

#ifndef PREFIXFUZZ_EXECUTOR_H_
#define PREFIXFUZZ_EXECUTOR_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "absl/status/statusor.h"
#include "prefixfuzz/bytes.h"
#include "prefixfuzz/verdict.h"

namespace prefixfuzz {

// An in-process subject. Implementations must be deterministic: the same
// input always yields the same verdict.
class Validator {
 public:
  virtual ~Validator() = default;

  virtual Verdict Validate(ByteSpan input) const = 0;
  virtual std::string_view name() const = 0;
  // Bytes the subject is expected to consume, if narrower than 0..255.
  virtual std::optional<ByteArray> alphabet_hint() const {
    return std::nullopt;
  }
};

class FunctionValidator : public Validator {
 public:
  using Fn = std::function<Verdict(ByteSpan)>;

  FunctionValidator(std::string name, Fn fn,
                    std::optional<ByteArray> alphabet_hint = std::nullopt)
      : name_(std::move(name)),
        fn_(std::move(fn)),
        alphabet_hint_(std::move(alphabet_hint)) {}

  Verdict Validate(ByteSpan input) const override { return fn_(input); }
  std::string_view name() const override { return name_; }
  std::optional<ByteArray> alphabet_hint() const override {
    return alphabet_hint_;
  }

 private:
  std::string name_;
  Fn fn_;
  std::optional<ByteArray> alphabet_hint_;
};

struct ExecutionStats {
  uint64_t executions = 0;
  // In-process validators that threw.
  uint64_t panics = 0;
  // Child processes killed by a signal.
  uint64_t crashes = 0;
  // Child processes that exceeded the wall-clock limit.
  uint64_t timeouts = 0;
};

// Runs a validator in process. A validator that throws is a subject bug: the
// throw is logged, counted in `stats.panics`, and answered as Incorrect.
Verdict ValidateInProcess(const Validator &validator, ByteSpan input,
                          ExecutionStats &stats);

// Uniform entry point used by the explorer and campaigns, so that in-process
// and out-of-process subjects are interchangeable. Not thread-safe.
class Executor {
 public:
  virtual ~Executor() = default;

  virtual absl::StatusOr<Verdict> Execute(ByteSpan input) = 0;
  virtual std::string name() const = 0;

  const ExecutionStats &stats() const { return stats_; }

 protected:
  ExecutionStats stats_;
};

class InProcessExecutor : public Executor {
 public:
  // `validator` must outlive the executor.
  explicit InProcessExecutor(const Validator &validator)
      : validator_(validator) {}

  absl::StatusOr<Verdict> Execute(ByteSpan input) override {
    return ValidateInProcess(validator_, input, stats_);
  }
  std::string name() const override { return std::string(validator_.name()); }

 private:
  const Validator &validator_;
};

}  // namespace prefixfuzz

#endif  // PREFIXFUZZ_EXECUTOR_H_
