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

// The verdict protocol spoken by every subject, and its exit-code encoding
// for out-of-process subjects.
//
// A subject answers one of three things about an input:
//   Complete    the input is accepted as is.
//   Incomplete  the input is a valid prefix; more bytes are needed.
//   Incorrect   no continuation can make the input valid. Optionally carries
//               the byte offset where the failure was detected, which may
//               precede the true divergence point.

#ifndef PREFIXFUZZ_VERDICT_H_
#define PREFIXFUZZ_VERDICT_H_

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"

namespace prefixfuzz {

class Verdict {
 public:
  enum class Kind { kComplete, kIncomplete, kIncorrect };

  static Verdict Complete() { return Verdict(Kind::kComplete, std::nullopt); }
  static Verdict Incomplete() {
    return Verdict(Kind::kIncomplete, std::nullopt);
  }
  static Verdict Incorrect() { return Verdict(Kind::kIncorrect, std::nullopt); }
  static Verdict IncorrectAt(size_t index) {
    return Verdict(Kind::kIncorrect, index);
  }

  Kind kind() const { return kind_; }
  bool is_complete() const { return kind_ == Kind::kComplete; }
  bool is_incomplete() const { return kind_ == Kind::kIncomplete; }
  bool is_incorrect() const { return kind_ == Kind::kIncorrect; }
  // Only ever set for Incorrect.
  const std::optional<size_t> &failure_index() const { return failure_index_; }

  // "complete", "incomplete", "incorrect" or "incorrect@N".
  std::string ToString() const;

  friend bool operator==(const Verdict &, const Verdict &) = default;

 private:
  Verdict(Kind kind, std::optional<size_t> index)
      : kind_(kind), failure_index_(index) {}

  Kind kind_;
  std::optional<size_t> failure_index_;
};

std::ostream &operator<<(std::ostream &os, const Verdict &verdict);

// Process exit statuses of the exit-code protocol. An Incorrect verdict with
// a failure index is reported as kExitIncorrectAt, with the index written as
// a decimal number on the first line of standard error.
inline constexpr int kExitComplete = 0;
inline constexpr int kExitIncomplete = 1;
inline constexpr int kExitIncorrect = 2;
inline constexpr int kExitIncorrectAt = 3;

struct EncodedVerdict {
  int exit_status = 0;
  // Contents for standard error; empty unless exit_status is
  // kExitIncorrectAt.
  std::string stderr_text;

  friend bool operator==(const EncodedVerdict &,
                         const EncodedVerdict &) = default;
};

EncodedVerdict EncodeVerdict(const Verdict &verdict);

// Fails with kDataLoss (a protocol violation) when `exit_status` is outside
// the mapping or the index line cannot be parsed.
absl::StatusOr<Verdict> DecodeVerdict(int exit_status,
                                      std::string_view stderr_text);

}  // namespace prefixfuzz

#endif  // PREFIXFUZZ_VERDICT_H_
