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

#include "prefixfuzz/verdict.h"

#include <cstdint>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/strip.h"
#include "prefixfuzz/bytes.h"

namespace prefixfuzz {

std::string ToHex(ByteSpan bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

std::string Verdict::ToString() const {
  switch (kind_) {
    case Kind::kComplete:
      return "complete";
    case Kind::kIncomplete:
      return "incomplete";
    case Kind::kIncorrect:
      if (failure_index_.has_value()) {
        return absl::StrCat("incorrect@", *failure_index_);
      }
      return "incorrect";
  }
  return "unknown";
}

std::ostream &operator<<(std::ostream &os, const Verdict &verdict) {
  return os << verdict.ToString();
}

EncodedVerdict EncodeVerdict(const Verdict &verdict) {
  switch (verdict.kind()) {
    case Verdict::Kind::kComplete:
      return {kExitComplete, ""};
    case Verdict::Kind::kIncomplete:
      return {kExitIncomplete, ""};
    case Verdict::Kind::kIncorrect:
      if (verdict.failure_index().has_value()) {
        return {kExitIncorrectAt,
                absl::StrCat(*verdict.failure_index(), "\n")};
      }
      return {kExitIncorrect, ""};
  }
  return {kExitIncorrect, ""};
}

absl::StatusOr<Verdict> DecodeVerdict(int exit_status,
                                      std::string_view stderr_text) {
  switch (exit_status) {
    case kExitComplete:
      return Verdict::Complete();
    case kExitIncomplete:
      return Verdict::Incomplete();
    case kExitIncorrect:
      return Verdict::Incorrect();
    case kExitIncorrectAt: {
      const std::string_view first = stderr_text.substr(0, stderr_text.find('\n'));
      absl::string_view line(first.data(), first.size());
      absl::ConsumeSuffix(&line, "\r");
      uint64_t index = 0;
      // SimpleAtoi tolerates surrounding whitespace but not a sign we care
      // about: negative values fail the unsigned parse.
      if (line.empty() || !absl::SimpleAtoi(line, &index)) {
        return absl::DataLossError(absl::StrCat(
            "protocol violation: unparseable failure index line '", line,
            "'"));
      }
      return Verdict::IncorrectAt(static_cast<size_t>(index));
    }
    default:
      return absl::DataLossError(absl::StrCat(
          "protocol violation: exit status ", exit_status,
          " is not one of 0 (complete), 1 (incomplete), 2 (incorrect), "
          "3 (incorrect with index)"));
  }
}

}  // namespace prefixfuzz
