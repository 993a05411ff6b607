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

#ifndef PREFIXFUZZ_BYTES_H_
#define PREFIXFUZZ_BYTES_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace prefixfuzz {

using ByteArray = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

inline ByteArray AsBytes(std::string_view s) {
  return ByteArray(s.begin(), s.end());
}

inline std::string AsString(ByteSpan bytes) {
  return std::string(bytes.begin(), bytes.end());
}

inline std::string_view AsStringView(ByteSpan bytes) {
  return std::string_view(reinterpret_cast<const char *>(bytes.data()),
                          bytes.size());
}

// Lowercase hex, no separators: {0xff, 0xd8} -> "ffd8".
std::string ToHex(ByteSpan bytes);

}  // namespace prefixfuzz

#endif  // PREFIXFUZZ_BYTES_H_
