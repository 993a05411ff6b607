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

#include "prefixfuzz/symbol.h"

#include <algorithm>
#include <bitset>
#include <cassert>
#include <fstream>
#include <iterator>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"

namespace prefixfuzz {

size_t CountSymbols(size_t base_size, int max_len) {
  constexpr size_t kMax = std::numeric_limits<size_t>::max();
  size_t total = 0;
  size_t power = 1;
  for (int r = 1; r <= max_len; ++r) {
    if (base_size != 0 && power > kMax / base_size) return kMax;
    power *= base_size;
    if (total > kMax - power) return kMax;
    total += power;
  }
  return total;
}

absl::StatusOr<std::vector<Symbol>> Symbols(ByteSpan base, int max_len,
                                            size_t cap) {
  if (max_len < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("symbol length bound must be >= 1, got ", max_len));
  }
  const size_t count = CountSymbols(base.size(), max_len);
  if (count > cap) {
    return absl::ResourceExhaustedError(
        absl::StrCat("budget exceeded: ", base.size(), " letters up to length ",
                     max_len, " give more than ", cap, " symbols"));
  }
  std::vector<Symbol> out;
  out.reserve(count);
  if (base.empty()) return out;
  // Odometer over indices into `base`, most significant digit first.
  for (int len = 1; len <= max_len; ++len) {
    std::vector<size_t> digits(len, 0);
    ByteArray bytes(len, base[0]);
    while (true) {
      out.emplace_back(ByteSpan(bytes));
      int pos = len - 1;
      while (pos >= 0 && digits[pos] + 1 == base.size()) {
        digits[pos] = 0;
        bytes[pos] = base[0];
        --pos;
      }
      if (pos < 0) break;
      ++digits[pos];
      bytes[pos] = base[digits[pos]];
    }
  }
  return out;
}

ByteArray FullByteAlphabet() {
  ByteArray out(256);
  for (int i = 0; i < 256; ++i) out[i] = static_cast<uint8_t>(i);
  return out;
}

ByteArray PrintableAlphabet() {
  ByteArray out;
  for (int c = 0x20; c <= 0x7e; ++c) out.push_back(static_cast<uint8_t>(c));
  for (uint8_t ws : {'\t', '\n', '\v', '\f', '\r'}) out.push_back(ws);
  std::sort(out.begin(), out.end());
  return out;
}

absl::StatusOr<ByteArray> ParseAlphabet(std::string_view spec) {
  if (spec == "bytes") return FullByteAlphabet();
  if (spec == "printable") return PrintableAlphabet();
  if (spec.starts_with("file:")) {
    std::string path(spec.substr(5));
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      return absl::NotFoundError(
          absl::StrCat("cannot read alphabet file '", path, "'"));
    }
    std::bitset<256> present;
    for (auto it = std::istreambuf_iterator<char>(in);
         it != std::istreambuf_iterator<char>(); ++it) {
      present.set(static_cast<uint8_t>(*it));
    }
    ByteArray out;
    for (int b = 0; b < 256; ++b) {
      if (present.test(b)) out.push_back(static_cast<uint8_t>(b));
    }
    if (out.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("alphabet file '", path, "' is empty"));
    }
    return out;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown alphabet '", std::string(spec), "'; expected bytes, printable or file:PATH"));
}

uint64_t Rng::Uniform(uint64_t n) {
  assert(n > 0);
  // Rejection sampling over the largest multiple of n.
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % n;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

uint64_t DeriveSeed(uint64_t seed, uint64_t index) {
  // splitmix64 finalizer over a golden-ratio stride.
  uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

size_t ChooseIndex(size_t num_choices, Rng &rng) {
  assert(num_choices > 0);
  return static_cast<size_t>(rng.Uniform(num_choices));
}

const Symbol &ChooseSymbol(std::span<const Symbol> choices, Rng &rng) {
  return choices[ChooseIndex(choices.size(), rng)];
}

}  // namespace prefixfuzz
