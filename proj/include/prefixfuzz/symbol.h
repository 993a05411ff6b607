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

// Symbols, alphabets and the seeded random source used by the explorer.

#ifndef PREFIXFUZZ_SYMBOL_H_
#define PREFIXFUZZ_SYMBOL_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "prefixfuzz/bytes.h"

namespace prefixfuzz {

// A nonempty byte sequence appended to the prefix in one exploration step.
// Single bytes in the common case; up to the overapproximation bound after a
// failure index was reported.
class Symbol {
 public:
  explicit Symbol(uint8_t byte) : bytes_(1, static_cast<char>(byte)) {}
  explicit Symbol(ByteSpan bytes) : bytes_(AsStringView(bytes)) {}

  size_t size() const { return bytes_.size(); }
  ByteSpan bytes() const {
    return ByteSpan(reinterpret_cast<const uint8_t *>(bytes_.data()),
                    bytes_.size());
  }
  uint8_t operator[](size_t i) const { return static_cast<uint8_t>(bytes_[i]); }

  // The first `n` bytes, 1 <= n <= size().
  Symbol Head(size_t n) const { return Symbol(bytes().first(n)); }

  std::string ToHex() const { return prefixfuzz::ToHex(bytes()); }

  friend bool operator==(const Symbol &, const Symbol &) = default;
  friend auto operator<=>(const Symbol &, const Symbol &) = default;

  template <typename H>
  friend H AbslHashValue(H h, const Symbol &s) {
    return H::combine(std::move(h), s.bytes_);
  }

 private:
  // Short strings stay inline, which keeps symbol sets cheap.
  std::string bytes_;
};

inline constexpr size_t kDefaultSymbolCap = size_t{1} << 20;

// Number of sequences of length 1..max_len over `base_size` letters, or
// SIZE_MAX when that does not fit.
size_t CountSymbols(size_t base_size, int max_len);

// Every byte sequence of length 1..max_len over `base`, shortest first and
// lexicographic in the order of `base` within one length.
// kInvalidArgument if max_len < 1; kResourceExhausted if the count would
// exceed `cap`.
absl::StatusOr<std::vector<Symbol>> Symbols(ByteSpan base, int max_len,
                                            size_t cap = kDefaultSymbolCap);

// All 256 byte values, ascending.
ByteArray FullByteAlphabet();

// The 100 printable bytes: digits, ASCII letters, punctuation, and the six
// whitespace bytes space, \t, \n, \r, \v, \f. Ascending.
ByteArray PrintableAlphabet();

// "bytes", "printable", or "file:PATH" (the distinct bytes of that file).
absl::StatusOr<ByteArray> ParseAlphabet(std::string_view spec);

// Seeded 64-bit generator with a portable uniform draw, so that traces and
// corpora are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }
  // Uniform in [0, n). n must be positive.
  uint64_t Uniform(uint64_t n);

 private:
  std::mt19937_64 engine_;
};

// Independent seed for the `index`-th sub-run of a run seeded with `seed`.
uint64_t DeriveSeed(uint64_t seed, uint64_t index);

// Uniformly random element of a nonempty list.
size_t ChooseIndex(size_t num_choices, Rng &rng);
const Symbol &ChooseSymbol(std::span<const Symbol> choices, Rng &rng);

}  // namespace prefixfuzz

#endif  // PREFIXFUZZ_SYMBOL_H_
