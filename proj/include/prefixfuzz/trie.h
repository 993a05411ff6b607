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

#ifndef PREFIXFUZZ_TRIE_H_
#define PREFIXFUZZ_TRIE_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "prefixfuzz/bytes.h"

namespace prefixfuzz {

struct TrieMatch {
  enum class Kind {
    // A token was matched; `position` bytes were consumed. The longest token
    // that prefixes the input wins. Bytes after it are not inspected.
    kCompleteToken,
    // The whole input is a proper prefix of some token.
    kValidPrefix,
    // No token prefixes the input and the input leaves every token path at
    // byte `position`.
    kFailedAt,
  };
  Kind kind;
  // kCompleteToken: token length. kValidPrefix: input length. kFailedAt:
  // offset of the first byte without a matching edge.
  size_t position = 0;

  friend bool operator==(const TrieMatch &, const TrieMatch &) = default;
};

// Prefix tree over lexer tokens. Lets a lexer report the exact byte at which
// a token match failed instead of failing at the token boundary.
class TokenTrie {
 public:
  TokenTrie() : nodes_(1) {}
  TokenTrie(std::initializer_list<std::string_view> tokens);

  // Idempotent. kInvalidArgument for an empty token.
  absl::Status Insert(std::string_view token);
  absl::Status Insert(ByteSpan token) { return Insert(AsStringView(token)); }

  TrieMatch Match(std::string_view input) const;
  TrieMatch Match(ByteSpan input) const { return Match(AsStringView(input)); }

  size_t token_count() const { return token_count_; }
  size_t max_token_length() const { return max_token_length_; }

  // Same token set.
  friend bool operator==(const TokenTrie &a, const TokenTrie &b);

 private:
  struct Node {
    std::map<uint8_t, size_t> children;
    bool terminal = false;
  };

  static bool SameSubtree(const TokenTrie &a, size_t na, const TokenTrie &b,
                          size_t nb);

  std::vector<Node> nodes_;
  size_t token_count_ = 0;
  size_t max_token_length_ = 0;
};

}  // namespace prefixfuzz

#endif  // PREFIXFUZZ_TRIE_H_
