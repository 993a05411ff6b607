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

#include "prefixfuzz/trie.h"

#include <algorithm>
#include <cassert>

namespace prefixfuzz {

TokenTrie::TokenTrie(std::initializer_list<std::string_view> tokens)
    : TokenTrie() {
  for (std::string_view token : tokens) {
    [[maybe_unused]] absl::Status s = Insert(token);
    assert(s.ok());
  }
}

absl::Status TokenTrie::Insert(std::string_view token) {
  if (token.empty()) return absl::InvalidArgumentError("empty token");
  size_t node = 0;
  for (char c : token) {
    const uint8_t b = static_cast<uint8_t>(c);
    auto it = nodes_[node].children.find(b);
    if (it == nodes_[node].children.end()) {
      nodes_.emplace_back();
      it = nodes_[node].children.emplace(b, nodes_.size() - 1).first;
    }
    node = it->second;
  }
  if (!nodes_[node].terminal) {
    nodes_[node].terminal = true;
    ++token_count_;
    max_token_length_ = std::max(max_token_length_, token.size());
  }
  return absl::OkStatus();
}

TrieMatch TokenTrie::Match(std::string_view input) const {
  size_t node = 0;
  size_t longest = 0;
  for (size_t i = 0; i < input.size(); ++i) {
    const auto &children = nodes_[node].children;
    auto it = children.find(static_cast<uint8_t>(input[i]));
    if (it == children.end()) {
      if (longest > 0) return {TrieMatch::Kind::kCompleteToken, longest};
      return {TrieMatch::Kind::kFailedAt, i};
    }
    node = it->second;
    if (nodes_[node].terminal) longest = i + 1;
  }
  if (nodes_[node].terminal) {
    return {TrieMatch::Kind::kCompleteToken, input.size()};
  }
  // Only the root of an empty trie is a dead end.
  if (nodes_[node].children.empty()) return {TrieMatch::Kind::kFailedAt, 0};
  return {TrieMatch::Kind::kValidPrefix, input.size()};
}

bool TokenTrie::SameSubtree(const TokenTrie &a, size_t na, const TokenTrie &b,
                            size_t nb) {
  const Node &x = a.nodes_[na];
  const Node &y = b.nodes_[nb];
  if (x.terminal != y.terminal || x.children.size() != y.children.size()) {
    return false;
  }
  for (auto ix = x.children.begin(), iy = y.children.begin();
       ix != x.children.end(); ++ix, ++iy) {
    if (ix->first != iy->first || !SameSubtree(a, ix->second, b, iy->second)) {
      return false;
    }
  }
  return true;
}

bool operator==(const TokenTrie &a, const TokenTrie &b) {
  return a.token_count_ == b.token_count_ &&
         TokenTrie::SameSubtree(a, 0, b, 0);
}

}  // namespace prefixfuzz
