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

// tinyC: a lexer in front of a recursive-descent statement parser.
//
// The lexer only knows which tokens exist; the parser decides which token is
// legal where. A token is handed to the parser once it is complete, so input
// ending inside a letter or digit run is always Incomplete unless the run is
// already lexically impossible.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "prefixfuzz/subjects.h"

namespace prefixfuzz {
namespace {

enum class TokenKind { kKeyword, kPunct, kIdent, kInt, kPartial, kLexError };

struct Token {
  TokenKind kind;
  size_t start;
  std::string_view text;
};

bool IsLower(uint8_t b) { return b >= 'a' && b <= 'z'; }
bool IsDigit(uint8_t b) { return b >= '0' && b <= '9'; }
bool IsSpace(uint8_t b) {
  return b == ' ' || b == '\t' || b == '\n' || b == '\r';
}

// Tokens up to and including the first partial or erroneous one.
std::vector<Token> Lex(std::string_view in) {
  const TokenTrie &trie = TinycTokenTrie();
  std::vector<Token> tokens;
  size_t pos = 0;
  while (true) {
    while (pos < in.size() && IsSpace(in[pos])) ++pos;
    if (pos == in.size()) return tokens;
    const uint8_t c = in[pos];
    if (IsLower(c) || IsDigit(c)) {
      const bool letters = IsLower(c);
      size_t end = pos;
      while (end < in.size() &&
             (letters ? IsLower(in[end]) : IsDigit(in[end]))) {
        ++end;
      }
      const std::string_view run = in.substr(pos, end - pos);
      if (letters && run.size() > 1) {
        // A letter run must be a keyword or a one-letter identifier.
        const TrieMatch m = trie.Match(run);
        if (m.kind == TrieMatch::Kind::kFailedAt ||
            (m.kind == TrieMatch::Kind::kCompleteToken &&
             m.position < run.size())) {
          tokens.push_back({TokenKind::kLexError,
                            pos + std::max<size_t>(m.position, 1), run});
          return tokens;
        }
        if (m.kind == TrieMatch::Kind::kValidPrefix && end < in.size()) {
          // A keyword prefix cut short by a non-letter.
          tokens.push_back({TokenKind::kLexError, end, run});
          return tokens;
        }
      }
      if (end == in.size()) {
        tokens.push_back({TokenKind::kPartial, pos, run});
        return tokens;
      }
      TokenKind kind = TokenKind::kInt;
      if (letters) kind = run.size() == 1 ? TokenKind::kIdent : TokenKind::kKeyword;
      tokens.push_back({kind, pos, run});
      pos = end;
      continue;
    }
    const TrieMatch m = trie.Match(in.substr(pos, 1));
    if (m.kind != TrieMatch::Kind::kCompleteToken) {
      tokens.push_back({TokenKind::kLexError, pos, in.substr(pos, 1)});
      return tokens;
    }
    tokens.push_back({TokenKind::kPunct, pos, in.substr(pos, 1)});
    ++pos;
  }
}

enum class Parse { kOk, kNeedMore, kError };

#define RETURN_IF_NOT_OK(expr)               \
  do {                                       \
    if (Parse _p = (expr); _p != Parse::kOk) \
      return _p;                             \
  } while (0)

constexpr int kMaxDepth = 4096;

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Verdict Run() {
    Parse p = Statement(0);
    if (p == Parse::kOk) {
      if (i_ == tokens_.size()) return Verdict::Complete();
      p = Unusable(tokens_[i_]);
    }
    if (p == Parse::kNeedMore) return Verdict::Incomplete();
    return Verdict::IncorrectAt(error_at_);
  }

 private:
  // A token that can neither be parsed nor waited on.
  Parse Unusable(const Token &t) {
    if (t.kind == TokenKind::kPartial) return Parse::kNeedMore;
    error_at_ = t.start;
    return Parse::kError;
  }

  Parse TooDeep() {
    error_at_ = i_ < tokens_.size() ? tokens_[i_].start : tokens_.back().start;
    return Parse::kError;
  }

  // nullptr at the end of input or at a token that is not ready.
  const Token *Peek(size_t ahead = 0) const {
    const size_t j = i_ + ahead;
    if (j >= tokens_.size()) return nullptr;
    const Token &t = tokens_[j];
    if (t.kind == TokenKind::kPartial || t.kind == TokenKind::kLexError) {
      return nullptr;
    }
    return &t;
  }

  // Why Peek() returned nullptr.
  Parse Stuck() {
    if (i_ < tokens_.size() && tokens_[i_].kind == TokenKind::kLexError) {
      error_at_ = tokens_[i_].start;
      return Parse::kError;
    }
    return Parse::kNeedMore;
  }

  bool Is(const Token *t, std::string_view text) const {
    return t != nullptr &&
           (t->kind == TokenKind::kKeyword || t->kind == TokenKind::kPunct) &&
           t->text == text;
  }

  Parse Expect(std::string_view text) {
    const Token *t = Peek();
    if (t == nullptr) return Stuck();
    if (!Is(t, text)) return Unusable(*t);
    ++i_;
    return Parse::kOk;
  }

  Parse Statement(int depth) {
    if (depth >= kMaxDepth) return TooDeep();
    const Token *t = Peek();
    if (t == nullptr) return Stuck();
    if (Is(t, "if")) {
      ++i_;
      RETURN_IF_NOT_OK(ParenExpr());
      RETURN_IF_NOT_OK(Statement(depth + 1));
      if (Is(Peek(), "else")) {
        ++i_;
        return Statement(depth + 1);
      }
      // Input ending inside a letter run may still become "else".
      if (i_ < tokens_.size() && tokens_[i_].kind == TokenKind::kPartial) {
        return Parse::kNeedMore;
      }
      return Parse::kOk;
    }
    if (Is(t, "while")) {
      ++i_;
      RETURN_IF_NOT_OK(ParenExpr());
      return Statement(depth + 1);
    }
    if (Is(t, "do")) {
      ++i_;
      RETURN_IF_NOT_OK(Statement(depth + 1));
      RETURN_IF_NOT_OK(Expect("while"));
      RETURN_IF_NOT_OK(ParenExpr());
      return Expect(";");
    }
    if (Is(t, "{")) {
      ++i_;
      while (true) {
        const Token *u = Peek();
        if (u == nullptr) return Stuck();
        if (Is(u, "}")) {
          ++i_;
          return Parse::kOk;
        }
        RETURN_IF_NOT_OK(Statement(depth + 1));
      }
    }
    if (Is(t, ";")) {
      ++i_;
      return Parse::kOk;
    }
    RETURN_IF_NOT_OK(Expr(depth + 1));
    return Expect(";");
  }

  Parse ParenExpr() {
    RETURN_IF_NOT_OK(Expect("("));
    RETURN_IF_NOT_OK(Expr(0));
    return Expect(")");
  }

  Parse Expr(int depth) {
    if (depth >= kMaxDepth) return TooDeep();
    const Token *t = Peek();
    if (t != nullptr && t->kind == TokenKind::kIdent && Is(Peek(1), "=")) {
      i_ += 2;
      return Expr(depth + 1);
    }
    RETURN_IF_NOT_OK(Sum(depth));
    if (Is(Peek(), "<")) {
      ++i_;
      return Sum(depth);
    }
    return Parse::kOk;
  }

  Parse Sum(int depth) {
    RETURN_IF_NOT_OK(Term(depth));
    while (Is(Peek(), "+") || Is(Peek(), "-")) {
      ++i_;
      RETURN_IF_NOT_OK(Term(depth));
    }
    return Parse::kOk;
  }

  Parse Term(int depth) {
    const Token *t = Peek();
    if (t == nullptr) return Stuck();
    if (t->kind == TokenKind::kIdent || t->kind == TokenKind::kInt) {
      ++i_;
      return Parse::kOk;
    }
    if (Is(t, "(")) {
      if (depth >= kMaxDepth) return TooDeep();
      ++i_;
      RETURN_IF_NOT_OK(Expr(depth + 1));
      return Expect(")");
    }
    return Unusable(*t);
  }

  std::vector<Token> tokens_;
  size_t i_ = 0;
  size_t error_at_ = 0;
};

#undef RETURN_IF_NOT_OK

}  // namespace

Verdict TinycSubsetValidate(ByteSpan input) {
  return Parser(Lex(AsStringView(input))).Run();
}

}  // namespace prefixfuzz
