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

// Streaming JSON recognizer. Every routine stops at the first byte it cannot
// accept and distinguishes running out of input from a bad byte.

#include <cstddef>
#include <cstdint>

#include "prefixfuzz/subjects.h"

namespace prefixfuzz {
namespace {

enum class Parse { kOk, kNeedMore, kError };

#define RETURN_IF_NOT_OK(expr)              \
  do {                                      \
    if (Parse _p = (expr); _p != Parse::kOk) \
      return _p;                            \
  } while (0)

constexpr int kMaxDepth = 4096;

bool IsDigit(uint8_t b) { return b >= '0' && b <= '9'; }
bool IsHex(uint8_t b) {
  return IsDigit(b) || (b >= 'a' && b <= 'f') || (b >= 'A' && b <= 'F');
}

class JsonRecognizer {
 public:
  explicit JsonRecognizer(ByteSpan input) : in_(input) {}

  Verdict Run() {
    SkipWhitespace();
    if (AtEnd()) return Verdict::Incomplete();
    Parse p;
    switch (in_[pos_]) {
      case '{':
        p = Object(0);
        break;
      case '[':
        p = Array(0);
        break;
      case 't':
      case 'f':
      case 'n':
        p = Literal();
        break;
      default:
        return Verdict::Incorrect();
    }
    if (p == Parse::kNeedMore) return Verdict::Incomplete();
    if (p == Parse::kError) return Verdict::Incorrect();
    SkipWhitespace();
    return AtEnd() ? Verdict::Complete() : Verdict::Incorrect();
  }

 private:
  bool AtEnd() const { return pos_ >= in_.size(); }

  void SkipWhitespace() {
    while (!AtEnd() && (in_[pos_] == ' ' || in_[pos_] == '\t' ||
                        in_[pos_] == '\n' || in_[pos_] == '\r')) {
      ++pos_;
    }
  }

  Parse Expect(uint8_t b) {
    if (AtEnd()) return Parse::kNeedMore;
    if (in_[pos_] != b) return Parse::kError;
    ++pos_;
    return Parse::kOk;
  }

  Parse Value(int depth) {
    SkipWhitespace();
    if (AtEnd()) return Parse::kNeedMore;
    const uint8_t b = in_[pos_];
    if (b == '{') return Object(depth);
    if (b == '[') return Array(depth);
    if (b == '"') return String();
    if (b == '-' || IsDigit(b)) return Number();
    if (b == 't' || b == 'f' || b == 'n') return Literal();
    return Parse::kError;
  }

  // The trie is consulted only here, where a literal may start.
  Parse Literal() {
    const TrieMatch m = JsonKeywordTrie().Match(in_.subspan(pos_));
    switch (m.kind) {
      case TrieMatch::Kind::kValidPrefix:
        return Parse::kNeedMore;
      case TrieMatch::Kind::kFailedAt:
        return Parse::kError;
      case TrieMatch::Kind::kCompleteToken:
        pos_ += m.position;
        return Parse::kOk;
    }
    return Parse::kError;
  }

  Parse Object(int depth) {
    if (depth >= kMaxDepth) return Parse::kError;
    RETURN_IF_NOT_OK(Expect('{'));
    SkipWhitespace();
    if (AtEnd()) return Parse::kNeedMore;
    if (in_[pos_] == '}') {
      ++pos_;
      return Parse::kOk;
    }
    while (true) {
      SkipWhitespace();
      RETURN_IF_NOT_OK(String());
      SkipWhitespace();
      RETURN_IF_NOT_OK(Expect(':'));
      RETURN_IF_NOT_OK(Value(depth + 1));
      SkipWhitespace();
      if (AtEnd()) return Parse::kNeedMore;
      if (in_[pos_] == '}') {
        ++pos_;
        return Parse::kOk;
      }
      RETURN_IF_NOT_OK(Expect(','));
    }
  }

  Parse Array(int depth) {
    if (depth >= kMaxDepth) return Parse::kError;
    RETURN_IF_NOT_OK(Expect('['));
    SkipWhitespace();
    if (AtEnd()) return Parse::kNeedMore;
    if (in_[pos_] == ']') {
      ++pos_;
      return Parse::kOk;
    }
    while (true) {
      RETURN_IF_NOT_OK(Value(depth + 1));
      SkipWhitespace();
      if (AtEnd()) return Parse::kNeedMore;
      if (in_[pos_] == ']') {
        ++pos_;
        return Parse::kOk;
      }
      RETURN_IF_NOT_OK(Expect(','));
    }
  }

  Parse String() {
    RETURN_IF_NOT_OK(Expect('"'));
    while (true) {
      if (AtEnd()) return Parse::kNeedMore;
      const uint8_t b = in_[pos_++];
      if (b == '"') return Parse::kOk;
      if (b < 0x20) return Parse::kError;
      if (b != '\\') continue;
      if (AtEnd()) return Parse::kNeedMore;
      const uint8_t e = in_[pos_++];
      switch (e) {
        case '"': case '\\': case '/': case 'b':
        case 'f': case 'n': case 'r': case 't':
          break;
        case 'u':
          for (int i = 0; i < 4; ++i) {
            if (AtEnd()) return Parse::kNeedMore;
            if (!IsHex(in_[pos_++])) return Parse::kError;
          }
          break;
        default:
          return Parse::kError;
      }
    }
  }

  // Numbers never stand at top level, so input ending inside one always
  // needs more.
  Parse Number() {
    if (in_[pos_] == '-') ++pos_;
    if (AtEnd()) return Parse::kNeedMore;
    if (in_[pos_] == '0') {
      ++pos_;
    } else if (IsDigit(in_[pos_])) {
      while (!AtEnd() && IsDigit(in_[pos_])) ++pos_;
    } else {
      return Parse::kError;
    }
    if (AtEnd()) return Parse::kNeedMore;
    if (in_[pos_] == '.') {
      ++pos_;
      RETURN_IF_NOT_OK(Digits());
    }
    if (AtEnd()) return Parse::kNeedMore;
    if (in_[pos_] == 'e' || in_[pos_] == 'E') {
      ++pos_;
      if (AtEnd()) return Parse::kNeedMore;
      if (in_[pos_] == '+' || in_[pos_] == '-') ++pos_;
      RETURN_IF_NOT_OK(Digits());
    }
    return AtEnd() ? Parse::kNeedMore : Parse::kOk;
  }

  Parse Digits() {
    if (AtEnd()) return Parse::kNeedMore;
    if (!IsDigit(in_[pos_])) return Parse::kError;
    while (!AtEnd() && IsDigit(in_[pos_])) ++pos_;
    return Parse::kOk;
  }

  ByteSpan in_;
  size_t pos_ = 0;
};

#undef RETURN_IF_NOT_OK

}  // namespace

Verdict JsonSubsetValidate(ByteSpan input) {
  return JsonRecognizer(input).Run();
}

}  // namespace prefixfuzz
