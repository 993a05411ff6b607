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

// Built-in subjects. Each one is a small parser that answers with a Verdict
// and exhibits one kind of failure feedback. Grammars are in grammars/.

#ifndef PREFIXFUZZ_SUBJECTS_H_
#define PREFIXFUZZ_SUBJECTS_H_

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "prefixfuzz/bytes.h"
#include "prefixfuzz/executor.h"
#include "prefixfuzz/trie.h"
#include "prefixfuzz/verdict.h"

namespace prefixfuzz {

// Accepts exactly "HELLO". Bytes 0-2 are checked one at a time, bytes 3-4 as
// a single two-byte chunk, so "HELxx" is Incomplete until both are present.
Verdict HelloValidate(ByteSpan input);

// Reads two-byte JPEG markers. A frame is SOI, APP0, any markers other than
// SOI, then EOI. A chunk is judged only once both of its bytes are present.
// Incorrect carries no index.
Verdict JpegMarkerValidate(ByteSpan input);

// As JpegMarkerValidate, but Incorrect carries the offset of the first byte
// of the offending chunk.
Verdict JpegMarkerValidateIndexed(ByteSpan input);

// A big-endian 16-bit length N followed by exactly N payload bytes.
Verdict LengthFieldValidate(ByteSpan input);

// Complete once the input ends with a newline outside a quoted field. Never
// Incorrect.
Verdict CsvValidate(ByteSpan input);

// Section headers and free-form lines. Only malformed headers are Incorrect.
Verdict IniValidate(ByteSpan input);

// JSON with an object, array or literal at top level. Literals are matched
// through a token trie where a value may start. Incorrect carries no index.
Verdict JsonSubsetValidate(ByteSpan input);

// A tinyC statement, lexed through a token trie. Incorrect carries the
// offset of the failing byte for lexical errors and of the token start for
// syntax errors.
Verdict TinycSubsetValidate(ByteSpan input);

// Exactly one token of the trie. Incorrect carries the offset of the first
// byte that cannot continue a token.
Verdict TokenValidate(const TokenTrie &trie, ByteSpan input);

// Fixed tokens of the tinyC lexer: keywords and punctuation.
const TokenTrie &TinycTokenTrie();
// true, false, null.
const TokenTrie &JsonKeywordTrie();

// Accepts exactly `target`, answering Incorrect at the first wrong byte.
std::unique_ptr<Validator> MakeLiteralSubject(std::string target);

struct SubjectInfo {
  std::string name;
  std::string description;
  std::function<std::unique_ptr<Validator>()> make;
  // Inputs the subject answers Complete.
  std::vector<ByteArray> goldens;
};

class SubjectRegistry {
 public:
  // All built-in subjects.
  static const SubjectRegistry &BuiltIn();

  // kAlreadyExists on a duplicate name.
  absl::Status Register(SubjectInfo info);
  // nullptr if unknown.
  const SubjectInfo *Find(std::string_view name) const;
  std::span<const SubjectInfo> subjects() const { return subjects_; }

 private:
  std::vector<SubjectInfo> subjects_;
};

}  // namespace prefixfuzz

#endif  // PREFIXFUZZ_SUBJECTS_H_
