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

#include "prefixfuzz/subjects.h"

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "absl/strings/str_cat.h"
#include "prefixfuzz/symbol.h"

namespace prefixfuzz {
namespace {

enum class Marker { kSOI, kSOF0, kSOF2, kDHT, kDQT, kDRI, kSOS, kRST0, kAPP0, kEOI };

std::optional<Marker> DecodeMarker(uint8_t hi, uint8_t lo) {
  if (hi != 0xff) return std::nullopt;
  switch (lo) {
    case 0xd8: return Marker::kSOI;
    case 0xc0: return Marker::kSOF0;
    case 0xc2: return Marker::kSOF2;
    case 0xc4: return Marker::kDHT;
    case 0xdb: return Marker::kDQT;
    case 0xdd: return Marker::kDRI;
    case 0xda: return Marker::kSOS;
    case 0xd0: return Marker::kRST0;
    case 0xe0: return Marker::kAPP0;
    case 0xd9: return Marker::kEOI;
    default: return std::nullopt;
  }
}

// Returns the offset of the first bad chunk, or nullopt. Sets `ended` when an
// EOI was read.
std::optional<size_t> ScanMarkers(ByteSpan input, bool &ended) {
  ended = false;
  for (size_t pos = 0; pos < input.size(); pos += 2) {
    if (ended) return pos;
    if (pos + 1 == input.size()) break;  // half a chunk: not read yet
    std::optional<Marker> marker = DecodeMarker(input[pos], input[pos + 1]);
    if (!marker.has_value()) return pos;
    const size_t chunk = pos / 2;
    if (chunk == 0 && *marker != Marker::kSOI) return pos;
    if (chunk == 1 && *marker != Marker::kAPP0) return pos;
    if (chunk >= 2 && *marker == Marker::kSOI) return pos;
    if (*marker == Marker::kEOI) ended = true;
  }
  return std::nullopt;
}

Verdict JpegMarkers(ByteSpan input, bool indexed) {
  bool ended = false;
  if (std::optional<size_t> bad = ScanMarkers(input, ended)) {
    return indexed ? Verdict::IncorrectAt(*bad) : Verdict::Incorrect();
  }
  return ended ? Verdict::Complete() : Verdict::Incomplete();
}

class LiteralValidator : public Validator {
 public:
  explicit LiteralValidator(std::string target)
      : target_(std::move(target)), name_(absl::StrCat("literal:", target_)) {}

  Verdict Validate(ByteSpan input) const override {
    const size_t n = std::min(input.size(), target_.size());
    for (size_t i = 0; i < n; ++i) {
      if (input[i] != static_cast<uint8_t>(target_[i])) {
        return Verdict::Incorrect();
      }
    }
    if (input.size() < target_.size()) return Verdict::Incomplete();
    if (input.size() > target_.size()) return Verdict::Incorrect();
    return Verdict::Complete();
  }
  std::string_view name() const override { return name_; }

 private:
  std::string target_;
  std::string name_;
};

std::vector<ByteArray> Goldens(std::initializer_list<std::string_view> items) {
  std::vector<ByteArray> out;
  for (std::string_view s : items) out.push_back(AsBytes(s));
  return out;
}

SubjectInfo FunctionSubject(std::string name, std::string description,
                            Verdict (*fn)(ByteSpan),
                            std::optional<ByteArray> hint,
                            std::vector<ByteArray> goldens) {
  SubjectInfo info;
  info.name = name;
  info.description = std::move(description);
  info.make = [name, fn, hint]() -> std::unique_ptr<Validator> {
    return std::make_unique<FunctionValidator>(name, fn, hint);
  };
  info.goldens = std::move(goldens);
  return info;
}

}  // namespace

Verdict HelloValidate(ByteSpan input) {
  static constexpr std::string_view kHead = "HEL";
  for (size_t i = 0; i < kHead.size(); ++i) {
    if (input.size() <= i) return Verdict::Incomplete();
    if (input[i] != kHead[i]) return Verdict::Incorrect();
  }
  if (input.size() < 5) return Verdict::Incomplete();
  if (input[3] != 'L' || input[4] != 'O') return Verdict::Incorrect();
  if (input.size() > 5) return Verdict::Incorrect();
  return Verdict::Complete();
}

Verdict JpegMarkerValidate(ByteSpan input) { return JpegMarkers(input, false); }

Verdict JpegMarkerValidateIndexed(ByteSpan input) {
  return JpegMarkers(input, true);
}

Verdict LengthFieldValidate(ByteSpan input) {
  if (input.size() < 2) return Verdict::Incomplete();
  const size_t length = (size_t{input[0]} << 8) | input[1];
  if (input.size() < 2 + length) return Verdict::Incomplete();
  if (input.size() > 2 + length) return Verdict::Incorrect();
  return Verdict::Complete();
}

Verdict CsvValidate(ByteSpan input) {
  bool quoted = false;
  for (uint8_t b : input) {
    if (b == '"') quoted = !quoted;
  }
  if (!input.empty() && input.back() == '\n' && !quoted) {
    return Verdict::Complete();
  }
  return Verdict::Incomplete();
}

Verdict IniValidate(ByteSpan input) {
  enum class State { kLineStart, kHeaderName, kHeaderBody, kAfterHeader, kRest };
  State state = State::kLineStart;
  for (uint8_t b : input) {
    switch (state) {
      case State::kLineStart:
        if (b == '[') {
          state = State::kHeaderName;
        } else if (b != ' ' && b != '\t' && b != '\n') {
          state = State::kRest;
        }
        break;
      case State::kHeaderName:
      case State::kHeaderBody:
        if (b == '\n' || b == '[') return Verdict::Incorrect();
        if (b == ']') {
          if (state == State::kHeaderName) return Verdict::Incorrect();
          state = State::kAfterHeader;
        } else {
          state = State::kHeaderBody;
        }
        break;
      case State::kAfterHeader:
        if (b == '\n') {
          state = State::kLineStart;
        } else if (b == ';' || b == '#') {
          state = State::kRest;
        } else if (b != ' ' && b != '\t' && b != '\r') {
          return Verdict::Incorrect();
        }
        break;
      case State::kRest:
        if (b == '\n') state = State::kLineStart;
        break;
    }
  }
  if (!input.empty() && input.back() == '\n') return Verdict::Complete();
  return Verdict::Incomplete();
}

Verdict TokenValidate(const TokenTrie &trie, ByteSpan input) {
  const TrieMatch match = trie.Match(input);
  switch (match.kind) {
    case TrieMatch::Kind::kValidPrefix:
      return Verdict::Incomplete();
    case TrieMatch::Kind::kFailedAt:
      return Verdict::IncorrectAt(match.position);
    case TrieMatch::Kind::kCompleteToken:
      if (match.position == input.size()) return Verdict::Complete();
      return Verdict::IncorrectAt(match.position);
  }
  return Verdict::Incorrect();
}

const TokenTrie &TinycTokenTrie() {
  static const TokenTrie *trie = new TokenTrie{
      "do", "while", "if", "else", "(", ")", "{", "}", ";", "=", "<", "+", "-"};
  return *trie;
}

const TokenTrie &JsonKeywordTrie() {
  static const TokenTrie *trie = new TokenTrie{"true", "false", "null"};
  return *trie;
}

std::unique_ptr<Validator> MakeLiteralSubject(std::string target) {
  return std::make_unique<LiteralValidator>(std::move(target));
}

absl::Status SubjectRegistry::Register(SubjectInfo info) {
  if (Find(info.name) != nullptr) {
    return absl::AlreadyExistsError(
        absl::StrCat("subject '", info.name, "' is already registered"));
  }
  subjects_.push_back(std::move(info));
  return absl::OkStatus();
}

const SubjectInfo *SubjectRegistry::Find(std::string_view name) const {
  for (const SubjectInfo &info : subjects_) {
    if (info.name == name) return &info;
  }
  return nullptr;
}

const SubjectRegistry &SubjectRegistry::BuiltIn() {
  static const SubjectRegistry *registry = [] {
    auto *r = new SubjectRegistry;
    const ByteArray printable = PrintableAlphabet();
    const std::vector<SubjectInfo> infos = {
        FunctionSubject("hello",
                        "accepts HELLO; last two bytes compared as one chunk",
                        HelloValidate, printable, Goldens({"HELLO"})),
        FunctionSubject(
            "jpeg_marker",
            "two-byte JPEG markers SOI APP0 ... EOI; no failure index",
            JpegMarkerValidate, std::nullopt,
            Goldens({"\xff\xd8\xff\xe0\xff\xd9",
                     "\xff\xd8\xff\xe0\xff\xdb\xff\xc4\xff\xda\xff\xd9",
                     "\xff\xd8\xff\xe0\xff\xe0\xff\xd0\xff\xdd\xff\xd9"})),
        FunctionSubject(
            "jpeg_marker_indexed",
            "two-byte JPEG markers; failure index at the bad chunk",
            JpegMarkerValidateIndexed, std::nullopt,
            Goldens({"\xff\xd8\xff\xe0\xff\xd9",
                     "\xff\xd8\xff\xe0\xff\xc0\xff\xc2\xff\xd9"})),
        FunctionSubject("length_field",
                        "16-bit big-endian length followed by that many bytes",
                        LengthFieldValidate, std::nullopt,
                        Goldens({std::string_view("\x00\x00", 2),
                                 std::string_view("\x00\x02\xaa\xbb", 4),
                                 std::string_view("\x00\x05hello", 7)})),
        FunctionSubject("ini", "sections and free-form lines", IniValidate,
                        printable,
                        Goldens({"[core]\nname=value\n",
                                 "; comment\n[section]  ; note\nkey = v\n\n",
                                 "bare\n"})),
        FunctionSubject("csv", "newline-terminated records", CsvValidate,
                        printable,
                        Goldens({"a,b,c\n", "\"x,\ny\",z\n1,2\n", "\n"})),
        FunctionSubject(
            "json_subset", "JSON; trie-lexed literals; no failure index",
            JsonSubsetValidate, printable,
            Goldens({"[{}]", "{\"a\":[1,2.5e3,true,null]}", "true",
                     "[\"\\u00e9\\n\", -0.5, false]", " { } "})),
        FunctionSubject(
            "tinyc_subset", "tinyC statements; failure index always given",
            TinycSubsetValidate, printable,
            Goldens({"do ; while (a<1) ;", "{ i=1; while (i<10) i=i+1; }",
                     "if (a) b=2; else { c=3; }", ";"})),
        [] {
          SubjectInfo info;
          info.name = "tinyc_token";
          info.description = "a single tinyC keyword or punctuation token";
          info.make = []() -> std::unique_ptr<Validator> {
            return std::make_unique<FunctionValidator>(
                "tinyc_token",
                [](ByteSpan in) { return TokenValidate(TinycTokenTrie(), in); },
                PrintableAlphabet());
          };
          info.goldens = Goldens({"do", "while", "if", "else", "(", ";"});
          return info;
        }(),
    };
    for (const SubjectInfo &info : infos) {
      [[maybe_unused]] absl::Status s = r->Register(info);
    }
    return r;
  }();
  return *registry;
}

}  // namespace prefixfuzz
