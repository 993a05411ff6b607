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

// Test-only oracles, written independently of the library: brute-force
// matchers that compute, for each nonterminal, the set of every position a
// derivation starting at a given position can end at. Slow and simple.

#ifndef PREFIXFUZZ_TESTS_REFERENCE_RECOGNIZERS_H_
#define PREFIXFUZZ_TESTS_REFERENCE_RECOGNIZERS_H_

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace prefixfuzz::testing {

using Ends = std::set<size_t>;

// The JSON grammar with the top level restricted to object, array, true,
// false and null.
class ReferenceJson {
 public:
  explicit ReferenceJson(std::string_view s) : s_(s) {}

  bool Accepts() {
    for (size_t a : Ws(0)) {
      Ends tops;
      if (a < s_.size() && (s_[a] == '{' || s_[a] == '[' || s_[a] == 't' ||
                            s_[a] == 'f' || s_[a] == 'n')) {
        tops = Value(a);
      }
      for (size_t b : tops) {
        for (size_t c : Ws(b)) {
          if (c == s_.size()) return true;
        }
      }
    }
    return false;
  }

 private:
  Ends Ws(size_t i) {
    while (i < s_.size() && std::string_view(" \t\n\r").find(s_[i]) !=
                                std::string_view::npos) {
      ++i;
    }
    return {i};
  }

  Ends Lit(size_t i, std::string_view word) {
    if (s_.substr(i, word.size()) == word) return {i + word.size()};
    return {};
  }

  Ends Value(size_t i) {
    auto key = std::make_pair('v', i);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Ends out;
    for (auto f : {&ReferenceJson::Object, &ReferenceJson::Array,
                   &ReferenceJson::String, &ReferenceJson::Number}) {
      Ends e = (this->*f)(i);
      out.insert(e.begin(), e.end());
    }
    for (std::string_view w : {"true", "false", "null"}) {
      Ends e = Lit(i, w);
      out.insert(e.begin(), e.end());
    }
    memo_[key] = out;
    return out;
  }

  // ws value ws
  Ends Element(size_t i) {
    Ends out;
    for (size_t a : Ws(i)) {
      for (size_t b : Value(a)) {
        Ends c = Ws(b);
        out.insert(c.begin(), c.end());
      }
    }
    return out;
  }

  // ws string ws ':' element
  Ends Member(size_t i) {
    Ends out;
    for (size_t a : Ws(i)) {
      for (size_t b : String(a)) {
        for (size_t c : Ws(b)) {
          for (size_t d : Lit(c, ":")) {
            Ends e = Element(d);
            out.insert(e.begin(), e.end());
          }
        }
      }
    }
    return out;
  }

  // item (',' item)*
  template <typename F>
  Ends SepBy(size_t i, F item) {
    Ends out;
    Ends frontier = (this->*item)(i);
    while (!frontier.empty()) {
      out.insert(frontier.begin(), frontier.end());
      Ends next;
      for (size_t a : frontier) {
        for (size_t b : Lit(a, ",")) {
          Ends c = (this->*item)(b);
          for (size_t x : c) {
            if (!out.count(x)) next.insert(x);
          }
        }
      }
      frontier = next;
    }
    return out;
  }

  Ends Container(size_t i, char open, char close, Ends (ReferenceJson::*item)(size_t)) {
    Ends out;
    for (size_t a : Lit(i, std::string(1, open))) {
      for (size_t b : Ws(a)) {
        Ends e = Lit(b, std::string(1, close));
        out.insert(e.begin(), e.end());
      }
      for (size_t b : SepBy(a, item)) {
        Ends e = Lit(b, std::string(1, close));
        out.insert(e.begin(), e.end());
      }
    }
    return out;
  }

  Ends Object(size_t i) {
    return Container(i, '{', '}', &ReferenceJson::Member);
  }
  Ends Array(size_t i) {
    return Container(i, '[', ']', &ReferenceJson::Element);
  }

  Ends String(size_t i) {
    if (i >= s_.size() || s_[i] != '"') return {};
    for (size_t j = i + 1; j < s_.size();) {
      const unsigned char c = s_[j];
      if (c == '"') return {j + 1};
      if (c < 0x20) return {};
      if (c != '\\') {
        ++j;
        continue;
      }
      if (j + 1 >= s_.size()) return {};
      const char e = s_[j + 1];
      if (std::string_view("\"\\/bfnrt").find(e) != std::string_view::npos) {
        j += 2;
      } else if (e == 'u') {
        if (j + 6 > s_.size()) return {};
        for (size_t k = j + 2; k < j + 6; ++k) {
          if (!std::isxdigit(static_cast<unsigned char>(s_[k]))) return {};
        }
        j += 6;
      } else {
        return {};
      }
    }
    return {};
  }

  Ends Digits(size_t i) {
    Ends out;
    while (i < s_.size() && s_[i] >= '0' && s_[i] <= '9') out.insert(++i);
    return out;
  }

  Ends Number(size_t i) {
    Ends ints;
    size_t a = i;
    if (a < s_.size() && s_[a] == '-') ++a;
    if (a < s_.size() && s_[a] == '0') {
      ints = {a + 1};
    } else if (a < s_.size() && s_[a] >= '1' && s_[a] <= '9') {
      ints = {*Digits(a).rbegin()};  // maximal munch: no number ends inside
    }
    Ends out;
    for (size_t b : ints) {
      Ends fracs = {b};
      for (size_t c : Lit(b, ".")) {
        Ends d = Digits(c);
        if (!d.empty()) fracs.insert(*d.rbegin());
      }
      for (size_t c : fracs) {
        out.insert(c);
        if (c < s_.size() && (s_[c] == 'e' || s_[c] == 'E')) {
          size_t d = c + 1;
          if (d < s_.size() && (s_[d] == '+' || s_[d] == '-')) ++d;
          Ends e = Digits(d);
          if (!e.empty()) out.insert(*e.rbegin());
        }
      }
    }
    return out;
  }

  std::string_view s_;
  std::map<std::pair<char, size_t>, Ends> memo_;
};

inline bool ReferenceJsonAccepts(std::string_view s) {
  return ReferenceJson(s).Accepts();
}

// tinyC: a separate maximal-munch tokenizer and a set-based statement
// matcher over the token list.
class ReferenceTinyc {
 public:
  explicit ReferenceTinyc(std::string_view s) {
    size_t i = 0;
    while (i < s.size()) {
      const char c = s[i];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++i;
      } else if (c >= 'a' && c <= 'z') {
        size_t j = i;
        while (j < s.size() && s[j] >= 'a' && s[j] <= 'z') ++j;
        std::string word(s.substr(i, j - i));
        if (word.size() == 1) {
          tokens_.push_back("id");
        } else if (word == "do" || word == "while" || word == "if" ||
                   word == "else") {
          tokens_.push_back(word);
        } else {
          ok_ = false;
          return;
        }
        i = j;
      } else if (c >= '0' && c <= '9') {
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        tokens_.push_back("int");
      } else if (std::string_view("(){};=<+-").find(c) != std::string_view::npos) {
        tokens_.push_back(std::string(1, c));
        ++i;
      } else {
        ok_ = false;
        return;
      }
    }
  }

  bool Accepts() {
    if (!ok_) return false;
    return Stmt(0).count(tokens_.size()) > 0;
  }

 private:
  Ends Tok(size_t i, std::string_view t) {
    if (i < tokens_.size() && tokens_[i] == t) return {i + 1};
    return {};
  }

  template <typename... Parts>
  Ends Seq(Ends from, Parts... parts) {
    Ends cur = std::move(from);
    auto step = [&](auto part) {
      Ends next;
      for (size_t a : cur) {
        Ends e = part(a);
        next.insert(e.begin(), e.end());
      }
      cur = std::move(next);
    };
    (step(parts), ...);
    return cur;
  }

  Ends Stmt(size_t i) {
    if (auto it = stmt_memo_.find(i); it != stmt_memo_.end()) return it->second;
    stmt_memo_[i] = {};  // guards left recursion, which the grammar lacks
    auto tok = [this](std::string_view t) {
      return [this, t](size_t a) { return Tok(a, t); };
    };
    auto paren = [this](size_t a) { return Paren(a); };
    auto stmt = [this](size_t a) { return Stmt(a); };
    auto expr = [this](size_t a) { return Expr(a); };
    Ends out;
    auto add = [&out](const Ends &e) { out.insert(e.begin(), e.end()); };
    Ends if_part = Seq({i}, tok("if"), paren, stmt);
    add(if_part);
    add(Seq(if_part, tok("else"), stmt));
    add(Seq({i}, tok("while"), paren, stmt));
    add(Seq({i}, tok("do"), stmt, tok("while"), paren, tok(";")));
    // '{' stmt* '}'
    Ends inside = Tok(i, "{");
    Ends all = inside;
    while (!inside.empty()) {
      Ends next;
      for (size_t a : inside) {
        for (size_t b : Stmt(a)) {
          if (!all.count(b)) next.insert(b);
        }
      }
      all.insert(next.begin(), next.end());
      inside = next;
    }
    add(Seq(all, tok("}")));
    add(Tok(i, ";"));
    add(Seq({i}, expr, tok(";")));
    stmt_memo_[i] = out;
    return out;
  }

  Ends Paren(size_t i) {
    return Seq({i}, [this](size_t a) { return Tok(a, "("); },
               [this](size_t a) { return Expr(a); },
               [this](size_t a) { return Tok(a, ")"); });
  }

  Ends Expr(size_t i) {
    if (auto it = expr_memo_.find(i); it != expr_memo_.end()) return it->second;
    Ends out = Test(i);
    Ends assign = Seq({i}, [this](size_t a) { return Tok(a, "id"); },
                      [this](size_t a) { return Tok(a, "="); },
                      [this](size_t a) { return Expr(a); });
    out.insert(assign.begin(), assign.end());
    expr_memo_[i] = out;
    return out;
  }

  Ends Test(size_t i) {
    Ends out = Sum(i);
    Ends lt = Seq(Sum(i), [this](size_t a) { return Tok(a, "<"); },
                  [this](size_t a) { return Sum(a); });
    out.insert(lt.begin(), lt.end());
    return out;
  }

  // term (('+' | '-') term)*
  Ends Sum(size_t i) {
    Ends out = Term(i);
    Ends frontier = out;
    while (!frontier.empty()) {
      Ends next;
      for (size_t a : frontier) {
        for (std::string_view op : {"+", "-"}) {
          for (size_t b : Tok(a, op)) {
            for (size_t c : Term(b)) {
              if (!out.count(c)) next.insert(c);
            }
          }
        }
      }
      out.insert(next.begin(), next.end());
      frontier = next;
    }
    return out;
  }

  Ends Term(size_t i) {
    Ends out = Tok(i, "id");
    Ends n = Tok(i, "int");
    out.insert(n.begin(), n.end());
    Ends p = Paren(i);
    out.insert(p.begin(), p.end());
    return out;
  }

  std::vector<std::string> tokens_;
  bool ok_ = true;
  std::map<size_t, Ends> stmt_memo_;
  std::map<size_t, Ends> expr_memo_;
};

inline bool ReferenceTinycAccepts(std::string_view s) {
  return ReferenceTinyc(s).Accepts();
}

}  // namespace prefixfuzz::testing

#endif  // PREFIXFUZZ_TESTS_REFERENCE_RECOGNIZERS_H_
