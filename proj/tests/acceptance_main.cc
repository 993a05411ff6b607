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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Pass --update-golden to rewrite the golden trace
// digests instead of checking them.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "prefixfuzz/campaign.h"
#include "prefixfuzz/conformance.h"
#include "prefixfuzz/corpus.h"
#include "prefixfuzz/explorer.h"
#include "prefixfuzz/subjects.h"
#include "prefixfuzz/symbol.h"
#include "prefixfuzz/trie.h"
#include "trie_oracle.h"

namespace prefixfuzz {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failure messages for one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string &what) {
    if (!ok && failures_.size() < 10) failures_.push_back(what);
    failed_ |= !ok;
  }
  bool failed() const { return failed_; }
  const std::vector<std::string> &failures() const { return failures_; }

 private:
  bool failed_ = false;
  std::vector<std::string> failures_;
};

// A corpus directory produced during the run, with the subject that must
// accept every file in it.
struct ProducedCorpus {
  fs::path dir;
  std::string subject;
};

class Suite {
 public:
  Suite(fs::path work, fs::path golden, bool update_golden)
      : work_(std::move(work)),
        golden_(std::move(golden)),
        update_golden_(update_golden) {}

  int Run() {
    Criterion(1, "jpeg_marker trace reproduction", [this](Check &c) { C1(c); });
    Criterion(2, "execution bound on literal subjects",
              [this](Check &c) { C2(c); });
    Criterion(3, "hello returns HELLO within the quadratic bound",
              [this](Check &c) { C3(c); });
    Criterion(4, "failure-index rewind with oapprox 2",
              [this](Check &c) { C4(c); });
    Criterion(5, "json_subset feedback vs random baseline",
              [this](Check &c) { C5(c); });
    Criterion(6, "trie oracle equivalence and token bound",
              [this](Check &c) { C6(c); });
    Criterion(8, "determinism on all subjects", [this](Check &c) { C8(c); });
    Criterion(9, "conformance of built-in subjects",
              [this](Check &c) { C9(c); });
    // Last, so that it covers every corpus written above.
    Criterion(7, "soundness round-trip of all corpora",
              [this](Check &c) { C7(c); });
    std::cout << (failed_ == 0 ? "ALL PASS" : absl::StrCat(failed_, " FAILED"))
              << "\n";
    return failed_ == 0 ? 0 : 1;
  }

 private:
  void Criterion(int n, std::string_view title,
                 const std::function<void(Check &)> &body) {
    Check check;
    details_.clear();
    const Clock::time_point start = Clock::now();
    body(check);
    const double seconds = SecondsSince(start);
    std::cout << (check.failed() ? "FAIL" : "PASS") << " criterion " << n
              << ": " << title << " ("
              << absl::StrFormat("%.2fs", seconds) << ")"
              << (details_.empty() ? "" : "; " + details_) << "\n";
    for (const std::string &f : check.failures()) {
      std::cout << "    " << f << "\n";
    }
    std::cout.flush();
    failed_ += check.failed();
  }

  void Detail(const std::string &text) {
    if (!details_.empty()) details_ += ", ";
    details_ += text;
  }

  // Stores a generated input so that criterion 7 re-validates it.
  void Keep(const std::string &subject, std::string_view group,
            ByteSpan input, Check &c) {
    const fs::path dir = work_ / "generated" / group;
    if (kept_.insert(dir.string()).second) produced_.push_back({dir, subject});
    absl::StatusOr<bool> stored = DedupAndStore(dir, input);
    c.Expect(stored.ok(), "cannot store generated input: " +
                              stored.status().ToString());
  }

  std::unique_ptr<Validator> Make(const std::string &name) {
    const SubjectInfo *info = SubjectRegistry::BuiltIn().Find(name);
    return info == nullptr ? nullptr : info->make();
  }

  void C1(Check &c) {
    std::unique_ptr<Validator> jpeg = Make("jpeg_marker");
    ExplorerConfig config;  // full byte alphabet
    double slowest = 0;
    uint64_t backtracks = 0;
    for (uint64_t seed = 1; seed <= 10; ++seed) {
      InProcessExecutor executor(*jpeg);
      Rng rng(seed);
      std::ostringstream trace;
      const Clock::time_point start = Clock::now();
      absl::StatusOr<GenerateResult> r =
          Generate(executor, config, rng, {}, &trace);
      const double seconds = SecondsSince(start);
      slowest = std::max(slowest, seconds);
      const std::string tag = absl::StrCat("seed ", seed, ": ");
      if (!r.ok()) {
        c.Expect(false, tag + r.status().ToString());
        continue;
      }
      c.Expect(seconds < 10.0, tag + absl::StrCat("took ", seconds, " s"));
      c.Expect(r->input.size() >= 4 &&
                   ToHex(ByteSpan(r->input).first(4)) == "ffd8ffe0",
               tag + "result " + ToHex(r->input));
      c.Expect(jpeg->Validate(r->input).is_complete(), tag + "not complete");
      c.Expect(HasBacktrackPastAcceptedByte(trace.str()),
               tag + "no backtrack past an accepted byte in the trace");
      backtracks += r->backtracks;
      Keep("jpeg_marker", "c1_jpeg_marker", r->input, c);
    }
    Detail(absl::StrFormat("slowest seed %.2fs", slowest));
    Detail(absl::StrCat("mean backtracks ", backtracks / 10));
  }

  // True if some "B <hex> <len>" pops a symbol that an earlier
  // "V <len> <hex> incomplete extended" line had accepted.
  static bool HasBacktrackPastAcceptedByte(const std::string &trace) {
    std::set<std::pair<std::string, std::string>> accepted;
    for (absl::string_view line : absl::StrSplit(trace, '\n')) {
      std::vector<std::string> f = absl::StrSplit(line, ' ');
      if (f.size() == 5 && f[0] == "V" && f[3] == "incomplete" &&
          f[4] == "extended") {
        accepted.insert({f[1], f[2]});
      } else if (f.size() == 3 && f[0] == "B" &&
                 accepted.contains({f[2], f[1]})) {
        return true;
      }
    }
    return false;
  }

  void C2(Check &c) {
    const size_t alphabet = PrintableAlphabet().size();
    ExplorerConfig config;
    config.alphabet = PrintableAlphabet();
    uint64_t worst_margin = 0;
    for (const std::string target : {"abc", "HELLO", "x9{Q ~|a"}) {
      const size_t len = target.size();
      const uint64_t bound = alphabet * len + alphabet;
      std::unique_ptr<Validator> subject = MakeLiteralSubject(target);
      uint64_t worst = 0;
      for (uint64_t seed = 1; seed <= 100; ++seed) {
        InProcessExecutor executor(*subject);
        Rng rng(seed);
        absl::StatusOr<GenerateResult> r = Generate(executor, config, rng);
        const std::string tag = absl::StrCat("L=", len, " seed ", seed, ": ");
        if (!r.ok()) {
          c.Expect(false, tag + r.status().ToString());
          continue;
        }
        c.Expect(AsString(r->input) == target, tag + "wrong result");
        c.Expect(r->validations <= bound,
                 tag + absl::StrCat(r->validations, " > ", bound));
        c.Expect(executor.stats().executions == r->validations,
                 tag + "validation count disagrees with the executor");
        worst = std::max(worst, r->validations);
        if (seed == 1) Keep(std::string(subject->name()), "c2_" + target, r->input, c);
      }
      Detail(absl::StrCat("L=", len, " max ", worst, "/", bound));
      worst_margin = std::max(worst_margin, worst);
    }
  }

  void C3(Check &c) {
    std::unique_ptr<Validator> hello = Make("hello");
    ExplorerConfig config;
    config.alphabet = PrintableAlphabet();
    const uint64_t bound = 100 * 3 + 100 * 100 + 500;
    uint64_t worst = 0;
    const Clock::time_point start = Clock::now();
    for (uint64_t seed = 1; seed <= 100; ++seed) {
      InProcessExecutor executor(*hello);
      Rng rng(seed);
      absl::StatusOr<GenerateResult> r = Generate(executor, config, rng);
      const std::string tag = absl::StrCat("seed ", seed, ": ");
      if (!r.ok()) {
        c.Expect(false, tag + r.status().ToString());
        continue;
      }
      c.Expect(AsString(r->input) == "HELLO", tag + AsString(r->input));
      c.Expect(r->validations <= bound,
               tag + absl::StrCat(r->validations, " > ", bound));
      worst = std::max(worst, r->validations);
      Keep("hello", "c3_hello", r->input, c);
    }
    const double seconds = SecondsSince(start);
    c.Expect(seconds < 5.0, absl::StrCat("took ", seconds, " s"));
    Detail(absl::StrCat("max ", worst, "/", bound, " validations"));
  }

  // One line per seed: seed, validations, result hex, trace SHA-256.
  std::string IndexedJpegDigests(Check &c, uint64_t *rewinds) {
    std::unique_ptr<Validator> jpeg = Make("jpeg_marker_indexed");
    ExplorerConfig config;
    config.oapprox = 2;
    std::string out;
    for (uint64_t seed = 1; seed <= 10; ++seed) {
      InProcessExecutor executor(*jpeg);
      Rng rng(seed);
      std::ostringstream trace;
      absl::StatusOr<GenerateResult> r =
          Generate(executor, config, rng, {}, &trace);
      const std::string tag = absl::StrCat("seed ", seed, ": ");
      if (!r.ok()) {
        c.Expect(false, tag + r.status().ToString());
        continue;
      }
      c.Expect(jpeg->Validate(r->input).is_complete(),
               tag + "result is not a valid frame");
      *rewinds += r->rewinds;
      absl::StrAppend(&out, seed, " ", r->validations, " ", ToHex(r->input),
                      " ", ContentHash(AsBytes(trace.str())), "\n");
      Keep("jpeg_marker_indexed", "c4_jpeg_marker_indexed", r->input, c);
    }
    return out;
  }

  void C4(Check &c) {
    std::unique_ptr<Validator> jpeg = Make("jpeg_marker_indexed");
    InProcessExecutor executor(*jpeg);
    ExplorerConfig config;
    config.oapprox = 2;
    auto table = std::make_shared<SymbolTable>(config.alphabet,
                                               config.symbol_cap);
    absl::StatusOr<ExplorationState> state = ExplorationState::Create(table);
    c.Expect(state.ok(), "cannot create state");
    if (!state.ok()) return;
    // Drive the state through 0xff then 0xe1 with the subject's answers.
    for (uint8_t byte : {uint8_t{0xff}, uint8_t{0xe1}}) {
      const auto choices = state->choices();
      const Symbol want(byte);
      auto it = std::find(choices.begin(), choices.end(), want);
      if (it == choices.end()) {
        c.Expect(false, "symbol not available");
        return;
      }
      Symbol tried = state->TakeChoice(it - choices.begin());
      ByteArray candidate = state->prefix();
      candidate.push_back(byte);
      absl::StatusOr<Verdict> v = executor.Execute(candidate);
      if (byte == 0xe1) {
        c.Expect(v.ok() && *v == Verdict::IncorrectAt(0),
                 "0xff 0xe1 was not answered Fail(0)");
      }
      absl::StatusOr<Transition> t = ApplyVerdict(*state, tried, *v, config);
      if (byte == 0xe1) {
        c.Expect(t.ok() && t->kind == Transition::Kind::kRewound &&
                     t->rewound_to == 0,
                 "expected a rewind to offset 0");
      }
    }
    const absl::StatusOr<std::vector<Symbol>> two =
        Symbols(config.alphabet, 2);
    c.Expect(state->active_length() == 2 && state->active_alphabet() == *two,
             "active alphabet is not symbols(alpha, 2)");
    c.Expect(state->prefix().empty(), "prefix was not cut to offset 0");
    Detail(absl::StrCat("active alphabet ", state->active_alphabet().size(),
                        " symbols"));

    uint64_t rewinds = 0;
    const std::string first = IndexedJpegDigests(c, &rewinds);
    uint64_t again_rewinds = 0;
    const std::string second = IndexedJpegDigests(c, &again_rewinds);
    c.Expect(first == second, "traces differ between two identical runs");
    c.Expect(rewinds > 0, "no rewind happened in any run");
    const fs::path golden = golden_ / "jpeg_marker_indexed_oapprox2.txt";
    if (update_golden_) {
      std::ofstream(golden, std::ios::binary) << first;
      Detail("golden updated");
    } else {
      c.Expect(fs::exists(golden), "missing golden file " + golden.string());
      std::ifstream in(golden, std::ios::binary);
      std::stringstream expected;
      expected << in.rdbuf();
      c.Expect(expected.str() == first,
               "trace digests differ from " + golden.string() + ":\n" + first);
    }
    Detail(absl::StrCat("rewinds ", rewinds));
  }

  void C5(Check &c) {
    std::unique_ptr<Validator> json = Make("json_subset");
    std::string summary;
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      InProcessExecutor executor(*json);
      CampaignConfig config;
      config.explorer.alphabet = PrintableAlphabet();
      config.seed = seed;
      config.budget_validations = 100000;
      config.corpus_dir = work_ / "c5" / std::to_string(seed);
      absl::StatusOr<ModeComparison> m = CompareModes(executor, config);
      const std::string tag = absl::StrCat("seed ", seed, ": ");
      if (!m.ok()) {
        c.Expect(false, tag + m.status().ToString());
        continue;
      }
      produced_.push_back(
          {config.corpus_dir / "failure_feedback" / "corpus", "json_subset"});
      produced_.push_back(
          {config.corpus_dir / "random_baseline" / "corpus", "json_subset"});
      c.Expect(m->feedback.total_validations == 100000 &&
                   m->baseline.total_validations == 100000,
               tag + "budgets differ");
      c.Expect(m->feedback.unique_valid >= 50,
               tag + absl::StrCat("feedback ", m->feedback.unique_valid));
      c.Expect(m->baseline.unique_valid <= 5,
               tag + absl::StrCat("baseline ", m->baseline.unique_valid));
      absl::StrAppend(&summary, seed == 1 ? "" : " ", m->feedback.unique_valid,
                      "/", m->baseline.unique_valid);
    }
    Detail("feedback/baseline unique_valid " + summary);
  }

  void C6(Check &c) {
    Rng rng(20260601);
    size_t mismatches = 0;
    for (int i = 0; i < 10000; ++i) {
      testing::TrieCase tc = testing::RandomTrieCase(rng);
      TokenTrie trie;
      for (const std::string &t : tc.tokens) {
        c.Expect(trie.Insert(t).ok(), "insert failed");
      }
      const TrieMatch got = trie.Match(tc.input);
      const TrieMatch want = testing::OracleMatch(tc.tokens, tc.input);
      if (!(got == want)) {
        ++mismatches;
        c.Expect(false, "case " + std::to_string(i) + " input '" + tc.input +
                            "' disagrees with the oracle");
      }
    }
    Detail(absl::StrCat("10000 cases, ", mismatches, " mismatches"));

    // Token construction: every tinyC token, alone and through the full
    // lexer trie, over the printable alphabet.
    const ByteArray printable = PrintableAlphabet();
    ExplorerConfig config;
    config.alphabet = printable;
    const std::vector<std::string> tokens = {"do", "while", "if", "else", "(",
                                             ")",  "{",     "}",  ";",    "=",
                                             "<",  "+",     "-"};
    double worst_ratio = 0;
    auto check_token = [&](const TokenTrie &trie, const std::string &label,
                           const std::string *expected) {
      FunctionValidator subject("tinyc_token", [&trie](ByteSpan in) {
        return TokenValidate(trie, in);
      });
      for (uint64_t seed = 1; seed <= 20; ++seed) {
        InProcessExecutor executor(subject);
        Rng r(seed);
        absl::StatusOr<GenerateResult> g = Generate(executor, config, r);
        const std::string tag = absl::StrCat(label, " seed ", seed, ": ");
        if (!g.ok()) {
          c.Expect(false, tag + g.status().ToString());
          continue;
        }
        const std::string got = AsString(g->input);
        if (expected != nullptr) c.Expect(got == *expected, tag + got);
        // The empty-input probe and the final re-validation are not part of
        // building the token.
        const uint64_t used = g->validations - 2;
        const uint64_t bound = printable.size() * got.size();
        c.Expect(used <= bound, tag + absl::StrCat(used, " > ", bound));
        worst_ratio = std::max(worst_ratio, static_cast<double>(used) /
                                                static_cast<double>(bound));
        Keep("tinyc_token", "c6_tinyc_token", g->input, c);
      }
    };
    for (const std::string &token : tokens) {
      TokenTrie single{token};
      check_token(single, token, &token);
    }
    check_token(TinycTokenTrie(), "lexer", nullptr);
    Detail(absl::StrFormat("worst validations/(|a|*L) %.2f", worst_ratio));
  }

  void C8(Check &c) {
    size_t compared = 0;
    for (const SubjectInfo &info : SubjectRegistry::BuiltIn().subjects()) {
      for (CampaignMode mode :
           {CampaignMode::kFailureFeedback, CampaignMode::kRandomBaseline}) {
        std::vector<std::string> reports;
        std::vector<std::vector<ByteArray>> corpora;
        for (int run = 0; run < 2; ++run) {
          std::unique_ptr<Validator> v = info.make();
          InProcessExecutor executor(*v);
          const fs::path dir = work_ / "c8" / info.name /
                               std::string(ModeName(mode)) /
                               std::to_string(run);
          CampaignConfig config;
          config.explorer.alphabet =
              v->alphabet_hint().value_or(FullByteAlphabet());
          config.explorer.max_len = 64;
          config.seed = 7;
          config.budget_validations = 30000;
          config.corpus_dir = dir / "corpus";
          config.mode = mode;
          absl::StatusOr<CampaignReport> r = RunCampaign(executor, config);
          const std::string tag =
              absl::StrCat(info.name, " ", std::string(ModeName(mode)), ": ");
          if (!r.ok()) {
            c.Expect(false, tag + r.status().ToString());
            break;
          }
          c.Expect(WriteReport(dir, *r).ok(), tag + "cannot write report");
          produced_.push_back({config.corpus_dir, info.name});
          std::string files;
          for (const char *name : {"report.txt", "report.json"}) {
            std::ifstream in(dir / name, std::ios::binary);
            std::stringstream ss;
            ss << in.rdbuf();
            files += ss.str();
          }
          reports.push_back(files);
          absl::StatusOr<std::vector<ByteArray>> corpus =
              ReadCorpus(config.corpus_dir);
          c.Expect(corpus.ok(), tag + "cannot read corpus");
          corpora.push_back(corpus.ok() ? *corpus : std::vector<ByteArray>{});
        }
        if (reports.size() != 2) continue;
        const std::string tag =
            absl::StrCat(info.name, " ", std::string(ModeName(mode)), ": ");
        c.Expect(reports[0] == reports[1], tag + "reports differ");
        c.Expect(corpora[0] == corpora[1], tag + "corpora differ");
        ++compared;
      }
    }
    Detail(absl::StrCat(compared, " subject/mode pairs compared"));
  }

  void C9(Check &c) {
    size_t subjects = 0;
    size_t executions = 0;
    for (const SubjectInfo &info : SubjectRegistry::BuiltIn().subjects()) {
      std::unique_ptr<Validator> v = info.make();
      InProcessExecutor executor(*v);
      Rng rng(DeriveSeed(9, subjects));
      std::vector<ByteArray> samples = info.goldens;
      const std::vector<ByteArray> random = RandomPrefixSamples(
          info.goldens, v->alphabet_hint().value_or(FullByteAlphabet()), 1000,
          rng);
      samples.insert(samples.end(), random.begin(), random.end());
      absl::StatusOr<ConformanceReport> r = CheckConformance(executor, samples);
      if (!r.ok()) {
        c.Expect(false, info.name + ": " + r.status().ToString());
        continue;
      }
      for (const ConformanceViolation &violation : r->violations) {
        c.Expect(false, absl::StrCat(info.name, ": prefix ",
                                     ToHex(violation.prefix), " of ",
                                     ToHex(violation.sample), " answered ",
                                     violation.prefix_verdict.ToString()));
      }
      for (const ByteArray &g : info.goldens) {
        c.Expect(v->Validate(g).is_complete(),
                 info.name + ": golden " + ToHex(g) + " is not complete");
      }
      c.Expect(executor.stats().panics == 0, info.name + ": validator threw");
      ++subjects;
      executions += r->executions;
    }
    Detail(absl::StrCat(subjects, " subjects, ", executions, " executions"));
  }

  void C7(Check &c) {
    size_t files = 0;
    for (const ProducedCorpus &p : produced_) {
      std::unique_ptr<Validator> v;
      if (p.subject.starts_with("literal:")) {
        v = MakeLiteralSubject(p.subject.substr(8));
      } else {
        v = Make(p.subject);
      }
      if (v == nullptr) {
        c.Expect(false, "unknown subject " + p.subject);
        continue;
      }
      absl::StatusOr<std::vector<ByteArray>> corpus = ReadCorpus(p.dir);
      if (!corpus.ok()) {
        // A campaign that found nothing may leave an empty directory.
        c.Expect(fs::is_directory(p.dir), corpus.status().ToString());
        continue;
      }
      ExecutionStats stats;
      for (const ByteArray &input : *corpus) {
        const Verdict verdict = ValidateInProcess(*v, input, stats);
        c.Expect(verdict.is_complete(), p.subject + ": " + ToHex(input) +
                                            " re-validated " +
                                            verdict.ToString());
        ++files;
      }
      c.Expect(stats.panics == 0, p.subject + ": validator threw");
    }
    c.Expect(files > 0, "no corpus files were produced");
    Detail(absl::StrCat(files, " files in ", produced_.size(), " corpora"));
  }

  fs::path work_;
  fs::path golden_;
  bool update_golden_;
  int failed_ = 0;
  std::string details_;
  std::set<std::string> kept_;
  std::vector<ProducedCorpus> produced_;
};

}  // namespace
}  // namespace prefixfuzz

int main(int argc, char **argv) {
  bool update_golden = false;
  for (int i = 1; i < argc; ++i) {
    if (std::string_view(argv[i]) == "--update-golden") {
      update_golden = true;
    } else {
      std::cerr << "usage: prefixfuzz_acceptance [--update-golden]\n";
      return 64;
    }
  }
  namespace fs = std::filesystem;
  const fs::path work = fs::temp_directory_path() /
                        absl::StrCat("prefixfuzz_acceptance_", ::getpid());
  fs::remove_all(work);
  prefixfuzz::Suite suite(work, PREFIXFUZZ_GOLDEN_DIR, update_golden);
  const int status = suite.Run();
  if (status == 0) fs::remove_all(work);
  return status;
}
