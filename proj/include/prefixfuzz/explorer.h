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

// Failure-feedback input generation.
//
// The explorer grows a prefix one symbol at a time. Each candidate
// `prefix + symbol` is sent to the subject:
//
//   Complete         the candidate is returned.
//   Incomplete       the symbol is kept, and the symbols rejected at this
//                    position are remembered with it.
//   Incorrect        the symbol is marked as seen at this position.
//   Incorrect@n      the prefix is cut back to n bytes and the next symbols
//                    tried there may be up to `oapprox` bytes long, since the
//                    subject may report a failure earlier than it occurred.
//
// When every symbol has been seen at the frontier, the explorer backtracks:
// it pops the last kept symbol and resumes at the position before it with
// that symbol marked as seen.

#ifndef PREFIXFUZZ_EXPLORER_H_
#define PREFIXFUZZ_EXPLORER_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "prefixfuzz/bytes.h"
#include "prefixfuzz/executor.h"
#include "prefixfuzz/symbol.h"
#include "prefixfuzz/verdict.h"

namespace prefixfuzz {

inline constexpr int kMaxOverapproximation = 2;

struct ExplorerConfig {
  // Ordered, duplicate-free.
  ByteArray alphabet = FullByteAlphabet();
  // Longest repair symbol tried after a failure index, in [1, 2]. 1 trusts
  // failure indices fully.
  int oapprox = 1;
  // Candidates longer than this abandon the attempt and restart it.
  size_t max_len = 1000;
  uint64_t rng_seed = 0;
  // Per Generate() call.
  uint64_t max_validations = 5'000'000;
  uint64_t max_restarts = 1000;
  size_t symbol_cap = kDefaultSymbolCap;
  // Generate() stops with kDeadlineExceeded once this passes.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

absl::Status ValidateExplorerConfig(const ExplorerConfig &config);

using SymbolSet = absl::flat_hash_set<Symbol>;

// One kept symbol and the symbols that had been rejected at its position
// before it was kept.
struct Step {
  Symbol symbol;
  SymbolSet seen;
};

// Lazily built Symbols(alphabet, r) lists, shared by states of one run.
class SymbolTable {
 public:
  SymbolTable(ByteArray alphabet, size_t cap)
      : alphabet_(std::move(alphabet)), cap_(cap) {}

  absl::StatusOr<const std::vector<Symbol> *> Get(int max_len);
  const ByteArray &alphabet() const { return alphabet_; }

 private:
  ByteArray alphabet_;
  size_t cap_;
  std::map<int, std::vector<Symbol>> tables_;
};

struct Transition {
  enum class Kind { kDone, kExtended, kRejected, kRewound };
  Kind kind;
  // kRewound: prefix length after the cut.
  size_t rewound_to = 0;
};

// Invariant: the base prefix followed by the step symbols equals prefix().
class ExplorationState {
 public:
  // A fresh state extending the fixed prefix `base`, with single bytes
  // active.
  static absl::StatusOr<ExplorationState> Create(
      std::shared_ptr<SymbolTable> table, ByteArray base = {});

  const ByteArray &prefix() const { return prefix_; }
  size_t base_size() const { return base_size_; }
  const std::vector<Step> &steps() const { return steps_; }
  const SymbolSet &pending_seen() const { return pending_seen_; }
  // The active alphabet is Symbols(alphabet, active_length()).
  int active_length() const { return active_length_; }
  const std::vector<Symbol> &active_alphabet() const { return *active_; }

  // Active symbols not in pending_seen(), in no particular order.
  std::span<const Symbol> choices() const { return pool_; }
  // Removes choices()[i] and returns it.
  Symbol TakeChoice(size_t i);

 private:
  friend absl::StatusOr<std::vector<Symbol>> Backtrack(ExplorationState &);
  friend absl::StatusOr<Transition> ApplyVerdict(ExplorationState &,
                                                 const Symbol &,
                                                 const Verdict &,
                                                 const ExplorerConfig &);

  ExplorationState(std::shared_ptr<SymbolTable> table, ByteArray base)
      : table_(std::move(table)),
        prefix_(std::move(base)),
        base_size_(prefix_.size()) {}

  absl::Status SetActiveLength(int length);
  void RebuildPool();
  void DropFromPool(const Symbol &symbol);

  std::shared_ptr<SymbolTable> table_;
  ByteArray prefix_;
  size_t base_size_ = 0;
  std::vector<Step> steps_;
  SymbolSet pending_seen_;
  int active_length_ = 1;
  const std::vector<Symbol> *active_ = nullptr;
  std::vector<Symbol> pool_;
  std::optional<Symbol> last_taken_;
};

// Pops kept symbols until the frontier has an untried choice again. Returns
// the popped symbols, most recent first. Fails with kNotFound (search
// exhausted) when nothing is left to pop.
absl::StatusOr<std::vector<Symbol>> Backtrack(ExplorationState &state);

// Folds the verdict for `state.prefix() + tried` into the state. `tried` must
// not be in pending_seen(). Fails with kOutOfRange if the failure index lies
// beyond the validated candidate.
absl::StatusOr<Transition> ApplyVerdict(ExplorationState &state,
                                        const Symbol &tried,
                                        const Verdict &verdict,
                                        const ExplorerConfig &config);

struct GenerateResult {
  ByteArray input;
  uint64_t validations = 0;
  uint64_t restarts = 0;
  uint64_t backtracks = 0;
  uint64_t rewinds = 0;
};

// Searches for an input the subject answers Complete, starting from
// `start_prefix` (which must be answered Incomplete when nonempty). The result
// is re-validated before it is returned.
//
// When `trace` is set, one line is written per event:
//   V <prefix_len> <symbol_hex> <verdict> <transition>   a validation
//   B <symbol_hex> <prefix_len>                          a backtrack pop
//   R <restart_number>                                   a max_len restart
//
// Errors:
//   kInvalidArgument    bad config or start prefix.
//   kNotFound           the search space under the alphabet is exhausted.
//   kResourceExhausted  validation or restart budget spent.
//   kOutOfRange         the subject reported an index past its input.
//   kAborted            the result did not re-validate as Complete.
//   kDeadlineExceeded   config.deadline passed.
// Executor errors propagate. When `progress` is set it receives the counters
// on every outcome.
absl::StatusOr<GenerateResult> Generate(Executor &executor,
                                        const ExplorerConfig &config, Rng &rng,
                                        ByteSpan start_prefix = {},
                                        std::ostream *trace = nullptr,
                                        GenerateResult *progress = nullptr);

}  // namespace prefixfuzz

#endif  // PREFIXFUZZ_EXPLORER_H_
