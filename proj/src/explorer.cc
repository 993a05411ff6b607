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

#include "prefixfuzz/explorer.h"

#include <algorithm>
#include <bitset>
#include <chrono>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace prefixfuzz {

absl::Status ValidateExplorerConfig(const ExplorerConfig &config) {
  if (config.alphabet.empty()) {
    return absl::InvalidArgumentError("alphabet is empty");
  }
  std::bitset<256> present;
  for (uint8_t b : config.alphabet) {
    if (present.test(b)) {
      return absl::InvalidArgumentError(
          absl::StrCat("alphabet repeats byte 0x", ToHex(ByteSpan(&b, 1))));
    }
    present.set(b);
  }
  if (config.oapprox < 1 || config.oapprox > kMaxOverapproximation) {
    return absl::InvalidArgumentError(
        absl::StrCat("oapprox must be 1 or 2, got ", config.oapprox));
  }
  if (config.max_len < 1) {
    return absl::InvalidArgumentError("max_len must be >= 1");
  }
  return absl::OkStatus();
}

absl::StatusOr<const std::vector<Symbol> *> SymbolTable::Get(int max_len) {
  if (auto it = tables_.find(max_len); it != tables_.end()) return &it->second;
  absl::StatusOr<std::vector<Symbol>> symbols =
      Symbols(alphabet_, max_len, cap_);
  if (!symbols.ok()) return symbols.status();
  return &tables_.emplace(max_len, *std::move(symbols)).first->second;
}

absl::StatusOr<ExplorationState> ExplorationState::Create(
    std::shared_ptr<SymbolTable> table, ByteArray base) {
  ExplorationState state(std::move(table), std::move(base));
  if (absl::Status s = state.SetActiveLength(1); !s.ok()) return s;
  state.RebuildPool();
  return state;
}

Symbol ExplorationState::TakeChoice(size_t i) {
  Symbol chosen = std::move(pool_[i]);
  pool_[i] = std::move(pool_.back());
  pool_.pop_back();
  last_taken_ = chosen;
  return chosen;
}

absl::Status ExplorationState::SetActiveLength(int length) {
  absl::StatusOr<const std::vector<Symbol> *> table = table_->Get(length);
  if (!table.ok()) return table.status();
  active_ = *table;
  active_length_ = length;
  return absl::OkStatus();
}

void ExplorationState::RebuildPool() {
  pool_.clear();
  last_taken_.reset();
  for (const Symbol &s : *active_) {
    if (!pending_seen_.contains(s)) pool_.push_back(s);
  }
}

void ExplorationState::DropFromPool(const Symbol &symbol) {
  if (last_taken_.has_value() && *last_taken_ == symbol) {
    last_taken_.reset();
    return;
  }
  auto it = std::find(pool_.begin(), pool_.end(), symbol);
  if (it != pool_.end()) {
    *it = std::move(pool_.back());
    pool_.pop_back();
  }
}

absl::StatusOr<std::vector<Symbol>> Backtrack(ExplorationState &state) {
  std::vector<Symbol> popped;
  do {
    if (state.steps_.empty()) {
      return absl::NotFoundError(absl::StrCat(
          "search exhausted: no untried symbol remains at or before offset ",
          state.prefix_.size()));
    }
    Step step = std::move(state.steps_.back());
    state.steps_.pop_back();
    state.prefix_.resize(state.prefix_.size() - step.symbol.size());
    state.pending_seen_ = std::move(step.seen);
    state.pending_seen_.insert(step.symbol);
    state.RebuildPool();
    popped.push_back(std::move(step.symbol));
  } while (state.pool_.empty());
  return popped;
}

absl::StatusOr<Transition> ApplyVerdict(ExplorationState &state,
                                        const Symbol &tried,
                                        const Verdict &verdict,
                                        const ExplorerConfig &config) {
  const size_t candidate_len = state.prefix_.size() + tried.size();
  switch (verdict.kind()) {
    case Verdict::Kind::kComplete:
      return Transition{Transition::Kind::kDone};

    case Verdict::Kind::kIncomplete: {
      state.prefix_.insert(state.prefix_.end(), tried.bytes().begin(),
                           tried.bytes().end());
      state.steps_.push_back(Step{tried, std::move(state.pending_seen_)});
      state.pending_seen_ = SymbolSet();
      if (absl::Status s = state.SetActiveLength(1); !s.ok()) return s;
      state.RebuildPool();
      return Transition{Transition::Kind::kExtended};
    }

    case Verdict::Kind::kIncorrect:
      break;
  }

  if (!verdict.failure_index().has_value()) {
    state.pending_seen_.insert(tried);
    state.DropFromPool(tried);
    return Transition{Transition::Kind::kRejected};
  }

  const size_t reported = *verdict.failure_index();
  if (reported > candidate_len) {
    return absl::OutOfRangeError(
        absl::StrCat("failure index ", reported, " exceeds the length ",
                     candidate_len, " of the validated input"));
  }
  // The fixed base prefix is never cut into.
  const size_t cut = std::max(reported, state.base_size_);
  const int repair_length = static_cast<int>(std::clamp<size_t>(
      candidate_len - cut, 1, static_cast<size_t>(config.oapprox)));

  if (cut >= state.prefix_.size()) {
    // The failure lies in the tried symbol itself: stay at the frontier.
    state.pending_seen_.insert(tried);
    if (repair_length == state.active_length_) {
      state.DropFromPool(tried);
    } else {
      if (absl::Status s = state.SetActiveLength(repair_length); !s.ok()) {
        return s;
      }
      state.RebuildPool();
    }
    return Transition{Transition::Kind::kRewound, state.prefix_.size()};
  }

  // Find the step covering byte `cut`.
  size_t start = state.base_size_;
  size_t k = 0;
  while (start + state.steps_[k].symbol.size() <= cut) {
    start += state.steps_[k].symbol.size();
    ++k;
  }
  if (start == cut) {
    // Step boundary: resume with the seen-set of that position, and with the
    // symbol kept there now counted as rejected.
    Step &step = state.steps_[k];
    state.pending_seen_ = std::move(step.seen);
    state.pending_seen_.insert(step.symbol);
    state.steps_.erase(state.steps_.begin() + k, state.steps_.end());
  } else {
    // The cut splits a multi-byte symbol. Its seen-set described whole
    // symbols at `start` and does not carry over to the fragment.
    Step &step = state.steps_[k];
    step.symbol = step.symbol.Head(cut - start);
    step.seen = SymbolSet();
    state.steps_.erase(state.steps_.begin() + k + 1, state.steps_.end());
    state.pending_seen_ = SymbolSet();
  }
  state.prefix_.resize(cut);
  state.pending_seen_.insert(tried);
  if (absl::Status s = state.SetActiveLength(repair_length); !s.ok()) return s;
  state.RebuildPool();
  return Transition{Transition::Kind::kRewound, cut};
}

namespace {

const char *TransitionName(Transition::Kind kind) {
  switch (kind) {
    case Transition::Kind::kDone:
      return "done";
    case Transition::Kind::kExtended:
      return "extended";
    case Transition::Kind::kRejected:
      return "rejected";
    case Transition::Kind::kRewound:
      return "rewound";
  }
  return "?";
}

// Fills `result` as it goes, so counters survive a failed search.
absl::Status GenerateInto(Executor &executor, const ExplorerConfig &config,
                          Rng &rng, ByteSpan start_prefix, std::ostream *trace,
                          GenerateResult &result) {
  if (absl::Status s = ValidateExplorerConfig(config); !s.ok()) return s;
  if (start_prefix.size() > config.max_len) {
    return absl::InvalidArgumentError(
        "invalid start prefix: longer than max_len");
  }

  auto execute = [&](ByteSpan input) -> absl::StatusOr<Verdict> {
    if (result.validations >= config.max_validations) {
      return absl::ResourceExhaustedError(
          absl::StrCat("attempt budget exhausted: ", result.validations,
                       " validations"));
    }
    if (config.deadline.has_value() &&
        std::chrono::steady_clock::now() >= *config.deadline) {
      return absl::DeadlineExceededError("wall-clock budget exhausted");
    }
    ++result.validations;
    return executor.Execute(input);
  };

  absl::StatusOr<Verdict> start_verdict = execute(start_prefix);
  if (!start_verdict.ok()) return start_verdict.status();
  if (trace) {
    *trace << "V " << start_prefix.size() << " - " << *start_verdict
           << " start\n";
  }
  if (start_prefix.empty()) {
    if (start_verdict->is_complete()) return absl::OkStatus();
    if (start_verdict->is_incorrect()) {
      return absl::NotFoundError(
          "search exhausted: the subject rejects the empty input");
    }
  } else if (!start_verdict->is_incomplete()) {
    return absl::InvalidArgumentError(
        absl::StrCat("invalid start prefix: answered ",
                     start_verdict->ToString(), ", expected incomplete"));
  }

  auto table = std::make_shared<SymbolTable>(config.alphabet,
                                             config.symbol_cap);
  const ByteArray base(start_prefix.begin(), start_prefix.end());
  absl::StatusOr<ExplorationState> state = ExplorationState::Create(table, base);
  if (!state.ok()) return state.status();

  ByteArray candidate;
  while (true) {
    if (state->choices().empty()) {
      absl::StatusOr<std::vector<Symbol>> popped = Backtrack(*state);
      if (!popped.ok()) return popped.status();
      result.backtracks += popped->size();
      if (trace) {
        size_t len = state->prefix().size();
        for (auto it = popped->rbegin(); it != popped->rend(); ++it) {
          len += it->size();
        }
        for (const Symbol &s : *popped) {
          len -= s.size();
          *trace << "B " << s.ToHex() << " " << len << "\n";
        }
      }
    }
    Symbol tried = state->TakeChoice(ChooseIndex(state->choices().size(), rng));
    if (state->prefix().size() + tried.size() > config.max_len) {
      if (result.restarts >= config.max_restarts) {
        return absl::ResourceExhaustedError(absl::StrCat(
            "attempt budget exhausted: ", result.restarts, " restarts"));
      }
      ++result.restarts;
      if (trace) *trace << "R " << result.restarts << "\n";
      state = ExplorationState::Create(table, base);
      if (!state.ok()) return state.status();
      continue;
    }

    candidate = state->prefix();
    candidate.insert(candidate.end(), tried.bytes().begin(),
                     tried.bytes().end());
    absl::StatusOr<Verdict> verdict = execute(candidate);
    if (!verdict.ok()) return verdict.status();
    const size_t prefix_len = state->prefix().size();
    absl::StatusOr<Transition> transition =
        ApplyVerdict(*state, tried, *verdict, config);
    if (!transition.ok()) return transition.status();
    if (trace) {
      *trace << "V " << prefix_len << " " << tried.ToHex() << " " << *verdict
             << " " << TransitionName(transition->kind);
      if (transition->kind == Transition::Kind::kRewound) {
        *trace << "@" << transition->rewound_to;
      }
      *trace << "\n";
    }
    if (transition->kind == Transition::Kind::kRewound) ++result.rewinds;
    if (transition->kind != Transition::Kind::kDone) continue;

    absl::StatusOr<Verdict> check = execute(candidate);
    if (!check.ok()) return check.status();
    if (!check->is_complete()) {
      return absl::AbortedError(absl::StrCat(
          "subject answered ", check->ToString(), " when re-validating ",
          ToHex(candidate), " which it had answered complete"));
    }
    result.input = std::move(candidate);
    return absl::OkStatus();
  }
}

}  // namespace

absl::StatusOr<GenerateResult> Generate(Executor &executor,
                                        const ExplorerConfig &config, Rng &rng,
                                        ByteSpan start_prefix,
                                        std::ostream *trace,
                                        GenerateResult *progress) {
  GenerateResult result;
  absl::Status status =
      GenerateInto(executor, config, rng, start_prefix, trace, result);
  if (progress != nullptr) *progress = result;
  if (!status.ok()) return status;
  return result;
}

}  // namespace prefixfuzz
