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

#include "prefixfuzz/executor.h"

#include <exception>
#include <iostream>

namespace prefixfuzz {

Verdict ValidateInProcess(const Validator &validator, ByteSpan input,
                          ExecutionStats &stats) {
  ++stats.executions;
  try {
    return validator.Validate(input);
  } catch (const std::exception &e) {
    ++stats.panics;
    std::cerr << "prefixfuzz: subject '" << validator.name()
              << "' threw on input " << ToHex(input) << ": " << e.what()
              << "\n";
  } catch (...) {
    ++stats.panics;
    std::cerr << "prefixfuzz: subject '" << validator.name()
              << "' threw a non-standard exception on input " << ToHex(input)
              << "\n";
  }
  return Verdict::Incorrect();
}

}  // namespace prefixfuzz
