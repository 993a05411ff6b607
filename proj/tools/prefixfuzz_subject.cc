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

// Runs a built-in subject as a standalone program: reads the input from
// stdin and answers through the exit-code protocol.
//
//   prefixfuzz_subject hello < input; echo $?

#include <cstdio>
#include <iostream>
#include <iterator>
#include <memory>
#include <string>

#include "prefixfuzz/subjects.h"
#include "prefixfuzz/verdict.h"

int main(int argc, char **argv) {
  using namespace prefixfuzz;
  // Outside the protocol's 0-3 so a usage error is never read as a verdict.
  constexpr int kUsageError = 64;
  if (argc != 2) {
    std::cerr << "usage: prefixfuzz_subject <subject>\n";
    return kUsageError;
  }
  const SubjectInfo *info = SubjectRegistry::BuiltIn().Find(argv[1]);
  if (info == nullptr) {
    std::cerr << "unknown subject '" << argv[1] << "'\n";
    return kUsageError;
  }
  std::string input((std::istreambuf_iterator<char>(std::cin)),
                    std::istreambuf_iterator<char>());
  const std::unique_ptr<Validator> validator = info->make();
  const EncodedVerdict encoded =
      EncodeVerdict(validator->Validate(AsBytes(input)));
  std::cerr << encoded.stderr_text;
  return encoded.exit_status;
}
