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

#include "prefixfuzz/corpus.h"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <string>
#include <system_error>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace prefixfuzz {
namespace fs = std::filesystem;
namespace {

constexpr size_t kHashHexLength = 64;

bool IsHashName(const std::string &name) {
  return name.size() == kHashHexLength &&
         std::all_of(name.begin(), name.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

absl::StatusOr<ByteArray> ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::InternalError(
        absl::StrCat("corpus I/O: cannot read ", path.string()));
  }
  return ByteArray(std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>());
}

}  // namespace

std::string ContentHash(ByteSpan input) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(input.data(), input.size(), digest, &length, EVP_sha256(),
             nullptr);
  return ToHex(ByteSpan(digest, length));
}

absl::StatusOr<bool> DedupAndStore(const fs::path &dir, ByteSpan input) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    return absl::InternalError(absl::StrCat(
        "corpus I/O: cannot create ", dir.string(), ": ", ec.message()));
  }
  const fs::path path = dir / ContentHash(input);
  if (fs::exists(path, ec)) {
    absl::StatusOr<ByteArray> existing = ReadFile(path);
    if (!existing.ok()) return existing.status();
    if (std::equal(existing->begin(), existing->end(), input.begin(),
                   input.end())) {
      return false;
    }
    return absl::InternalError(
        absl::StrCat("corpus I/O: ", path.string(),
                     " exists with different contents"));
  }
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char *>(input.data()),
              static_cast<std::streamsize>(input.size()));
    if (!out) {
      return absl::InternalError(
          absl::StrCat("corpus I/O: cannot write ", tmp.string()));
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    return absl::InternalError(absl::StrCat(
        "corpus I/O: cannot rename to ", path.string(), ": ", ec.message()));
  }
  return true;
}

absl::StatusOr<std::vector<ByteArray>> ReadCorpus(const fs::path &dir) {
  std::error_code ec;
  std::vector<fs::path> paths;
  for (fs::directory_iterator it(dir, ec), end; !ec && it != end;
       it.increment(ec)) {
    if (it->is_regular_file() && IsHashName(it->path().filename().string())) {
      paths.push_back(it->path());
    }
  }
  if (ec) {
    return absl::InternalError(absl::StrCat(
        "corpus I/O: cannot list ", dir.string(), ": ", ec.message()));
  }
  std::sort(paths.begin(), paths.end());
  std::vector<ByteArray> inputs;
  inputs.reserve(paths.size());
  for (const fs::path &p : paths) {
    absl::StatusOr<ByteArray> bytes = ReadFile(p);
    if (!bytes.ok()) return bytes.status();
    inputs.push_back(*std::move(bytes));
  }
  return inputs;
}

CorpusSummary Summarize(std::span<const ByteArray> inputs) {
  absl::flat_hash_set<std::string> distinct;
  CorpusSummary summary;
  size_t total = 0;
  for (const ByteArray &input : inputs) {
    if (!distinct.insert(AsString(input)).second) continue;
    summary.max_len = std::max(summary.max_len, input.size());
    total += input.size();
  }
  summary.unique = distinct.size();
  if (summary.unique > 0) {
    summary.mean_len = static_cast<double>(total) / summary.unique;
  }
  return summary;
}

}  // namespace prefixfuzz
