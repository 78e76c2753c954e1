// Copyright 2026 The loccusd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace loccusd {

// Lowercase hex SHA-1 digest of a byte buffer.
std::string sha1_hex(const void* data, size_t len);
std::string sha1_hex(const std::string& data);

// Hash of `content` as git computes it for a blob object:
// sha1("blob <decimal length>\0" + content).
std::string git_blob_hash(const std::string& content);

// Identifies one command invocation. Everything that influences the
// numbers lands in `input_hash`, so equal hashes promise byte-identical
// output. The timestamp is display-only: it is excluded from the hash and
// from written output files, which must not change across re-runs.
struct RunManifest {
  std::string command;
  std::string config_echo;  // canonical serialization of all effective flags
  uint64_t seed = 0;
  std::string input_hash;
  std::string timestamp;  // UTC, RFC 3339
};

RunManifest make_manifest(const std::string& command,
                          const std::string& config_echo, uint64_t seed);

}  // namespace loccusd

