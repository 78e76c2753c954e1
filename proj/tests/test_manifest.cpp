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

#include <string>

#include "doctest.h"
#include "loccusd/manifest.hpp"
#include "oracles.hpp"

using loccusd::git_blob_hash;
using loccusd::make_manifest;
using loccusd::RunManifest;
using loccusd::sha1_hex;

TEST_SUITE("manifest") {

TEST_CASE("sha1 reproduces the published digests") {
  CHECK(sha1_hex("") == oracles::kSha1Empty);
  CHECK(sha1_hex("abc") == oracles::kSha1Abc);
  CHECK(sha1_hex("The quick brown fox jumps over the lazy dog") == oracles::kSha1Fox);
  CHECK(sha1_hex(std::string(100, 'a')) == oracles::kSha1HundredA);
  // One full 64-byte block exercises the padding boundary.
  CHECK(sha1_hex(std::string(64, 'b')) == oracles::kSha1SixtyFourB);
}

TEST_CASE("the buffer and string overloads agree") {
  const std::string data = "loccusd manifest bytes\x01\x02";
  CHECK(sha1_hex(data.data(), data.size()) == sha1_hex(data));
  CHECK(sha1_hex(nullptr, 0) == oracles::kSha1Empty);
}

TEST_CASE("git blob hashing matches git hash-object") {
  CHECK(git_blob_hash("hello world\n") == oracles::kGitBlobHelloWorld);
  CHECK(git_blob_hash("") == oracles::kGitBlobEmpty);
}

TEST_CASE("manifests hash every reproducibility input and nothing else") {
  const RunManifest a = make_manifest("discriminate", "{\"trials\":1000}", 7);
  const RunManifest b = make_manifest("discriminate", "{\"trials\":1000}", 7);
  CHECK(a.command == "discriminate");
  CHECK(a.config_echo == "{\"trials\":1000}");
  CHECK(a.seed == 7);
  CHECK(a.input_hash == b.input_hash);
  CHECK(a.input_hash.size() == 40);

  const RunManifest other_seed = make_manifest("discriminate", "{\"trials\":1000}", 8);
  CHECK(other_seed.input_hash != a.input_hash);
  const RunManifest other_cfg = make_manifest("discriminate", "{\"trials\":1001}", 7);
  CHECK(other_cfg.input_hash != a.input_hash);
  const RunManifest other_cmd = make_manifest("sweep", "{\"trials\":1000}", 7);
  CHECK(other_cmd.input_hash != a.input_hash);
}

TEST_CASE("timestamps are RFC 3339 UTC and excluded from the hash") {
  const RunManifest m = make_manifest("optics", "{}", 0);
  REQUIRE(m.timestamp.size() == 20);
  CHECK(m.timestamp[4] == '-');
  CHECK(m.timestamp[7] == '-');
  CHECK(m.timestamp[10] == 'T');
  CHECK(m.timestamp[13] == ':');
  CHECK(m.timestamp[16] == ':');
  CHECK(m.timestamp[19] == 'Z');
  for (const size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u, 11u, 12u, 14u, 15u, 17u, 18u})
    CHECK((m.timestamp[i] >= '0' && m.timestamp[i] <= '9'));
}

}  // TEST_SUITE
