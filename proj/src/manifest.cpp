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

#include "loccusd/manifest.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <ctime>

namespace loccusd {
namespace {

inline uint32_t rotl32(uint32_t v, int n) { return (v << n) | (v >> (32 - n)); }

// Block-at-a-time SHA-1 (RFC 3174). Inputs here are short command configs,
// so simplicity beats throughput.
struct Sha1 {
  std::array<uint32_t, 5> h = {0x67452301u, 0xefcdab89u, 0x98badcfeu,
                               0x10325476u, 0xc3d2e1f0u};
  std::array<uint8_t, 64> block{};
  uint64_t total_bytes = 0;
  size_t fill = 0;

  void compress() {
    uint32_t w[80];
    for (int i = 0; i < 16; ++i)
      w[i] = static_cast<uint32_t>(block[static_cast<size_t>(4 * i)]) << 24 |
             static_cast<uint32_t>(block[static_cast<size_t>(4 * i + 1)]) << 16 |
             static_cast<uint32_t>(block[static_cast<size_t>(4 * i + 2)]) << 8 |
             static_cast<uint32_t>(block[static_cast<size_t>(4 * i + 3)]);
    for (int i = 16; i < 80; ++i)
      w[i] = rotl32(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
    uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4];
    for (int i = 0; i < 80; ++i) {
      uint32_t f, k;
      if (i < 20) {
        f = (b & c) | (~b & d);
        k = 0x5a827999u;
      } else if (i < 40) {
        f = b ^ c ^ d;
        k = 0x6ed9eba1u;
      } else if (i < 60) {
        f = (b & c) | (b & d) | (c & d);
        k = 0x8f1bbcdcu;
      } else {
        f = b ^ c ^ d;
        k = 0xca62c1d6u;
      }
      const uint32_t tmp = rotl32(a, 5) + f + e + k + w[i];
      e = d;
      d = c;
      c = rotl32(b, 30);
      b = a;
      a = tmp;
    }
    h[0] += a;
    h[1] += b;
    h[2] += c;
    h[3] += d;
    h[4] += e;
  }

  void update(const uint8_t* data, size_t len) {
    total_bytes += len;
    while (len > 0) {
      const size_t take = std::min(len, block.size() - fill);
      std::memcpy(block.data() + fill, data, take);
      fill += take;
      data += take;
      len -= take;
      if (fill == block.size()) {
        compress();
        fill = 0;
      }
    }
  }

  std::string finish() {
    const uint64_t bit_len = total_bytes * 8;
    const uint8_t one = 0x80;
    update(&one, 1);
    const uint8_t zero = 0x00;
    while (fill != 56) update(&zero, 1);
    uint8_t len_be[8];
    for (int i = 0; i < 8; ++i)
      len_be[i] = static_cast<uint8_t>(bit_len >> (8 * (7 - i)));
    update(len_be, 8);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(40);
    for (const uint32_t word : h)
      for (int shift = 28; shift >= 0; shift -= 4)
        out.push_back(hex[(word >> shift) & 0xf]);
    return out;
  }
};

}  // namespace

std::string sha1_hex(const void* data, size_t len) {
  Sha1 state;
  state.update(static_cast<const uint8_t*>(data), len);
  return state.finish();
}

std::string sha1_hex(const std::string& data) {
  return sha1_hex(data.data(), data.size());
}

std::string git_blob_hash(const std::string& content) {
  std::string framed = "blob " + std::to_string(content.size());
  framed.push_back('\0');
  framed += content;
  return sha1_hex(framed);
}

RunManifest make_manifest(const std::string& command,
                          const std::string& config_echo, uint64_t seed) {
  RunManifest m;
  m.command = command;
  m.config_echo = config_echo;
  m.seed = seed;
  m.input_hash = git_blob_hash(command + "\n" + config_echo + "\n" +
                               std::to_string(seed) + "\n");
  char buf[32];
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  m.timestamp = buf;
  return m;
}

}  // namespace loccusd
