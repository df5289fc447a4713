// Copyright 2026 The SWLE Authors
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

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace swle {

// Canonical byte encoding used for signing and digests. Integers are
// little-endian and fixed width; lists carry a u32 length prefix. The full
// layout of every signed structure is in docs/wire_format.md.

class Encoder {
 public:
  Encoder& u8(std::uint8_t v);
  Encoder& u32(std::uint32_t v);
  Encoder& u64(std::uint64_t v);
  Encoder& u32_list(std::span<const std::uint32_t> values);
  Encoder& bytes(std::span<const std::uint8_t> raw);

  const std::vector<std::uint8_t>& buffer() const { return buf_; }
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Decoder {
 public:
  explicit Decoder(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  std::vector<std::uint32_t> u32_list(std::uint32_t max_len);
  std::span<const std::uint8_t> bytes(std::size_t len);
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t len) const;

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

/// FNV-1a over the buffer followed by a splitmix finalizer. Used for proposal
/// digests and by the simulation authenticator; not collision resistant
/// against an adversary outside the simulation.
std::uint64_t hash64(std::span<const std::uint8_t> data, std::uint64_t key = 0);

}  // namespace swle
