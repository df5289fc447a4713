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

#include "swle/codec.hpp"

#include <string>

namespace swle {

Encoder& Encoder::u8(std::uint8_t v) {
  buf_.push_back(v);
  return *this;
}

Encoder& Encoder::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  return *this;
}

Encoder& Encoder::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  return *this;
}

Encoder& Encoder::u32_list(std::span<const std::uint32_t> values) {
  u32(static_cast<std::uint32_t>(values.size()));
  for (auto v : values) u32(v);
  return *this;
}

Encoder& Encoder::bytes(std::span<const std::uint8_t> raw) {
  buf_.insert(buf_.end(), raw.begin(), raw.end());
  return *this;
}

void Decoder::need(std::size_t len) const {
  if (data_.size() - pos_ < len) {
    throw DecodeError("truncated input at offset " + std::to_string(pos_));
  }
}

std::uint8_t Decoder::u8() {
  need(1);
  return data_[pos_++];
}

std::uint32_t Decoder::u32() {
  need(4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data_[pos_++]) << (8 * i);
  return v;
}

std::uint64_t Decoder::u64() {
  need(8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data_[pos_++]) << (8 * i);
  return v;
}

std::vector<std::uint32_t> Decoder::u32_list(std::uint32_t max_len) {
  const auto len = u32();
  if (len > max_len) throw DecodeError("list length " + std::to_string(len) + " exceeds bound");
  std::vector<std::uint32_t> out;
  out.reserve(len);
  for (std::uint32_t i = 0; i < len; ++i) out.push_back(u32());
  return out;
}

std::span<const std::uint8_t> Decoder::bytes(std::size_t len) {
  need(len);
  auto out = data_.subspan(pos_, len);
  pos_ += len;
  return out;
}

std::uint64_t hash64(std::span<const std::uint8_t> data, std::uint64_t key) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ key;
  for (auto b : data) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  h += 0x9e3779b97f4a7c15ULL;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (h >> 31);
}

}  // namespace swle
