// Copyright 2026 The walkref Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace walkref {

using LabelId = std::uint32_t;

// Builds canonical byte keys. Every field is self-delimiting, so distinct
// field sequences never serialize to the same bytes.
class KeyWriter {
 public:
  KeyWriter& u8(std::uint8_t v) {
    bytes_.push_back(static_cast<char>(v));
    return *this;
  }
  KeyWriter& u32(std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) {
      bytes_.push_back(static_cast<char>((v >> shift) & 0xff));
    }
    return *this;
  }
  KeyWriter& u64(std::uint64_t v) {
    u32(static_cast<std::uint32_t>(v >> 32));
    return u32(static_cast<std::uint32_t>(v));
  }
  KeyWriter& str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes_.append(s);
    return *this;
  }
  std::string take() { return std::move(bytes_); }
  const std::string& view() const { return bytes_; }

 private:
  std::string bytes_;
};

// Bijection between canonical keys and dense ids 0..size()-1.
class LabelInterner {
 public:
  LabelId intern(std::string_view key);
  // Returns size() when the key is unknown.
  LabelId find(std::string_view key) const;
  const std::string& key(LabelId id) const { return keys_.at(id); }
  std::size_t size() const { return keys_.size(); }
  const std::vector<std::string>& keys() const { return keys_; }

  // Renumbers ids by lexicographic order of their keys. Returns the map
  // old id -> new id. After this call ids are a pure function of the key set.
  std::vector<LabelId> sort_by_key();

 private:
  std::unordered_map<std::string, LabelId> index_;
  std::vector<std::string> keys_;
};

// 64-bit FNV-1a, used only for short display digests.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace walkref
