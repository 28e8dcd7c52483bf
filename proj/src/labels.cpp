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

#include "walkref/labels.hpp"

#include <algorithm>
#include <numeric>

namespace walkref {

LabelId LabelInterner::intern(std::string_view key) {
  auto it = index_.find(std::string(key));
  if (it != index_.end()) return it->second;
  const auto id = static_cast<LabelId>(keys_.size());
  keys_.emplace_back(key);
  index_.emplace(keys_.back(), id);
  return id;
}

LabelId LabelInterner::find(std::string_view key) const {
  auto it = index_.find(std::string(key));
  return it == index_.end() ? static_cast<LabelId>(keys_.size()) : it->second;
}

std::vector<LabelId> LabelInterner::sort_by_key() {
  std::vector<LabelId> order(keys_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](LabelId a, LabelId b) { return keys_[a] < keys_[b]; });
  std::vector<LabelId> remap(keys_.size());
  std::vector<std::string> sorted;
  sorted.reserve(keys_.size());
  for (LabelId rank = 0; rank < order.size(); ++rank) {
    remap[order[rank]] = rank;
    sorted.push_back(std::move(keys_[order[rank]]));
  }
  keys_ = std::move(sorted);
  index_.clear();
  for (LabelId id = 0; id < keys_.size(); ++id) index_.emplace(keys_[id], id);
  return remap;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace walkref
