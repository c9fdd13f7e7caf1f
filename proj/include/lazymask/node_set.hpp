// Copyright 2026 The lazymask Authors
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

#ifndef LAZYMASK_NODE_SET_HPP_
#define LAZYMASK_NODE_SET_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace lazymask {

// Fixed-universe bitset over node indices [0, universe).
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(int universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  static NodeSet Full(int universe) {
    NodeSet s(universe);
    for (int i = 0; i < universe; ++i) s.Insert(i);
    return s;
  }

  int universe() const { return universe_; }

  bool Contains(int node) const { return (words_[node >> 6] >> (node & 63)) & 1U; }
  void Insert(int node) { words_[node >> 6] |= Bit(node); }
  void Erase(int node) { words_[node >> 6] &= ~Bit(node); }
  void Clear() { std::fill(words_.begin(), words_.end(), 0); }

  int Count() const {
    int total = 0;
    for (std::uint64_t w : words_) total += std::popcount(w);
    return total;
  }
  bool Empty() const {
    for (std::uint64_t w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  // Complement within the universe.
  NodeSet Complement() const {
    NodeSet out(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
    out.TrimTail();
    return out;
  }

  bool IsSubsetOf(const NodeSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    }
    return true;
  }

  // Calls fn(node) for each member in increasing order.
  template <typename Fn>
  void ForEach(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int offset = std::countr_zero(bits);
        fn(static_cast<int>(w * 64) + offset);
        bits &= bits - 1;
      }
    }
  }

  std::vector<int> ToVector() const {
    std::vector<int> out;
    out.reserve(Count());
    ForEach([&](int node) { out.push_back(node); });
    return out;
  }

  bool operator==(const NodeSet&) const = default;

 private:
  static std::uint64_t Bit(int node) { return std::uint64_t{1} << (node & 63); }

  void TrimTail() {
    const int tail = universe_ & 63;
    if (tail != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << tail) - 1;
  }

  int universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace lazymask

#endif  // LAZYMASK_NODE_SET_HPP_
