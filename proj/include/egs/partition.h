// Copyright 2026 The egs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EGS_PARTITION_H_
#define EGS_PARTITION_H_

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "egs/errors.h"

namespace egs {

// A partition of a finite ground set. Blocks are sorted internally and
// ordered by their smallest member, so equal partitions compare equal.
//
// Order convention: p <= q ("q refines p") when every block of p is a union
// of blocks of q. The trivial one-block partition is the bottom element and
// Join() is the least upper bound, i.e. the coarsest common refinement.
template <typename T>
class Partition {
 public:
  Partition() = default;

  // Throws QueryError on empty or overlapping blocks.
  static Partition FromBlocks(std::vector<std::vector<T>> blocks) {
    Partition p;
    for (auto& b : blocks) {
      if (b.empty()) throw QueryError("partition has an empty block");
      std::sort(b.begin(), b.end());
      if (std::adjacent_find(b.begin(), b.end()) != b.end()) {
        throw QueryError("partition block repeats an element");
      }
      p.ground_.insert(p.ground_.end(), b.begin(), b.end());
    }
    std::sort(p.ground_.begin(), p.ground_.end());
    if (std::adjacent_find(p.ground_.begin(), p.ground_.end()) !=
        p.ground_.end()) {
      throw QueryError("partition blocks overlap");
    }
    std::sort(blocks.begin(), blocks.end());
    p.blocks_ = std::move(blocks);
    return p;
  }

  // The one-block partition of `ground`.
  static Partition Trivial(std::vector<T> ground) {
    return FromBlocks({std::move(ground)});
  }

  // The all-singletons partition of `ground`.
  static Partition Discrete(const std::vector<T>& ground) {
    std::vector<std::vector<T>> blocks;
    for (const T& x : ground) blocks.push_back({x});
    return FromBlocks(std::move(blocks));
  }

  const std::vector<T>& ground() const { return ground_; }
  const std::vector<std::vector<T>>& blocks() const { return blocks_; }
  size_t size() const { return blocks_.size(); }

  // Index of the block containing x, or -1.
  int BlockOf(const T& x) const {
    for (size_t b = 0; b < blocks_.size(); ++b) {
      if (std::binary_search(blocks_[b].begin(), blocks_[b].end(), x)) {
        return static_cast<int>(b);
      }
    }
    return -1;
  }

  bool operator==(const Partition&) const = default;

 private:
  std::vector<T> ground_;
  std::vector<std::vector<T>> blocks_;
};

// True iff every block of p is a union of blocks of q. Throws QueryError if
// the ground sets differ.
template <typename T>
bool Refines(const Partition<T>& p, const Partition<T>& q) {
  if (p.ground() != q.ground()) {
    throw QueryError("partitions have different ground sets");
  }
  // Equivalent: every block of q lies inside a single block of p.
  for (const auto& block : q.blocks()) {
    const int home = p.BlockOf(block.front());
    for (const T& x : block) {
      if (p.BlockOf(x) != home) return false;
    }
  }
  return true;
}

// Coarsest partition refining every input: the nonempty intersections of one
// block from each input.
template <typename T>
Partition<T> Join(const std::vector<Partition<T>>& ps) {
  if (ps.empty()) throw QueryError("join of an empty collection");
  for (const auto& p : ps) {
    if (p.ground() != ps.front().ground()) {
      throw QueryError("partitions have different ground sets");
    }
  }
  std::map<std::vector<int>, std::vector<T>> cells;
  for (const T& x : ps.front().ground()) {
    std::vector<int> key;
    key.reserve(ps.size());
    for (const auto& p : ps) key.push_back(p.BlockOf(x));
    cells[key].push_back(x);
  }
  std::vector<std::vector<T>> blocks;
  for (auto& [key, block] : cells) blocks.push_back(std::move(block));
  return Partition<T>::FromBlocks(std::move(blocks));
}

// Finest partition coarsening every input, i.e. the greatest lower bound:
// elements sharing a block in any input end up together.
template <typename T>
Partition<T> Meet(const std::vector<Partition<T>>& ps);

// Disjoint-set forest over 0..n-1 with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), size_t{0});
  }

  size_t Find(size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void Unite(size_t a, size_t b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<size_t> parent_;
  std::vector<size_t> size_;
};

template <typename T>
Partition<T> Meet(const std::vector<Partition<T>>& ps) {
  if (ps.empty()) throw QueryError("meet of an empty collection");
  const std::vector<T>& ground = ps.front().ground();
  for (const auto& p : ps) {
    if (p.ground() != ground) {
      throw QueryError("partitions have different ground sets");
    }
  }
  auto index = [&](const T& x) {
    return static_cast<size_t>(
        std::lower_bound(ground.begin(), ground.end(), x) - ground.begin());
  };
  UnionFind uf(ground.size());
  for (const auto& p : ps) {
    for (const auto& block : p.blocks()) {
      for (const T& x : block) uf.Unite(index(block.front()), index(x));
    }
  }
  std::map<size_t, std::vector<T>> components;
  for (size_t k = 0; k < ground.size(); ++k) {
    components[uf.Find(k)].push_back(ground[k]);
  }
  std::vector<std::vector<T>> blocks;
  for (auto& [root, block] : components) blocks.push_back(std::move(block));
  return Partition<T>::FromBlocks(std::move(blocks));
}

// Finest partition of the labels whose blocks have pairwise disjoint outcome
// unions: the connected components of the overlap graph, where two labels are
// adjacent when their outcome sets intersect. Throws QueryError if some
// label has an empty outcome set.
template <typename T, typename Z>
Partition<T> FinestOutcomePartition(
    const std::map<T, std::set<Z>>& outcome_sets) {
  std::vector<T> labels;
  for (const auto& [label, outcomes] : outcome_sets) {
    if (outcomes.empty()) throw QueryError("label with empty outcome set");
    labels.push_back(label);
  }
  UnionFind uf(labels.size());
  std::map<Z, size_t> first_owner;
  for (size_t k = 0; k < labels.size(); ++k) {
    for (const Z& z : outcome_sets.at(labels[k])) {
      auto [it, inserted] = first_owner.emplace(z, k);
      if (!inserted) uf.Unite(it->second, k);
    }
  }
  std::map<size_t, std::vector<T>> components;
  for (size_t k = 0; k < labels.size(); ++k) {
    components[uf.Find(k)].push_back(labels[k]);
  }
  std::vector<std::vector<T>> blocks;
  for (auto& [root, block] : components) blocks.push_back(std::move(block));
  return Partition<T>::FromBlocks(std::move(blocks));
}

}  // namespace egs

#endif  // EGS_PARTITION_H_
