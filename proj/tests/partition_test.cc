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

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "egs/partition.h"

namespace egs {
namespace {

using P = Partition<std::string>;

TEST_CASE("blocks are normalized") {
  const P p = P::FromBlocks({{"u", "b"}, {"a"}});
  CHECK(p.blocks() == std::vector<std::vector<std::string>>{{"a"}, {"b", "u"}});
  CHECK(p == P::FromBlocks({{"a"}, {"b", "u"}}));
  CHECK(p.BlockOf("u") == 1);
  CHECK(p.BlockOf("q") == -1);
  CHECK_THROWS_AS(P::FromBlocks({{"a"}, {}}), QueryError);
  CHECK_THROWS_AS(P::FromBlocks({{"a", "b"}, {"b"}}), QueryError);
  CHECK_THROWS_AS(P::FromBlocks({{"a", "a"}}), QueryError);
}

TEST_CASE("refinement order") {
  const std::vector<std::string> g{"a", "b", "u"};
  CHECK(Refines(P::Trivial(g), P::Discrete(g)));
  CHECK_FALSE(Refines(P::Discrete(g), P::Trivial(g)));
  const P left = P::FromBlocks({{"a"}, {"b", "u"}});
  const P right = P::FromBlocks({{"a", "b"}, {"u"}});
  CHECK_FALSE(Refines(left, right));
  CHECK_FALSE(Refines(right, left));
  CHECK(Refines(left, left));
  CHECK_THROWS_AS(Refines(left, P::Trivial({"a", "b"})), QueryError);
}

TEST_CASE("join") {
  const P left = P::FromBlocks({{"a", "b"}, {"u"}});
  const P right = P::FromBlocks({{"a"}, {"b", "u"}});
  CHECK(Join<std::string>({left, right}) == P::Discrete({"a", "b", "u"}));
  CHECK(Join<std::string>({left}) == left);
  CHECK(Join<std::string>({P::Trivial({"a", "b", "u"}), right}) == right);
  CHECK_THROWS_AS(Join<std::string>({}), QueryError);
  CHECK_THROWS_AS(Join<std::string>({left, P::Trivial({"a"})}), QueryError);
}

TEST_CASE("meet") {
  const P left = P::FromBlocks({{"a", "b"}, {"u"}});
  const P right = P::FromBlocks({{"a"}, {"b", "u"}});
  CHECK(Meet<std::string>({left, right}) == P::Trivial({"a", "b", "u"}));
  CHECK(Meet<std::string>({left, P::Discrete({"a", "b", "u"})}) == left);
  const P far = P::FromBlocks({{"a"}, {"b"}, {"u", "v"}});
  const P near = P::FromBlocks({{"a", "b"}, {"u"}, {"v"}});
  CHECK(Meet<std::string>({far, near}) ==
        P::FromBlocks({{"a", "b"}, {"u", "v"}}));
  CHECK_THROWS_AS(Meet<std::string>({}), QueryError);
  CHECK_THROWS_AS(Meet<std::string>({left, P::Trivial({"a"})}), QueryError);
}

TEST_CASE("finest outcome partition on the three-row table") {
  std::map<std::string, std::set<std::string>> rows{
      {"a", {"z1", "z3"}}, {"b", {"z2", "z4"}}, {"u", {"z5"}}};
  CHECK(FinestOutcomePartition(rows) == P::Discrete({"a", "b", "u"}));
  std::map<std::string, std::set<std::string>> cols{
      {"x", {"z1", "z2", "z5"}}, {"y", {"z3", "z4", "z5"}}};
  CHECK(FinestOutcomePartition(cols) == P::Trivial({"x", "y"}));
  std::map<std::string, std::set<std::string>> same{
      {"p", {"z"}}, {"q", {"z"}}, {"r", {"z"}}};
  CHECK(FinestOutcomePartition(same).size() == 1);
  std::map<std::string, std::set<std::string>> empty{{"p", {}}};
  CHECK_THROWS_AS(FinestOutcomePartition(empty), QueryError);
}

// All set partitions of {0..n-1} as restricted growth strings.
void AllPartitions(int n, std::vector<int>& rgs, int used,
                   std::vector<std::vector<int>>& out) {
  if (static_cast<int>(rgs.size()) == n) {
    out.push_back(rgs);
    return;
  }
  for (int b = 0; b <= used; ++b) {
    rgs.push_back(b);
    AllPartitions(n, rgs, std::max(used, b + 1), out);
    rgs.pop_back();
  }
}

TEST_CASE("finest outcome partition matches exhaustive search") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 6;
    std::map<int, std::set<int>> outcomes;
    for (int k = 0; k < n; ++k) {
      const int count = 1 + static_cast<int>(rng() % 2);
      for (int c = 0; c < count; ++c) {
        outcomes[k].insert(static_cast<int>(rng() % 8));
      }
    }
    std::vector<std::vector<int>> all;
    std::vector<int> rgs;
    AllPartitions(n, rgs, 0, all);

    // Admissible: blocks have pairwise disjoint outcome unions. The finest
    // admissible partition has the most blocks and refines every other.
    std::vector<Partition<int>> admissible;
    for (const auto& s : all) {
      std::map<int, std::vector<int>> blocks;
      for (int k = 0; k < n; ++k) blocks[s[k]].push_back(k);
      std::map<int, int> owner;
      bool ok = true;
      for (const auto& [b, members] : blocks) {
        for (int k : members) {
          for (int z : outcomes[k]) {
            auto [it, fresh] = owner.emplace(z, b);
            if (!fresh && it->second != b) ok = false;
          }
        }
      }
      if (!ok) continue;
      std::vector<std::vector<int>> bs;
      for (auto& [b, members] : blocks) bs.push_back(members);
      admissible.push_back(Partition<int>::FromBlocks(bs));
    }
    const Partition<int> got = FinestOutcomePartition(outcomes);
    size_t most = 0;
    for (const auto& p : admissible) most = std::max(most, p.size());
    CHECK(got.size() == most);
    for (const auto& p : admissible) CHECK(Refines(p, got));
  }
}

TEST_CASE("union-find") {
  UnionFind uf(5);
  uf.Unite(0, 1);
  uf.Unite(3, 4);
  uf.Unite(1, 4);
  CHECK(uf.Find(0) == uf.Find(3));
  CHECK(uf.Find(2) != uf.Find(0));
  uf.Unite(2, 2);
  CHECK(uf.Find(2) == 2);
}

}  // namespace
}  // namespace egs
