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

#include "egs/equivalence.h"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>

#include "egs/partition.h"

namespace egs {
namespace {

// Interns signatures as small integers, shared by both sides of a search so
// that equal colors mean equal signatures.
class Interner {
 public:
  int Get(const std::vector<long long>& sig) {
    auto [it, inserted] = ids_.emplace(sig, static_cast<int>(ids_.size()));
    return it->second;
  }

 private:
  std::map<std::vector<long long>, int> ids_;
};

// ---------------------------------------------------------------------------
// Normal form isomorphism.

// One side of the search, with `b` viewed in a's player order.
struct View {
  const NormalForm* nf;
  std::vector<int> order;  // view player q -> nf player
  std::vector<size_t> stride;

  View(const NormalForm& f, std::vector<int> o) : nf(&f), order(std::move(o)) {
    stride.assign(f.strategies.size(), 1);
    for (size_t p = f.strategies.size(); p-- > 1;) {
      stride[p - 1] = stride[p] * f.strategies[p].size();
    }
  }
  size_t players() const { return order.size(); }
  size_t count(size_t q) const { return nf->strategies[order[q]].size(); }
  int Outcome(const std::vector<int>& profile) const {
    size_t index = 0;
    for (size_t q = 0; q < order.size(); ++q) {
      index += stride[order[q]] * static_cast<size_t>(profile[q]);
    }
    return nf->outcome[index];
  }
};

struct Coloring {
  std::vector<std::vector<int>> strategy;  // per view player
  std::vector<int> terminal;
};

// Iterates every full profile of `v`.
template <typename Fn>
void ForEachProfile(const View& v, Fn fn) {
  std::vector<int> profile(v.players(), 0);
  while (true) {
    fn(profile);
    size_t q = v.players();
    while (q > 0) {
      --q;
      if (++profile[q] < static_cast<int>(v.count(q))) break;
      profile[q] = 0;
      if (q == 0) return;
    }
  }
}

void Refine(const View& v, Coloring& c, Interner& strat, Interner& term) {
  const size_t n = v.players();
  std::vector<std::vector<std::vector<long long>>> rows(n);
  for (size_t q = 0; q < n; ++q) rows[q].resize(v.count(q));
  std::vector<std::vector<long long>> hits(c.terminal.size());
  ForEachProfile(v, [&](const std::vector<int>& profile) {
    const int z = v.Outcome(profile);
    // Entries hash a terminal color with the co-players' colors. A collision
    // only coarsens the coloring; the search checks outcomes exactly.
    uint64_t packed = static_cast<uint64_t>(c.terminal[z]);
    for (size_t q = 0; q < n; ++q) {
      packed = packed * 1000003u + static_cast<uint64_t>(c.strategy[q][profile[q]]);
    }
    for (size_t q = 0; q < n; ++q) {
      uint64_t entry = static_cast<uint64_t>(c.terminal[z]);
      for (size_t r = 0; r < n; ++r) {
        if (r != q) {
          entry = entry * 1000003u + static_cast<uint64_t>(c.strategy[r][profile[r]]);
        }
      }
      rows[q][profile[q]].push_back(static_cast<long long>(entry));
    }
    hits[z].push_back(static_cast<long long>(packed));
  });
  for (size_t q = 0; q < n; ++q) {
    for (size_t s = 0; s < rows[q].size(); ++s) {
      auto& sig = rows[q][s];
      std::sort(sig.begin(), sig.end());
      sig.insert(sig.begin(),
                 {static_cast<long long>(q), c.strategy[q][s]});
      c.strategy[q][s] = strat.Get(sig);
    }
  }
  for (size_t z = 0; z < hits.size(); ++z) {
    auto& sig = hits[z];
    std::sort(sig.begin(), sig.end());
    sig.insert(sig.begin(), c.terminal[z]);
    c.terminal[z] = term.Get(sig);
  }
}

template <typename T>
std::vector<T> Sorted(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool SameHistograms(const Coloring& x, const Coloring& y) {
  for (size_t q = 0; q < x.strategy.size(); ++q) {
    if (Sorted(x.strategy[q]) != Sorted(y.strategy[q])) return false;
  }
  return Sorted(x.terminal) == Sorted(y.terminal);
}

size_t Distinct(const Coloring& c) {
  std::set<std::pair<int, int>> s;
  for (size_t q = 0; q < c.strategy.size(); ++q) {
    for (int col : c.strategy[q]) s.emplace(static_cast<int>(q), col);
  }
  for (int col : c.terminal) s.emplace(-1, col);
  return s.size();
}

// Refines both sides in lockstep until a's classes stop splitting.
bool RefineBoth(const View& va, const View& vb, Coloring& ca, Coloring& cb,
                Interner& strat, Interner& term) {
  size_t distinct = Distinct(ca);
  while (true) {
    Refine(va, ca, strat, term);
    Refine(vb, cb, strat, term);
    if (!SameHistograms(ca, cb)) return false;
    const size_t now = Distinct(ca);
    if (now == distinct) return true;
    distinct = now;
  }
}

// Individualization and refinement: pin one strategy of a to each candidate
// of b with the same color, refine, and recurse until every strategy color is
// a singleton. The forced map is then checked against every outcome.
class NormalFormSearch {
 public:
  NormalFormSearch(const View& a, const View& b, std::vector<int> tmap,
                   std::vector<int> tinv, Interner& strat, Interner& term)
      : a_(a),
        b_(b),
        fixed_map_(std::move(tmap)),
        fixed_inv_(std::move(tinv)),
        strat_(strat),
        term_(term) {}

  bool Run(const Coloring& ca, const Coloring& cb) { return Solve(ca, cb, 0); }
  const std::vector<std::vector<int>>& strategy_map() const { return smap_; }
  const std::vector<int>& terminal_map() const { return tmap_; }

 private:
  bool Solve(const Coloring& ca, const Coloring& cb, int depth) {
    // Smallest nontrivial class of a, by player.
    size_t best_q = 0;
    int best_color = 0;
    size_t best_size = 0;
    for (size_t q = 0; q < ca.strategy.size(); ++q) {
      std::map<int, size_t> sizes;
      for (int col : ca.strategy[q]) ++sizes[col];
      for (const auto& [col, size] : sizes) {
        if (size > 1 && (best_size == 0 || size < best_size)) {
          best_q = q;
          best_color = col;
          best_size = size;
        }
      }
    }
    if (best_size == 0) return Finish(ca, cb);
    const auto& row = ca.strategy[best_q];
    const size_t s = static_cast<size_t>(
        std::find(row.begin(), row.end(), best_color) - row.begin());
    const int pinned = strat_.Get({-7, depth});
    for (size_t t = 0; t < cb.strategy[best_q].size(); ++t) {
      if (cb.strategy[best_q][t] != best_color) continue;
      Coloring na = ca;
      Coloring nb = cb;
      na.strategy[best_q][s] = pinned;
      nb.strategy[best_q][t] = pinned;
      if (RefineBoth(a_, b_, na, nb, strat_, term_) &&
          Solve(na, nb, depth + 1)) {
        return true;
      }
    }
    return false;
  }

  bool Finish(const Coloring& ca, const Coloring& cb) {
    const size_t n = a_.players();
    smap_.assign(n, {});
    for (size_t q = 0; q < n; ++q) {
      std::map<int, int> where;
      for (size_t t = 0; t < cb.strategy[q].size(); ++t) {
        where[cb.strategy[q][t]] = static_cast<int>(t);
      }
      for (int col : ca.strategy[q]) smap_[q].push_back(where.at(col));
    }
    tmap_ = fixed_map_;
    std::vector<int> tinv = fixed_inv_;
    std::vector<int> pb(n);
    bool ok = true;
    ForEachProfile(a_, [&](const std::vector<int>& pa) {
      if (!ok) return;
      for (size_t q = 0; q < n; ++q) pb[q] = smap_[q][pa[q]];
      const int za = a_.Outcome(pa);
      const int zb = b_.Outcome(pb);
      if (tmap_[za] < 0 && tinv[zb] < 0) {
        tmap_[za] = zb;
        tinv[zb] = za;
      } else if (tmap_[za] != zb) {
        ok = false;
      }
    });
    return ok && std::find(tmap_.begin(), tmap_.end(), -1) == tmap_.end();
  }

  const View& a_;
  const View& b_;
  const std::vector<int> fixed_map_;
  const std::vector<int> fixed_inv_;
  Interner& strat_;
  Interner& term_;
  std::vector<std::vector<int>> smap_;
  std::vector<int> tmap_;
};

std::optional<NormalFormIsomorphism> SearchWithPlayerMap(
    const NormalForm& a, const NormalForm& b, const std::vector<int>& pmap,
    const NormalFormIsoOptions& options) {
  const size_t n = a.players.size();
  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  View va(a, identity);
  View vb(b, pmap);
  for (size_t q = 0; q < n; ++q) {
    if (va.count(q) != vb.count(q)) return std::nullopt;
  }
  if (a.terminals.size() != b.terminals.size()) return std::nullopt;

  std::vector<int> tmap(a.terminals.size(), -1);
  std::vector<int> tinv(b.terminals.size(), -1);
  Coloring ca;
  Coloring cb;
  ca.terminal.assign(a.terminals.size(), 0);
  cb.terminal.assign(b.terminals.size(), 0);
  for (const auto& [za, zb] : options.fixed_terminals) {
    auto ia = std::find(a.terminals.begin(), a.terminals.end(), za);
    auto ib = std::find(b.terminals.begin(), b.terminals.end(), zb);
    if (ia == a.terminals.end() || ib == b.terminals.end()) {
      return std::nullopt;
    }
    const int x = static_cast<int>(ia - a.terminals.begin());
    const int y = static_cast<int>(ib - b.terminals.begin());
    if (tmap[x] >= 0 || tinv[y] >= 0) return std::nullopt;
    tmap[x] = y;
    tinv[y] = x;
    // A private color pins the pair.
    ca.terminal[x] = cb.terminal[y] = x + 1;
  }
  for (size_t q = 0; q < n; ++q) {
    ca.strategy.emplace_back(va.count(q), 0);
    cb.strategy.emplace_back(vb.count(q), 0);
  }
  Interner strat;
  Interner term;
  if (!RefineBoth(va, vb, ca, cb, strat, term)) return std::nullopt;
  NormalFormSearch search(va, vb, tmap, tinv, strat, term);
  if (!search.Run(ca, cb)) return std::nullopt;
  NormalFormIsomorphism iso;
  iso.player_map = pmap;
  iso.strategy_map = search.strategy_map();
  iso.terminal_map = search.terminal_map();
  return iso;
}

}  // namespace

std::optional<NormalFormIsomorphism> FindNormalFormIsomorphism(
    const NormalForm& a, const NormalForm& b,
    const NormalFormIsoOptions& options) {
  const size_t n = a.players.size();
  if (b.players.size() != n) return std::nullopt;
  std::vector<int> pmap(n);
  std::iota(pmap.begin(), pmap.end(), 0);
  if (!options.permute_players) {
    if (a.players != b.players) return std::nullopt;
    return SearchWithPlayerMap(a, b, pmap, options);
  }
  do {
    if (auto iso = SearchWithPlayerMap(a, b, pmap, options)) return iso;
  } while (std::next_permutation(pmap.begin(), pmap.end()));
  return std::nullopt;
}

bool Verify(const NormalForm& a, const NormalForm& b,
            const NormalFormIsomorphism& iso) {
  const size_t n = a.players.size();
  if (b.players.size() != n || iso.player_map.size() != n ||
      iso.strategy_map.size() != n ||
      iso.terminal_map.size() != a.terminals.size() ||
      a.terminals.size() != b.terminals.size()) {
    return false;
  }
  auto is_bijection = [](const std::vector<int>& f, size_t m) {
    if (f.size() != m) return false;
    std::vector<bool> seen(m, false);
    for (int x : f) {
      if (x < 0 || x >= static_cast<int>(m) || seen[x]) return false;
      seen[x] = true;
    }
    return true;
  };
  if (!is_bijection(iso.player_map, n) ||
      !is_bijection(iso.terminal_map, b.terminals.size())) {
    return false;
  }
  for (size_t p = 0; p < n; ++p) {
    if (!is_bijection(iso.strategy_map[p],
                      b.strategies[iso.player_map[p]].size()) ||
        a.strategies[p].size() != b.strategies[iso.player_map[p]].size()) {
      return false;
    }
  }
  std::vector<int> pb(n);
  for (size_t idx = 0; idx < a.num_profiles(); ++idx) {
    const std::vector<int> pa = a.Profile(idx);
    for (size_t p = 0; p < n; ++p) {
      pb[iso.player_map[p]] = iso.strategy_map[p][pa[p]];
    }
    if (iso.terminal_map[a.outcome[idx]] != b.outcome[b.ProfileIndex(pb)]) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Game isomorphism.

namespace {

struct GameHashes {
  std::vector<int> node;
  // Per node, per active player, per action: color of the child group.
  std::vector<std::vector<std::vector<int>>> action;
  // Per information set, per action: color across all members.
  std::vector<std::vector<int>> set_action;
  std::vector<int> set;
};

// Bottom-up colors: a node's color fixes its subtree up to relabeling,
// ignoring links between information sets.
std::vector<int> SubtreeColors(const Game& g, const GameIsoOptions& options,
                               Interner& colors) {
  std::vector<int> out(g.num_nodes(), 0);
  for (NodeIndex h = g.num_nodes() - 1; h >= 0; --h) {
    const Node& n = g.node(h);
    std::vector<long long> sig{n.terminal() ? 0 : 1};
    if (n.terminal()) {
      if (options.match_terminal_names) {
        sig.insert(sig.end(), n.terminal_name.begin(), n.terminal_name.end());
      }
      out[h] = colors.Get(sig);
      continue;
    }
    for (size_t k = 0; k < n.active.size(); ++k) {
      sig.push_back(n.active[k]);
      sig.push_back(
          static_cast<long long>(g.infoset(n.infosets[k]).actions.size()));
    }
    std::vector<long long> kids;
    for (NodeIndex c : n.children) kids.push_back(out[c]);
    std::sort(kids.begin(), kids.end());
    sig.push_back(-1);
    sig.insert(sig.end(), kids.begin(), kids.end());
    out[h] = colors.Get(sig);
  }
  return out;
}

// One refinement round: action groups, then information-set actions, then
// information sets, then nodes seen from parent, sets and children.
GameHashes RefineOnce(const Game& g, const GameIsoOptions& options,
                      const std::vector<int>& node, Interner& colors) {
  GameHashes out;
  out.action.resize(g.num_nodes());
  for (NodeIndex h = 0; h < g.num_nodes(); ++h) {
    const Node& n = g.node(h);
    out.action[h].resize(n.active.size());
    for (size_t k = 0; k < n.active.size(); ++k) {
      const InfoSet& set = g.infoset(n.infosets[k]);
      for (const std::string& a : set.actions) {
        std::vector<long long> group{-2};
        for (NodeIndex c : n.children) {
          if (*g.ActionInMove(c, n.active[k]) == a) group.push_back(node[c]);
        }
        std::sort(group.begin() + 1, group.end());
        if (options.match_action_labels) {
          group.push_back(-1);
          group.insert(group.end(), a.begin(), a.end());
        }
        out.action[h][k].push_back(colors.Get(group));
      }
    }
  }
  out.set_action.resize(g.infosets().size());
  out.set.resize(g.infosets().size());
  for (size_t s = 0; s < g.infosets().size(); ++s) {
    const InfoSet& set = g.infoset(static_cast<InfosetIndex>(s));
    std::vector<long long> members;
    for (NodeIndex m : set.members) members.push_back(node[m]);
    std::sort(members.begin(), members.end());
    std::vector<long long> acts;
    for (size_t a = 0; a < set.actions.size(); ++a) {
      std::vector<long long> sig{-3, set.owner};
      for (NodeIndex m : set.members) {
        const Node& n = g.node(m);
        const size_t k = static_cast<size_t>(
            std::find(n.active.begin(), n.active.end(), set.owner) -
            n.active.begin());
        sig.push_back(out.action[m][k][a]);
      }
      std::sort(sig.begin() + 2, sig.end());
      out.set_action[s].push_back(colors.Get(sig));
      acts.push_back(out.set_action[s].back());
    }
    std::sort(acts.begin(), acts.end());
    std::vector<long long> sig{-4, set.owner};
    sig.insert(sig.end(), acts.begin(), acts.end());
    sig.push_back(-1);
    sig.insert(sig.end(), members.begin(), members.end());
    out.set[s] = colors.Get(sig);
  }
  auto move_colors = [&](NodeIndex c, std::vector<long long>& sig) {
    const Node& child = g.node(c);
    const Node& parent = g.node(child.parent);
    for (size_t k = 0; k < parent.active.size(); ++k) {
      const InfosetIndex s = parent.infosets[k];
      const int a = g.ActionIndex(s, *g.ActionInMove(c, parent.active[k]));
      sig.push_back(out.set_action[s][a]);
    }
  };
  out.node.resize(g.num_nodes());
  for (NodeIndex h = 0; h < g.num_nodes(); ++h) {
    const Node& n = g.node(h);
    std::vector<long long> sig{-5, node[h]};
    if (n.parent != kNoNode) {
      sig.push_back(node[n.parent]);
      move_colors(h, sig);
    }
    sig.push_back(-1);
    for (InfosetIndex s : n.infosets) sig.push_back(out.set[s]);
    std::vector<long long> kids;
    for (NodeIndex c : n.children) {
      std::vector<long long> ks{-6, node[c]};
      move_colors(c, ks);
      kids.push_back(colors.Get(ks));
    }
    std::sort(kids.begin(), kids.end());
    sig.push_back(-1);
    sig.insert(sig.end(), kids.begin(), kids.end());
    out.node[h] = colors.Get(sig);
  }
  return out;
}

size_t Distinct(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return static_cast<size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

bool SameHistogram(const std::vector<int>& x, const std::vector<int>& y) {
  return Sorted(x) == Sorted(y);
}

// Refines both games in lockstep with shared colors until the partition of
// a's nodes stops splitting. Returns nullopt once the histograms differ.
std::optional<std::pair<GameHashes, GameHashes>> RefineGames(
    const Game& a, const Game& b, const GameIsoOptions& options) {
  Interner colors;
  std::vector<int> na = SubtreeColors(a, options, colors);
  std::vector<int> nb = SubtreeColors(b, options, colors);
  if (!SameHistogram(na, nb)) return std::nullopt;
  size_t classes = Distinct(na);
  while (true) {
    GameHashes ha = RefineOnce(a, options, na, colors);
    GameHashes hb = RefineOnce(b, options, nb, colors);
    if (!SameHistogram(ha.node, hb.node) || !SameHistogram(ha.set, hb.set)) {
      return std::nullopt;
    }
    const size_t now = Distinct(ha.node);
    if (now == classes) return std::make_pair(std::move(ha), std::move(hb));
    classes = now;
    na = std::move(ha.node);
    nb = std::move(hb.node);
  }
}

class GameSearch {
 public:
  GameSearch(const Game& a, const Game& b, const GameHashes& ha,
             const GameHashes& hb)
      : a_(a), b_(b), ha_(ha), hb_(hb) {
    node_map_.assign(a.num_nodes(), kNoNode);
    imap_.assign(a.infosets().size(), kNoInfoset);
    iused_.assign(b.infosets().size(), false);
    amap_.resize(a.infosets().size());
  }

  bool Run() {
    pending_.emplace_back(a_.root(), b_.root());
    return Solve(0);
  }

  GameIsomorphism Result() const {
    GameIsomorphism iso;
    iso.node_map = node_map_;
    for (size_t k = 0; k < imap_.size(); ++k) {
      iso.infoset_map[static_cast<InfosetIndex>(k)] = imap_[k];
    }
    return iso;
  }

 private:
  bool Solve(size_t pos) {
    if (pos == pending_.size()) return true;
    const auto [x, y] = pending_[pos];
    if (ha_.node[x] != hb_.node[y]) return false;
    node_map_[x] = y;
    if (a_.node(x).terminal()) {
      if (Solve(pos + 1)) return true;
      node_map_[x] = kNoNode;
      return false;
    }
    if (AssignInfosets(pos, x, y, 0)) return true;
    node_map_[x] = kNoNode;
    return false;
  }

  // Fixes the information set and action bijection of the k-th active
  // player at (x, y), then descends.
  bool AssignInfosets(size_t pos, NodeIndex x, NodeIndex y, size_t k) {
    const Node& nx = a_.node(x);
    const Node& ny = b_.node(y);
    if (k == nx.active.size()) return Descend(pos, x, y);
    const InfosetIndex kx = nx.infosets[k];
    const InfosetIndex ky = ny.infosets[k];
    if (imap_[kx] != kNoInfoset) {
      if (imap_[kx] != ky) return false;
      // The bijection must also fit the per-action child colors here.
      for (size_t act = 0; act < amap_[kx].size(); ++act) {
        if (ha_.action[x][k][act] != hb_.action[y][k][amap_[kx][act]]) {
          return false;
        }
      }
      return AssignInfosets(pos, x, y, k + 1);
    }
    if (iused_[ky] || ha_.set[kx] != hb_.set[ky]) return false;
    const size_t m = a_.infoset(kx).actions.size();
    imap_[kx] = ky;
    iused_[ky] = true;
    amap_[kx].assign(m, -1);
    std::vector<bool> taken(m, false);
    if (AssignActions(pos, x, y, k, 0, taken)) return true;
    amap_[kx].clear();
    imap_[kx] = kNoInfoset;
    iused_[ky] = false;
    return false;
  }

  // Extends the action bijection of the k-th set one action at a time,
  // pairing only actions whose colors agree.
  bool AssignActions(size_t pos, NodeIndex x, NodeIndex y, size_t k,
                     size_t act, std::vector<bool>& taken) {
    const InfosetIndex kx = a_.node(x).infosets[k];
    const InfosetIndex ky = b_.node(y).infosets[k];
    if (act == taken.size()) return AssignInfosets(pos, x, y, k + 1);
    for (size_t to = 0; to < taken.size(); ++to) {
      if (taken[to] || ha_.action[x][k][act] != hb_.action[y][k][to] ||
          ha_.set_action[kx][act] != hb_.set_action[ky][to]) {
        continue;
      }
      taken[to] = true;
      amap_[kx][act] = static_cast<int>(to);
      if (AssignActions(pos, x, y, k, act + 1, taken)) return true;
      taken[to] = false;
    }
    amap_[kx][act] = -1;
    return false;
  }

  bool Descend(size_t pos, NodeIndex x, NodeIndex y) {
    const Node& nx = a_.node(x);
    const size_t mark = pending_.size();
    std::vector<int> idx(nx.active.size());
    for (NodeIndex c : nx.children) {
      for (size_t k = 0; k < nx.active.size(); ++k) {
        const InfosetIndex kx = nx.infosets[k];
        idx[k] = amap_[kx][a_.ActionIndex(kx, *a_.ActionInMove(c, nx.active[k]))];
      }
      pending_.emplace_back(c, b_.ChildFor(y, idx));
    }
    if (Solve(pos + 1)) return true;
    pending_.resize(mark);
    return false;
  }

  const Game& a_;
  const Game& b_;
  const GameHashes& ha_;
  const GameHashes& hb_;
  std::vector<NodeIndex> node_map_;
  std::vector<InfosetIndex> imap_;
  std::vector<bool> iused_;
  std::vector<std::vector<int>> amap_;
  std::vector<std::pair<NodeIndex, NodeIndex>> pending_;
};

}  // namespace

std::optional<GameIsomorphism> FindGameIsomorphism(
    const Game& a, const Game& b, const GameIsoOptions& options) {
  if (a.players() != b.players() || a.num_nodes() != b.num_nodes() ||
      a.infosets().size() != b.infosets().size() ||
      a.terminals().size() != b.terminals().size()) {
    return std::nullopt;
  }
  const auto refined = RefineGames(a, b, options);
  if (!refined) return std::nullopt;
  const auto& [ha, hb] = *refined;
  if (ha.node[a.root()] != hb.node[b.root()]) return std::nullopt;
  GameSearch search(a, b, ha, hb);
  if (!search.Run()) return std::nullopt;
  return search.Result();
}

bool GameIsomorphic(const Game& a, const Game& b,
                    const GameIsoOptions& options) {
  return FindGameIsomorphism(a, b, options).has_value();
}

// ---------------------------------------------------------------------------
// Equivalence.

EquivalenceVerdict DecideEquivalence(const Game& a, const Game& b,
                                     EquivalenceMethod method) {
  RequireValid(a);
  RequireValid(b);
  EquivalenceVerdict v;
  v.method = method;
  bool direct = false;
  bool minimal = false;
  if (method != EquivalenceMethod::kMinimal) {
    v.normal_form_witness = FindNormalFormIsomorphism(
        ComputeReducedNormalForm(a), ComputeReducedNormalForm(b));
    direct = v.normal_form_witness.has_value();
  }
  if (method != EquivalenceMethod::kDirect) {
    v.reduction_a = Minimize(a);
    v.reduction_b = Minimize(b);
    v.minimal_witness = FindGameIsomorphism(v.reduction_a->minimal_game,
                                            v.reduction_b->minimal_game);
    minimal = v.minimal_witness.has_value();
  }
  switch (method) {
    case EquivalenceMethod::kDirect:
      v.equivalent = direct;
      break;
    case EquivalenceMethod::kMinimal:
      v.equivalent = minimal;
      break;
    case EquivalenceMethod::kBoth:
      if (direct != minimal) {
        throw ConsistencyError(
            std::string("equivalence methods disagree: normal forms ") +
            (direct ? "are" : "are not") + " isomorphic, minimal games " +
            (minimal ? "are" : "are not"));
      }
      v.equivalent = direct;
      break;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Reconstruction.

namespace {

// Builds the tree cell by cell. A player whose finest outcome partition of a
// cell is nontrivial is active there. Nodes of one player with the same set
// of consistent strategies and partitions sharing a nontrivial coarsening
// form one information set, whose actions are the finest common coarsening
// of its members' partitions. Coarsening a set can change the tree above
// other members, so the build repeats until no set changes.
class Reconstructor {
 public:
  explicit Reconstructor(const NormalForm& nf) : nf_(nf) {}

  Game Run() {
    Cell root;
    for (const auto& s : nf_.strategies) {
      std::vector<int> all(s.size());
      std::iota(all.begin(), all.end(), 0);
      root.push_back(std::move(all));
    }
    constexpr int kMaxRounds = 1000;
    for (int round = 0; round < kMaxRounds; ++round) {
      b_ = GameBuilder("reconstructed");
      for (const auto& p : nf_.players) b_.AddPlayer(p);
      next_id_ = 0;
      named_.clear();
      for (auto& [key, groups] : groups_) {
        for (Group& g : groups) g.members.clear();
      }
      changed_ = false;
      Emit(root, "", {});
      if (changed_) continue;
      for (const auto& [key, groups] : groups_) {
        for (const Group& g : groups) {
          if (g.members.empty()) continue;
          b_.AddInfoset(nf_.players[key.first],
                        nf_.players[key.first] + "@" + g.members.front(),
                        g.members);
        }
      }
      return b_.Build();
    }
    throw RealizabilityError("information sets did not settle");
  }

 private:
  using Cell = std::vector<std::vector<int>>;

  struct Group {
    Partition<int> actions;
    std::vector<std::string> members;  // current round only
  };

  std::string Describe(const Cell& cell) const {
    std::string out = "cell (";
    for (size_t p = 0; p < cell.size(); ++p) {
      if (p) out += "; ";
      out += nf_.players[p] + ":";
      for (size_t k = 0; k < cell[p].size(); ++k) {
        out += (k ? "," : "") + nf_.strategies[p][cell[p][k]];
      }
    }
    return out + ")";
  }

  template <typename Fn>
  void ForEachProfile(const Cell& cell, Fn fn) const {
    std::vector<size_t> pos(cell.size(), 0);
    std::vector<int> profile(cell.size());
    while (true) {
      for (size_t p = 0; p < cell.size(); ++p) profile[p] = cell[p][pos[p]];
      fn(profile);
      size_t p = cell.size();
      while (p > 0) {
        --p;
        if (++pos[p] < cell[p].size()) break;
        pos[p] = 0;
        if (p == 0) return;
      }
    }
  }

  // The action partition for `player` at a node whose own finest partition
  // is `finest`, registering the node with its information set.
  const Partition<int>& Actions(size_t player, const std::vector<int>& own,
                                const Partition<int>& finest,
                                const std::string& id) {
    auto& groups = groups_[{player, own}];
    for (Group& g : groups) {
      Partition<int> meet = Meet<int>({finest, g.actions});
      if (meet.size() < 2) continue;
      if (!(meet == g.actions)) {
        g.actions = std::move(meet);
        changed_ = true;
      }
      g.members.push_back(id);
      return g.actions;
    }
    groups.push_back(Group{finest, {id}});
    return groups.back().actions;
  }

  void Emit(const Cell& cell, const std::string& parent,
            std::vector<std::pair<std::string, std::string>> move) {
    const std::string id = "n" + std::to_string(next_id_++);
    if (parent.empty()) {
      b_.AddRoot(id);
    } else {
      b_.AddNode(id, parent, std::move(move));
    }
    std::set<int> image;
    std::vector<std::map<int, std::set<int>>> outcomes(cell.size());
    ForEachProfile(cell, [&](const std::vector<int>& profile) {
      const int z = nf_.outcome[nf_.ProfileIndex(profile)];
      image.insert(z);
      for (size_t p = 0; p < cell.size(); ++p) {
        outcomes[p][profile[p]].insert(z);
      }
    });
    if (image.size() == 1) {
      const std::string& name = nf_.terminals[*image.begin()];
      if (!named_.insert(name).second) {
        throw RealizabilityError(
            "terminal " + name + " would occur twice; input is not the "
            "reduced normal form of any structure in this class");
      }
      b_.SetTerminalName(id, name);
      return;
    }
    std::vector<size_t> active;
    std::vector<Partition<int>> blocks(cell.size());
    for (size_t p = 0; p < cell.size(); ++p) {
      Partition<int> finest = FinestOutcomePartition(outcomes[p]);
      if (finest.size() < 2) continue;
      active.push_back(p);
      blocks[p] = Actions(p, cell[p], finest, id);
    }
    if (active.empty()) {
      throw RealizabilityError(
          Describe(cell) + " reaches " + std::to_string(image.size()) +
          " terminals but no player can be active; input is not the reduced "
          "normal form of any structure in this class");
    }
    std::vector<std::vector<std::string>> labels(cell.size());
    for (size_t p : active) {
      for (const auto& block : blocks[p].blocks()) {
        std::string least = nf_.strategies[p][block.front()];
        for (int s : block) least = std::min(least, nf_.strategies[p][s]);
        labels[p].push_back(least);
      }
    }
    // Children: every combination of one block per active player.
    std::vector<size_t> pos(active.size(), 0);
    while (true) {
      Cell child = cell;
      std::vector<std::pair<std::string, std::string>> m;
      for (size_t k = 0; k < active.size(); ++k) {
        const size_t p = active[k];
        child[p] = blocks[p].blocks()[pos[k]];
        m.emplace_back(nf_.players[p], labels[p][pos[k]]);
      }
      Emit(child, id, std::move(m));
      size_t k = active.size();
      while (k > 0) {
        --k;
        if (++pos[k] < blocks[active[k]].size()) break;
        pos[k] = 0;
        if (k == 0) return;
      }
    }
  }

  const NormalForm& nf_;
  GameBuilder b_;
  int next_id_ = 0;
  bool changed_ = false;
  std::set<std::string> named_;
  // Information sets keyed by player and consistent strategy set.
  std::map<std::pair<size_t, std::vector<int>>, std::vector<Group>> groups_;
};

}  // namespace

Game Reconstruct(const NormalForm& nf) {
  try {
    nf.CheckWellFormed();
  } catch (const QueryError& e) {
    throw RealizabilityError(std::string("malformed normal form: ") +
                             e.what());
  }
  if (nf.terminals.size() < 2) {
    throw RealizabilityError(
        "normal form has a single terminal: the root would be terminal with "
        "no active player, which the supported class does not admit");
  }
  Game g = Reconstructor(nf).Run();
  ValidationReport report = Validate(g);
  if (!report.ok()) {
    throw RealizabilityError(
        "reconstruction is not a valid structure; input is not the reduced "
        "normal form of any structure in this class:\n" +
        report.ToString());
  }
  NormalFormIsoOptions pin;
  for (const auto& z : nf.terminals) pin.fixed_terminals[z] = z;
  if (!FindNormalFormIsomorphism(ComputeReducedNormalForm(g), nf, pin)) {
    throw RealizabilityError(
        "reconstruction does not reproduce the normal form; input is not the "
        "reduced normal form of any structure in this class");
  }
  return g;
}

}  // namespace egs
