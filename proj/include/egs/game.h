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

#ifndef EGS_GAME_H_
#define EGS_GAME_H_

#include <compare>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "egs/errors.h"

namespace egs {

// Finite extensive game structures with simultaneous moves and imperfect
// information, without chance moves and without payoffs.
//
// A Game is immutable. It is produced by GameBuilder::Build(), which puts the
// nodes in a canonical depth-first order: the root is node 0, children are
// sorted by their incoming move, and every subtree occupies a contiguous
// index range. All structural queries rely on that layout.

using PlayerIndex = int;
using NodeIndex = int;
using InfosetIndex = int;

inline constexpr NodeIndex kNoNode = -1;
inline constexpr InfosetIndex kNoInfoset = -1;

// One coordinate of an action profile.
struct MoveEntry {
  PlayerIndex player;
  std::string action;

  auto operator<=>(const MoveEntry&) const = default;
};

// An action profile of a nonempty subset of players, sorted by player.
using Move = std::vector<MoveEntry>;

// An action qualified by the information set it belongs to. Two actions with
// the same display string at different information sets are different.
struct ActionLabel {
  std::string display;
  std::string infoset;

  auto operator<=>(const ActionLabel&) const = default;
};

struct Node {
  std::string id;
  NodeIndex parent = kNoNode;
  Move move;  // empty at the root
  std::vector<NodeIndex> children;
  std::string terminal_name;  // nonempty iff the node is terminal

  int depth = 0;
  NodeIndex subtree_end = 0;  // descendants are (index, subtree_end)

  // Players with a coordinate in every child move (the active players), and
  // the information set of each of them at this node, in parallel.
  std::vector<PlayerIndex> active;
  std::vector<InfosetIndex> infosets;
  // Players with a coordinate in at least one child move. Equal to `active`
  // in a valid game.
  std::vector<PlayerIndex> movers;

  bool terminal() const { return children.empty(); }
};

struct InfoSet {
  std::string id;
  PlayerIndex owner = 0;
  std::vector<NodeIndex> members;    // ascending
  std::vector<std::string> actions;  // sorted display strings
};

class GameBuilder;

class Game {
 public:
  const std::string& name() const { return name_; }

  // Player names, sorted. PlayerIndex values index into this.
  const std::vector<std::string>& players() const { return players_; }
  int num_players() const { return static_cast<int>(players_.size()); }
  PlayerIndex PlayerIndexOf(std::string_view name) const;

  std::span<const Node> nodes() const { return nodes_; }
  const Node& node(NodeIndex n) const { return nodes_.at(n); }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  NodeIndex root() const { return 0; }
  NodeIndex FindNode(std::string_view id) const;
  bool HasNode(std::string_view id) const;

  std::span<const InfoSet> infosets() const { return infosets_; }
  const InfoSet& infoset(InfosetIndex k) const { return infosets_.at(k); }
  InfosetIndex FindInfoset(std::string_view id) const;

  // Information sets of `player`, ordered by their first member. Since an
  // information set's record only mentions earlier sets, this order is
  // topological for the player's own moves.
  const std::vector<InfosetIndex>& InfosetsOf(PlayerIndex player) const {
    return player_infosets_.at(player);
  }
  // Position of `k` within InfosetsOf(owner).
  int InfosetRank(InfosetIndex k) const { return infoset_rank_.at(k); }

  // Information set of `player` at node `h`, or kNoInfoset.
  InfosetIndex InfosetAt(NodeIndex h, PlayerIndex player) const;

  // Index of `display` within infoset(k).actions, or -1.
  int ActionIndex(InfosetIndex k, std::string_view display) const;

  // The action `player` contributes to the move into `child`, or nullptr.
  const std::string* ActionInMove(NodeIndex child, PlayerIndex player) const;

  // Child of `h` reached when the active players of `h` choose
  // `action_index[k]` at infosets[k]. Requires a valid game.
  NodeIndex ChildFor(NodeIndex h, std::span<const int> action_index) const;

  // Terminal nodes in depth-first order.
  const std::vector<NodeIndex>& terminals() const { return terminals_; }
  NodeIndex FindTerminal(std::string_view name) const;

  // True iff `a` strictly precedes `d`.
  bool IsStrictAncestor(NodeIndex a, NodeIndex d) const {
    return a < d && d < nodes_[a].subtree_end;
  }

  // Longest root-to-terminal path length (a single-node game has height 0).
  int Height() const;

  // Qualified label of action `display` at information set `k`.
  ActionLabel Label(InfosetIndex k, std::string_view display) const {
    return ActionLabel{std::string(display), infosets_.at(k).id};
  }

 private:
  friend class GameBuilder;
  Game() = default;

  std::string name_;
  std::vector<std::string> players_;
  std::vector<Node> nodes_;
  std::vector<InfoSet> infosets_;
  std::vector<std::vector<InfosetIndex>> player_infosets_;
  std::vector<int> infoset_rank_;
  std::vector<NodeIndex> terminals_;
  std::map<std::string, NodeIndex, std::less<>> node_by_id_;
  std::map<std::string, NodeIndex, std::less<>> terminal_by_name_;
  std::map<std::string, InfosetIndex, std::less<>> infoset_by_id_;
};

// Assembles a Game from string-identified pieces. Build() checks the tree
// shape (single root, known parents, no cycles, unique ids) and throws
// StructureError on failure; semantic rules are checked by Validate().
//
// Terminal nodes without a name get z1, z2, ... in depth-first order, skipping
// names already taken. Active (node, player) pairs not covered by an explicit
// information set get a singleton set with id "<player>@<node>".
class GameBuilder {
 public:
  explicit GameBuilder(std::string name = "") : name_(std::move(name)) {}

  // Decomposes `game` back into builder form, preserving ids and names.
  static GameBuilder FromGame(const Game& game);

  void SetName(std::string name) { name_ = std::move(name); }
  void AddPlayer(std::string player);
  void AddRoot(std::string id);
  void AddNode(std::string id, std::string parent,
               std::vector<std::pair<std::string, std::string>> move);
  void SetTerminalName(std::string id, std::string name);
  void AddInfoset(std::string player, std::string id,
                  std::vector<std::string> members);

  // Replaces the incoming move of an existing non-root node.
  void SetMove(const std::string& id,
               std::vector<std::pair<std::string, std::string>> move);

  Game Build() const;

 private:
  struct PendingNode {
    std::string id;
    std::string parent;  // empty for the root
    std::vector<std::pair<std::string, std::string>> move;
    bool is_root = false;
  };
  struct PendingInfoset {
    std::string player;
    std::string id;
    std::vector<std::string> members;
  };

  std::string name_;
  std::vector<std::string> players_;
  std::vector<PendingNode> nodes_;
  std::map<std::string, size_t> node_pos_;
  std::vector<std::pair<std::string, std::string>> terminal_names_;
  std::vector<PendingInfoset> infosets_;
};

// --- Structural queries --------------------------------------------------

// Players active at non-terminal `h`. Throws QueryError at a terminal.
std::vector<PlayerIndex> ActivePlayers(const Game& game, NodeIndex h);

// Terminal descendants of the nodes in `nodes` (a node is its own
// descendant), ascending and without duplicates.
std::vector<NodeIndex> TerminalSet(const Game& game,
                                   std::span<const NodeIndex> nodes);

// Terminals following information set `k` and action `display` of its owner,
// whatever the co-players do there. Throws QueryError if not feasible.
std::vector<NodeIndex> TerminalsAfterAction(const Game& game, InfosetIndex k,
                                            std::string_view display);

struct RecordEntry {
  InfosetIndex infoset;
  std::string action;

  auto operator<=>(const RecordEntry&) const = default;
};

// The information sets of `player` met on the path from the root to `h`
// (excluding `h`) and the action taken there.
std::vector<RecordEntry> Record(const Game& game, PlayerIndex player,
                                NodeIndex h);

// Names of the terminals in `nodes`.
std::vector<std::string> TerminalNames(const Game& game,
                                       std::span<const NodeIndex> nodes);

// Human-readable move, e.g. "x" or "(u,l)".
std::string MoveToString(const Game& game, const Move& move);

// --- Validation ----------------------------------------------------------

struct Violation {
  std::string rule;
  std::string subject;  // offending node or information set id
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool Has(std::string_view rule) const;
  std::string ToString() const;
};

// Checks every semantic rule of the model: each player is active somewhere,
// child moves share one player domain and form the full product of the
// feasible sets, each active player has at least two actions, information
// sets partition the active nodes with constant feasible actions, no
// information set contains two related nodes, and each player's record is
// constant on each of their information sets.
ValidationReport Validate(const Game& game);

// Thrown by callers that require a valid game.
class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report)
      : Error("invalid game structure:\n" + report.ToString()),
        report_(std::move(report)) {}

  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// Throws ValidationError unless Validate(game) is clean.
void RequireValid(const Game& game);

}  // namespace egs

#endif  // EGS_GAME_H_
