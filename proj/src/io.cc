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

#include "egs/io.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace egs {
namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

// Splits a line at whitespace after dropping a '#' comment.
std::vector<Token> Tokenize(std::string_view line) {
  std::vector<Token> out;
  const size_t hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i == line.size()) break;
    const size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    out.push_back(
        Token{std::string(line.substr(start, i - start)),
              static_cast<int>(start) + 1});
  }
  return out;
}

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

// Value of a "key=value" token, or a ParseError naming the expected key.
std::string KeyValue(const Token& t, std::string_view key, int line) {
  const std::string prefix = std::string(key) + "=";
  if (t.text.rfind(prefix, 0) != 0 || t.text.size() == prefix.size()) {
    throw ParseError(line, t.column,
                     "expected " + prefix + "<value>, found '" + t.text + "'");
  }
  return t.text.substr(prefix.size());
}

bool ValidIdentifier(std::string_view s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return c == ',' || c == ':' || c == '=' ||
           std::isspace(static_cast<unsigned char>(c));
  });
}

void RequireIdentifier(const Token& t, int line, std::string_view what) {
  if (!ValidIdentifier(t.text)) {
    throw ParseError(line, t.column,
                     "invalid " + std::string(what) + " '" + t.text + "'");
  }
}

std::string Quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

// --- EGS -------------------------------------------------------------------

Game ParseEgs(std::string_view text, bool validate) {
  GameBuilder builder;
  std::set<std::string> players;
  bool have_players = false;
  bool have_name = false;
  std::map<std::string, int> node_line;
  std::vector<std::pair<std::string, std::pair<int, int>>> parent_refs;
  std::vector<std::pair<std::string, std::pair<int, int>>> node_refs;
  int root_line = 0;

  const auto lines = SplitLines(text);
  for (size_t ln = 0; ln < lines.size(); ++ln) {
    const int line = static_cast<int>(ln) + 1;
    const std::vector<Token> tok = Tokenize(lines[ln]);
    if (tok.empty()) continue;
    const std::string& kw = tok[0].text;
    auto need = [&](size_t n, const std::string& usage) {
      if (tok.size() < n) {
        throw ParseError(line, tok.back().column,
                         "incomplete '" + kw + "' line, expected: " + usage);
      }
    };
    auto extra = [&](size_t n) {
      if (tok.size() > n) {
        throw ParseError(line, tok[n].column,
                         "unexpected token '" + tok[n].text + "'");
      }
    };
    auto require_players = [&](const Token& t) {
      if (!have_players) {
        throw ParseError(line, t.column, "players line missing before '" +
                                             kw + "'");
      }
    };
    auto require_player = [&](const Token& t, const std::string& p, int col) {
      if (!players.count(p)) {
        throw ParseError(line, col, "unknown player '" + p + "'");
      }
      (void)t;
    };

    if (kw == "game") {
      need(2, "game <name>");
      if (have_name) throw ParseError(line, 1, "duplicate game line");
      std::string name = tok[1].text;
      for (size_t k = 2; k < tok.size(); ++k) name += " " + tok[k].text;
      builder.SetName(name);
      have_name = true;
    } else if (kw == "players") {
      need(2, "players <id>...");
      if (have_players) throw ParseError(line, 1, "duplicate players line");
      for (size_t k = 1; k < tok.size(); ++k) {
        RequireIdentifier(tok[k], line, "player id");
        if (!players.insert(tok[k].text).second) {
          throw ParseError(line, tok[k].column,
                           "duplicate player '" + tok[k].text + "'");
        }
        builder.AddPlayer(tok[k].text);
      }
      have_players = true;
    } else if (kw == "node") {
      need(3, "node <id> root | node <id> parent=<id> move=<p>:<a>,...");
      require_players(tok[0]);
      RequireIdentifier(tok[1], line, "node id");
      const std::string& id = tok[1].text;
      if (node_line.count(id)) {
        throw ParseError(line, tok[1].column,
                         "duplicate node id '" + id + "' (first on line " +
                             std::to_string(node_line[id]) + ")");
      }
      node_line[id] = line;
      if (tok[2].text == "root") {
        extra(3);
        if (root_line) {
          throw ParseError(line, tok[2].column,
                           "second root (first on line " +
                               std::to_string(root_line) + ")");
        }
        root_line = line;
        builder.AddRoot(id);
        continue;
      }
      need(4, "node <id> parent=<id> move=<p>:<a>,...");
      extra(4);
      const std::string parent = KeyValue(tok[2], "parent", line);
      parent_refs.push_back({parent, {line, tok[2].column}});
      const std::string move_text = KeyValue(tok[3], "move", line);
      std::vector<std::pair<std::string, std::string>> move;
      std::set<std::string> movers;
      size_t start = 0;
      while (start <= move_text.size()) {
        size_t end = move_text.find(',', start);
        if (end == std::string::npos) end = move_text.size();
        const std::string part = move_text.substr(start, end - start);
        const int col = tok[3].column + 5 + static_cast<int>(start);
        const size_t colon = part.find(':');
        if (colon == std::string::npos || colon == 0 ||
            colon + 1 == part.size() ||
            part.find(':', colon + 1) != std::string::npos) {
          throw ParseError(line, col,
                           "expected <player>:<action>, found '" + part + "'");
        }
        const std::string p = part.substr(0, colon);
        require_player(tok[3], p, col);
        if (!movers.insert(p).second) {
          throw ParseError(line, col,
                           "player '" + p + "' appears twice in one move");
        }
        move.emplace_back(p, part.substr(colon + 1));
        if (end == move_text.size()) break;
        start = end + 1;
      }
      builder.AddNode(id, parent, std::move(move));
    } else if (kw == "terminal") {
      need(3, "terminal <id> name=<z>");
      extra(3);
      const std::string name = KeyValue(tok[2], "name", line);
      if (!ValidIdentifier(name)) {
        throw ParseError(line, tok[2].column, "invalid terminal name");
      }
      node_refs.push_back({tok[1].text, {line, tok[1].column}});
      builder.SetTerminalName(tok[1].text, name);
    } else if (kw == "infoset") {
      need(5, "infoset <player> <id> = <node>...");
      require_players(tok[0]);
      require_player(tok[1], tok[1].text, tok[1].column);
      RequireIdentifier(tok[2], line, "information set id");
      if (tok[3].text != "=") {
        throw ParseError(line, tok[3].column,
                         "expected '=', found '" + tok[3].text + "'");
      }
      std::vector<std::string> members;
      for (size_t k = 4; k < tok.size(); ++k) {
        node_refs.push_back({tok[k].text, {line, tok[k].column}});
        members.push_back(tok[k].text);
      }
      builder.AddInfoset(tok[1].text, tok[2].text, std::move(members));
    } else {
      throw ParseError(line, tok[0].column, "unknown directive '" + kw + "'");
    }
  }
  const int end_line = static_cast<int>(lines.size());
  if (!have_players) throw ParseError(end_line, 0, "players line missing");
  if (!root_line) throw ParseError(end_line, 0, "root node missing");
  for (const auto& [id, where] : parent_refs) {
    if (!node_line.count(id)) {
      throw ParseError(where.first, where.second,
                       "unknown parent '" + id + "'");
    }
  }
  for (const auto& [id, where] : node_refs) {
    if (!node_line.count(id)) {
      throw ParseError(where.first, where.second, "unknown node '" + id + "'");
    }
  }
  Game game = [&] {
    try {
      return builder.Build();
    } catch (const StructureError& e) {
      throw ParseError(0, 0, e.what());
    }
  }();
  if (validate) RequireValid(game);
  return game;
}

std::string SerializeEgs(const Game& game) {
  std::ostringstream os;
  if (!game.name().empty()) os << "game " << game.name() << "\n";
  os << "players";
  for (const auto& p : game.players()) os << " " << p;
  os << "\n";
  for (const Node& n : game.nodes()) {
    os << "node " << n.id;
    if (n.parent == kNoNode) {
      os << " root\n";
    } else {
      os << " parent=" << game.node(n.parent).id << " move=";
      for (size_t k = 0; k < n.move.size(); ++k) {
        if (k) os << ",";
        os << game.players()[n.move[k].player] << ":" << n.move[k].action;
      }
      os << "\n";
    }
    if (n.terminal()) {
      os << "terminal " << n.id << " name=" << n.terminal_name << "\n";
    }
  }
  for (const InfoSet& k : game.infosets()) {
    os << "infoset " << game.players()[k.owner] << " " << k.id << " =";
    for (NodeIndex m : k.members) os << " " << game.node(m).id;
    os << "\n";
  }
  return os.str();
}

// --- ZNF -------------------------------------------------------------------

NormalForm ParseZnf(std::string_view text) {
  NormalForm nf;
  bool have_players = false;
  bool have_terminals = false;
  std::map<std::string, int> player_index;
  std::vector<bool> have_strategies;
  struct Row {
    std::vector<std::string> labels;
    std::string z;
    int line;
  };
  std::vector<Row> rows;

  const auto lines = SplitLines(text);
  for (size_t ln = 0; ln < lines.size(); ++ln) {
    const int line = static_cast<int>(ln) + 1;
    const std::vector<Token> tok = Tokenize(lines[ln]);
    if (tok.empty()) continue;
    const std::string& kw = tok[0].text;
    if (kw == "players") {
      if (have_players) throw ParseError(line, 1, "duplicate players line");
      if (tok.size() < 2) throw ParseError(line, 1, "players line is empty");
      for (size_t k = 1; k < tok.size(); ++k) {
        RequireIdentifier(tok[k], line, "player id");
        nf.players.push_back(tok[k].text);
      }
      std::sort(nf.players.begin(), nf.players.end());
      for (size_t p = 0; p < nf.players.size(); ++p) {
        if (!player_index.emplace(nf.players[p], static_cast<int>(p)).second) {
          throw ParseError(line, 0,
                           "duplicate player '" + nf.players[p] + "'");
        }
      }
      nf.strategies.assign(nf.players.size(), {});
      have_strategies.assign(nf.players.size(), false);
      have_players = true;
    } else if (kw == "strategies") {
      if (!have_players) throw ParseError(line, 1, "players line missing");
      if (tok.size() < 3 || tok[1].text.size() < 2 ||
          tok[1].text.back() != ':') {
        throw ParseError(line, tok.size() > 1 ? tok[1].column : 1,
                         "expected 'strategies <player>: <label>...'");
      }
      const std::string p = tok[1].text.substr(0, tok[1].text.size() - 1);
      auto it = player_index.find(p);
      if (it == player_index.end()) {
        throw ParseError(line, tok[1].column, "unknown player '" + p + "'");
      }
      if (have_strategies[it->second]) {
        throw ParseError(line, tok[1].column,
                         "duplicate strategies line for player '" + p + "'");
      }
      have_strategies[it->second] = true;
      auto& list = nf.strategies[it->second];
      for (size_t k = 2; k < tok.size(); ++k) list.push_back(tok[k].text);
      std::sort(list.begin(), list.end());
      if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
        throw ParseError(line, 0, "duplicate strategy label for player '" +
                                      p + "'");
      }
    } else if (kw == "terminals") {
      if (have_terminals) throw ParseError(line, 1, "duplicate terminals line");
      if (tok.size() < 2) throw ParseError(line, 1, "terminals line is empty");
      for (size_t k = 1; k < tok.size(); ++k) {
        nf.terminals.push_back(tok[k].text);
      }
      std::sort(nf.terminals.begin(), nf.terminals.end(), NaturalLess);
      if (std::adjacent_find(nf.terminals.begin(), nf.terminals.end()) !=
          nf.terminals.end()) {
        throw ParseError(line, 0, "duplicate terminal name");
      }
      have_terminals = true;
    } else if (kw == "outcome") {
      if (!have_players) throw ParseError(line, 1, "players line missing");
      const size_t n = nf.players.size();
      if (tok.size() != n + 3 || tok[n + 1].text != "->") {
        throw ParseError(line, 1,
                         "expected 'outcome' with " + std::to_string(n) +
                             " labels, '->' and a terminal");
      }
      Row row{{}, tok[n + 2].text, line};
      for (size_t k = 1; k <= n; ++k) row.labels.push_back(tok[k].text);
      rows.push_back(std::move(row));
    } else {
      throw ParseError(line, tok[0].column, "unknown directive '" + kw + "'");
    }
  }
  const int end_line = static_cast<int>(lines.size());
  if (!have_players) throw ParseError(end_line, 0, "players line missing");
  for (size_t p = 0; p < nf.players.size(); ++p) {
    if (!have_strategies[p]) {
      throw ParseError(end_line, 0,
                       "strategies line missing for player '" +
                           nf.players[p] + "'");
    }
  }
  if (!have_terminals) throw ParseError(end_line, 0, "terminals line missing");

  nf.outcome.assign(nf.num_profiles(), -1);
  for (const Row& row : rows) {
    std::vector<int> profile(nf.players.size());
    for (size_t p = 0; p < nf.players.size(); ++p) {
      const auto& list = nf.strategies[p];
      auto it = std::lower_bound(list.begin(), list.end(), row.labels[p]);
      if (it == list.end() || *it != row.labels[p]) {
        throw ParseError(row.line, 0,
                         "unknown strategy '" + row.labels[p] +
                             "' for player '" + nf.players[p] + "'");
      }
      profile[p] = static_cast<int>(it - list.begin());
    }
    auto zt = std::find(nf.terminals.begin(), nf.terminals.end(), row.z);
    if (zt == nf.terminals.end()) {
      throw ParseError(row.line, 0, "unknown terminal '" + row.z + "'");
    }
    int& slot = nf.outcome[nf.ProfileIndex(profile)];
    if (slot >= 0) {
      throw ParseError(row.line, 0, "profile (" + [&] {
        std::string s;
        for (size_t p = 0; p < row.labels.size(); ++p) {
          s += (p ? "," : "") + row.labels[p];
        }
        return s;
      }() + ") covered twice");
    }
    slot = static_cast<int>(zt - nf.terminals.begin());
  }
  std::vector<bool> hit(nf.terminals.size(), false);
  for (size_t idx = 0; idx < nf.outcome.size(); ++idx) {
    if (nf.outcome[idx] < 0) {
      const std::vector<int> profile = nf.Profile(idx);
      std::string s;
      for (size_t p = 0; p < profile.size(); ++p) {
        s += (p ? "," : "") + nf.strategies[p][profile[p]];
      }
      throw ParseError(end_line, 0, "profile (" + s + ") uncovered");
    }
    hit[nf.outcome[idx]] = true;
  }
  for (size_t z = 0; z < hit.size(); ++z) {
    if (!hit[z]) {
      throw ParseError(end_line, 0,
                       "terminal '" + nf.terminals[z] + "' is never reached");
    }
  }
  return nf;
}

std::string SerializeZnf(const NormalForm& nf) {
  std::ostringstream os;
  os << "players";
  for (const auto& p : nf.players) os << " " << p;
  os << "\n";
  for (size_t p = 0; p < nf.players.size(); ++p) {
    os << "strategies " << nf.players[p] << ":";
    for (const auto& s : nf.strategies[p]) os << " " << s;
    os << "\n";
  }
  os << "terminals";
  for (const auto& z : nf.terminals) os << " " << z;
  os << "\n";
  for (size_t idx = 0; idx < nf.num_profiles(); ++idx) {
    const std::vector<int> profile = nf.Profile(idx);
    os << "outcome";
    for (size_t p = 0; p < profile.size(); ++p) {
      os << " " << nf.strategies[p][profile[p]];
    }
    os << " -> " << nf.terminals[nf.outcome[idx]] << "\n";
  }
  return os.str();
}

std::string RenderTable(const NormalForm& nf) {
  const size_t n = nf.players.size();
  // Column headers: profiles of players 1..n-1.
  size_t columns = 1;
  for (size_t p = 1; p < n; ++p) columns *= nf.strategies[p].size();
  std::vector<std::string> header(columns);
  for (size_t c = 0; c < columns; ++c) {
    size_t rest = c;
    std::string h;
    for (size_t p = n; p-- > 1;) {
      const size_t m = nf.strategies[p].size();
      h = nf.strategies[p][rest % m] + (h.empty() ? "" : "," + h);
      rest /= m;
    }
    header[c] = h.empty() ? "-" : h;
  }
  std::string corner = nf.players[0];
  for (size_t p = 1; p < n; ++p) corner += (p == 1 ? "\\" : ",") + nf.players[p];

  size_t w0 = corner.size();
  for (const auto& s : nf.strategies[0]) w0 = std::max(w0, s.size());
  std::vector<size_t> w(columns);
  for (size_t c = 0; c < columns; ++c) {
    w[c] = header[c].size();
    for (size_t r = 0; r < nf.strategies[0].size(); ++r) {
      w[c] = std::max(w[c], nf.terminals[nf.outcome[r * columns + c]].size());
    }
  }
  auto pad = [](const std::string& s, size_t width) {
    return s + std::string(width - s.size(), ' ');
  };
  std::ostringstream os;
  os << pad(corner, w0) << " |";
  for (size_t c = 0; c < columns; ++c) os << " " << pad(header[c], w[c]);
  os << "\n" << std::string(w0 + 1, '-') << "+";
  for (size_t c = 0; c < columns; ++c) os << std::string(w[c] + 1, '-');
  os << "\n";
  for (size_t r = 0; r < nf.strategies[0].size(); ++r) {
    os << pad(nf.strategies[0][r], w0) << " |";
    for (size_t c = 0; c < columns; ++c) {
      os << " " << pad(nf.terminals[nf.outcome[r * columns + c]], w[c]);
    }
    os << "\n";
  }
  return os.str();
}

// --- DOT -------------------------------------------------------------------

std::string ExportDot(const Game& game) {
  std::ostringstream os;
  os << "digraph " << Quoted(game.name().empty() ? "game" : game.name())
     << " {\n";
  os << "  node [shape=circle];\n";
  for (const Node& n : game.nodes()) {
    os << "  " << Quoted(n.id) << " [label=";
    if (n.terminal()) {
      os << Quoted(n.terminal_name) << ", shape=box";
    } else {
      std::string players;
      for (size_t k = 0; k < n.active.size(); ++k) {
        players += (k ? "," : "") + game.players()[n.active[k]];
      }
      os << Quoted(players);
    }
    os << "];\n";
  }
  for (const Node& n : game.nodes()) {
    if (n.parent == kNoNode) continue;
    os << "  " << Quoted(game.node(n.parent).id) << " -> " << Quoted(n.id)
       << " [label=" << Quoted(MoveToString(game, n.move)) << "];\n";
  }
  for (const InfoSet& k : game.infosets()) {
    for (size_t m = 1; m < k.members.size(); ++m) {
      os << "  " << Quoted(game.node(k.members[m - 1]).id) << " -> "
         << Quoted(game.node(k.members[m]).id)
         << " [style=dashed, dir=none, constraint=false, label="
         << Quoted(game.players()[k.owner]) << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

// --- JSON ------------------------------------------------------------------

namespace {

nlohmann::json StepToJson(const TraceStep& step, size_t index) {
  nlohmann::json j;
  j["step"] = index;
  j["kind"] = KindName(step.kind);
  switch (step.kind) {
    case TraceStep::Kind::kCoalesce:
      j["site"] = {{"player", step.coalescing.player},
                   {"source", step.coalescing.source},
                   {"target", step.coalescing.target},
                   {"pivot", step.coalescing.pivot}};
      break;
    case TraceStep::Kind::kSimultanize:
      j["site"] = {{"player", step.simultanizing.player},
                   {"history", step.simultanizing.history},
                   {"dominating", step.simultanizing.dominating}};
      break;
    case TraceStep::Kind::kSplit:
      j["site"] = {{"history", step.split_history},
                   {"first", step.split_first}};
      break;
  }
  j["node_map"] = step.node_map;
  j["terminal_map"] = step.terminal_map;
  return j;
}

}  // namespace

std::string TraceToJsonLines(const TransformTrace& trace) {
  std::string out;
  for (size_t k = 0; k < trace.steps.size(); ++k) {
    out += StepToJson(trace.steps[k], k).dump() + "\n";
  }
  return out;
}

std::string VerdictToJson(const EquivalenceVerdict& verdict,
                          const NormalForm& a, const NormalForm& b) {
  nlohmann::json j;
  j["equivalent"] = verdict.equivalent;
  switch (verdict.method) {
    case EquivalenceMethod::kDirect:
      j["method"] = "direct";
      break;
    case EquivalenceMethod::kMinimal:
      j["method"] = "minimal";
      break;
    case EquivalenceMethod::kBoth:
      j["method"] = "both";
      break;
  }
  if (verdict.normal_form_witness) {
    const NormalFormIsomorphism& iso = *verdict.normal_form_witness;
    nlohmann::json strategies = nlohmann::json::object();
    for (size_t p = 0; p < a.players.size(); ++p) {
      nlohmann::json m = nlohmann::json::object();
      const size_t q = static_cast<size_t>(iso.player_map[p]);
      for (size_t s = 0; s < a.strategies[p].size(); ++s) {
        m[a.strategies[p][s]] = b.strategies[q][iso.strategy_map[p][s]];
      }
      strategies[a.players[p]] = m;
    }
    nlohmann::json terminals = nlohmann::json::object();
    for (size_t z = 0; z < a.terminals.size(); ++z) {
      terminals[a.terminals[z]] = b.terminals[iso.terminal_map[z]];
    }
    j["normal_form_isomorphism"] = {{"strategies", strategies},
                                    {"terminals", terminals}};
  }
  auto steps = [](const ReductionResult& r) {
    nlohmann::json arr = nlohmann::json::array();
    for (size_t k = 0; k < r.trace.steps.size(); ++k) {
      arr.push_back(StepToJson(r.trace.steps[k], k));
    }
    return arr;
  };
  if (verdict.reduction_a && verdict.reduction_b) {
    j["reductions"] = {{"a", steps(*verdict.reduction_a)},
                       {"b", steps(*verdict.reduction_b)}};
    if (verdict.minimal_witness) {
      nlohmann::json nodes = nlohmann::json::object();
      const Game& ga = verdict.reduction_a->minimal_game;
      const Game& gb = verdict.reduction_b->minimal_game;
      for (NodeIndex h = 0; h < ga.num_nodes(); ++h) {
        nodes[ga.node(h).id] = gb.node(verdict.minimal_witness->node_map[h]).id;
      }
      j["minimal_isomorphism"] = nodes;
    }
  }
  return j.dump(2) + "\n";
}

}  // namespace egs
