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

#ifndef EGS_IO_H_
#define EGS_IO_H_

#include <string>
#include <string_view>

#include "egs/equivalence.h"
#include "egs/game.h"
#include "egs/strategy.h"
#include "egs/transform.h"

namespace egs {

// EGS text format, one directive per line; '#' starts a comment.
//
//   game <name>
//   players <id>...
//   node <id> root
//   node <id> parent=<id> move=<player>:<action>[,<player>:<action>...]
//   terminal <id> name=<z>
//   infoset <player> <infoset-id> = <node-id>...
//
// Active (node, player) pairs without an infoset line get a singleton set.
// Syntax and tree-shape problems throw ParseError. With `validate`, a game
// breaking a semantic rule throws ValidationError.
Game ParseEgs(std::string_view text, bool validate = true);

// Canonical form: nodes depth-first, every information set listed.
std::string SerializeEgs(const Game& game);

// ZNF text format:
//
//   players <id>...
//   strategies <player>: <label>...
//   terminals <z>...
//   outcome <label-of-each-player>... -> <z>
//
// One outcome line per profile. Lists are sorted on parse.
NormalForm ParseZnf(std::string_view text);
std::string SerializeZnf(const NormalForm& nf);

// Matrix rendering: rows are the first player's strategies, columns the
// profiles of the others.
std::string RenderTable(const NormalForm& nf);

// Graphviz digraph: move edges labeled with profiles, dashed undirected
// edges joining consecutive members of each information set.
std::string ExportDot(const Game& game);

// One JSON object per line per step.
std::string TraceToJsonLines(const TransformTrace& trace);

// JSON witness of an equivalence verdict.
std::string VerdictToJson(const EquivalenceVerdict& verdict,
                          const NormalForm& a, const NormalForm& b);

}  // namespace egs

#endif  // EGS_IO_H_
