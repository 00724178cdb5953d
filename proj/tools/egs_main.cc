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

// Command-line front end.
//
// Exit codes: 0 success (or equivalent), 1 not equivalent, 2 usage error,
// 3 parse, validation or realizability error, 4 internal consistency error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "egs/equivalence.h"
#include "egs/game.h"
#include "egs/io.h"
#include "egs/random_game.h"
#include "egs/reduction.h"
#include "egs/strategy.h"
#include "egs/transform.h"

namespace {

constexpr int kExitNotEquivalent = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitConsistency = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

egs::Game Load(const std::string& path) {
  return egs::ParseEgs(ReadFile(path));
}

int RunValidate(const std::string& path) {
  egs::Game game = egs::ParseEgs(ReadFile(path), /*validate=*/false);
  egs::ValidationReport report = egs::Validate(game);
  if (report.ok()) {
    std::cout << path << ": valid\n";
    return 0;
  }
  std::cout << path << ": " << report.violations.size() << " violation(s)\n"
            << report.ToString();
  return kExitInput;
}

int RunInfo(const std::string& path) {
  egs::Game g = Load(path);
  std::cout << "name: " << (g.name().empty() ? "-" : g.name()) << "\n";
  std::cout << "players:";
  for (const auto& p : g.players()) std::cout << " " << p;
  std::cout << "\nnodes: " << g.num_nodes()
            << "\nterminals: " << g.terminals().size()
            << "\nheight: " << g.Height()
            << "\ninformation sets: " << g.infosets().size() << "\n";
  for (egs::PlayerIndex p = 0; p < g.num_players(); ++p) {
    std::cout << "  player " << g.players()[p] << ":";
    for (egs::InfosetIndex k : g.InfosetsOf(p)) {
      const auto& set = g.infoset(k);
      std::cout << " " << set.id << "{";
      for (size_t a = 0; a < set.actions.size(); ++a) {
        std::cout << (a ? "," : "") << set.actions[a];
      }
      std::cout << "}";
    }
    std::cout << "\n";
  }
  std::cout << "minimal: " << (egs::IsMinimal(g) ? "yes" : "no") << "\n";
  return 0;
}

int RunStrategies(const std::string& path, bool reduced) {
  egs::Game g = Load(path);
  for (egs::PlayerIndex p = 0; p < g.num_players(); ++p) {
    std::cout << "player " << g.players()[p] << ":";
    if (reduced) {
      for (const auto& s : egs::ReducedStrategies(g, p)) {
        std::cout << " " << s.label;
      }
    } else {
      for (const auto& s : egs::EnumerateStrategies(g, p)) {
        std::cout << " " << egs::StrategyLabel(g, s);
      }
    }
    std::cout << "\n";
  }
  return 0;
}

int RunNormalForm(const std::string& path, bool reduced, bool znf,
                  const std::string& out) {
  egs::Game g = Load(path);
  egs::NormalForm nf = reduced ? egs::ComputeReducedNormalForm(g)
                               : egs::ComputeNormalForm(g);
  WriteOutput(out, znf ? egs::SerializeZnf(nf) : egs::RenderTable(nf));
  return 0;
}

int RunOpportunities(const std::string& path) {
  egs::Game g = Load(path);
  const auto gamma = egs::FindCoalescingSites(g);
  const auto sigma = egs::FindSimultanizingSites(g);
  std::cout << "coalescing sites: " << gamma.size() << "\n";
  for (size_t k = 0; k < gamma.size(); ++k) {
    std::cout << "  [" << k << "] " << egs::Describe(gamma[k]) << "\n";
  }
  std::cout << "simultanizing sites: " << sigma.size() << "\n";
  for (size_t k = 0; k < sigma.size(); ++k) {
    std::cout << "  [" << k << "] " << egs::Describe(sigma[k]) << "\n";
  }
  return 0;
}

template <typename Site>
const Site& PickSite(const std::vector<Site>& sites, size_t k,
                     const char* kind) {
  if (sites.empty()) throw UsageError(std::string("no ") + kind + " site");
  if (k >= sites.size()) {
    throw UsageError(std::string(kind) + " site index out of range (have " +
                     std::to_string(sites.size()) + ")");
  }
  return sites[k];
}

int RunCoalesce(const std::string& path, size_t site, const std::string& out) {
  egs::Game g = Load(path);
  const auto sites = egs::FindCoalescingSites(g);
  const auto& s = PickSite(sites, site, "coalescing");
  std::cerr << "applying " << egs::Describe(s) << "\n";
  WriteOutput(out, egs::SerializeEgs(egs::Coalesce(g, s).game));
  return 0;
}

int RunSimultanize(const std::string& path, size_t site, bool classic,
                   const std::string& out) {
  egs::Game g = Load(path);
  const auto sites = egs::FindSimultanizingSites(g);
  const auto& s = PickSite(sites, site, "simultanizing");
  std::cerr << "applying " << egs::Describe(s)
            << (classic ? " (classic interchange)" : "") << "\n";
  egs::Game result = classic ? egs::ClassicInterchange(g, s).game
                             : egs::Simultanize(g, s).game;
  WriteOutput(out, egs::SerializeEgs(result));
  return 0;
}

int RunMinimize(const std::string& path, const std::string& trace,
                const std::string& out, long long seed) {
  egs::Game g = Load(path);
  egs::ReductionResult r = seed >= 0
                               ? egs::MinimizeRandomOrder(
                                     g, static_cast<uint64_t>(seed))
                               : egs::Minimize(g);
  std::cerr << r.trace.steps.size() << " step(s)\n";
  if (!trace.empty()) WriteOutput(trace, egs::TraceToJsonLines(r.trace));
  WriteOutput(out, egs::SerializeEgs(r.minimal_game));
  return 0;
}

int RunEquiv(const std::string& a_path, const std::string& b_path,
             const std::string& method, const std::string& witness) {
  egs::Game a = Load(a_path);
  egs::Game b = Load(b_path);
  egs::EquivalenceMethod m = egs::EquivalenceMethod::kBoth;
  if (method == "direct") {
    m = egs::EquivalenceMethod::kDirect;
  } else if (method == "minimal") {
    m = egs::EquivalenceMethod::kMinimal;
  }
  egs::EquivalenceVerdict v = egs::DecideEquivalence(a, b, m);
  std::cout << (v.equivalent ? "equivalent" : "not equivalent") << "\n";
  if (!witness.empty()) {
    WriteOutput(witness,
                egs::VerdictToJson(v, egs::ComputeReducedNormalForm(a),
                                   egs::ComputeReducedNormalForm(b)));
  }
  return v.equivalent ? 0 : kExitNotEquivalent;
}

int RunReconstruct(const std::string& path, const std::string& out) {
  egs::NormalForm nf = egs::ParseZnf(ReadFile(path));
  WriteOutput(out, egs::SerializeEgs(egs::Reconstruct(nf)));
  return 0;
}

int RunExportDot(const std::string& path, const std::string& out) {
  WriteOutput(out, egs::ExportDot(Load(path)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extensive game structures: validation, invariant "
               "transformations, minimal reduction and equivalence"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string file;
  std::string file_b;
  std::string out;
  std::string trace;
  std::string method = "both";
  std::string witness;
  bool reduced = false;
  bool znf = false;
  bool classic = false;
  size_t site = 0;
  long long seed = -1;
  egs::GeneratorConfig cfg;

  auto* validate = app.add_subcommand("validate", "Check every structural rule");
  validate->add_option("file", file, "EGS file")->required();

  auto* info = app.add_subcommand("info", "Summarize a game");
  info->add_option("file", file, "EGS file")->required();

  auto* strategies = app.add_subcommand("strategies", "List strategies");
  strategies->add_option("file", file, "EGS file")->required();
  strategies->add_flag("--reduced", reduced, "List reduced strategies");

  auto* normal = app.add_subcommand("normal-form", "Print the normal form");
  normal->add_option("file", file, "EGS file")->required();
  normal->add_flag("--reduced", reduced, "Use reduced strategies");
  normal->add_flag("--znf", znf, "Emit ZNF text instead of a table");
  normal->add_option("-o,--output", out, "Output file");

  auto* opportunities =
      app.add_subcommand("opportunities", "List coalescing and simultanizing sites");
  opportunities->add_option("file", file, "EGS file")->required();

  auto* coalesce = app.add_subcommand("coalesce", "Apply one coalescing step");
  coalesce->add_option("file", file, "EGS file")->required();
  coalesce->add_option("--site", site, "Site index from 'opportunities'");
  coalesce->add_option("-o,--output", out, "Output file");

  auto* simultanize =
      app.add_subcommand("simultanize", "Apply one simultanizing step");
  simultanize->add_option("file", file, "EGS file")->required();
  simultanize->add_option("--site", site, "Site index from 'opportunities'");
  simultanize->add_flag("--classic", classic,
                        "Then split with the site's player first");
  simultanize->add_option("-o,--output", out, "Output file");

  auto* minimize = app.add_subcommand("minimize", "Reduce to the minimal game");
  minimize->add_option("file", file, "EGS file")->required();
  minimize->add_option("--trace", trace, "Write the steps as JSON lines");
  minimize->add_option("--random-order", seed,
                       "Pick sites uniformly at random with this seed");
  minimize->add_option("-o,--output", out, "Output file");

  auto* equiv = app.add_subcommand("equiv", "Decide behavioral equivalence");
  equiv->add_option("a", file, "First EGS file")->required();
  equiv->add_option("b", file_b, "Second EGS file")->required();
  equiv->add_option("--method", method, "minimal, direct or both")
      ->check(CLI::IsMember({"minimal", "direct", "both"}));
  equiv->add_option("--witness", witness, "Write the witness as JSON");

  auto* reconstruct =
      app.add_subcommand("reconstruct", "Build the minimal game of a ZNF file");
  reconstruct->add_option("file", file, "ZNF file")->required();
  reconstruct->add_option("-o,--output", out, "Output file");

  auto* dot = app.add_subcommand("export-dot", "Render as Graphviz DOT");
  dot->add_option("file", file, "EGS file")->required();
  dot->add_option("-o,--output", out, "Output file");

  auto* random = app.add_subcommand("random", "Generate a random game");
  random->add_option("--seed", cfg.seed, "Seed");
  random->add_option("--players", cfg.num_players, "2..5")
      ->check(CLI::Range(2, 5));
  random->add_option("--depth", cfg.max_depth, "1..5")->check(CLI::Range(1, 5));
  random->add_option("--actions", cfg.max_actions, "2..3")
      ->check(CLI::Range(2, 3));
  random->add_option("--simultaneity", cfg.simultaneity_prob, "[0,1]")
      ->check(CLI::Range(0.0, 1.0));
  random->add_option("--merge", cfg.infoset_merge_prob, "[0,1]")
      ->check(CLI::Range(0.0, 1.0));
  random->add_option("--max-nodes", cfg.max_nodes, "Node budget")
      ->check(CLI::PositiveNumber);
  random->add_option("-o,--output", out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*validate) return RunValidate(file);
    if (*info) return RunInfo(file);
    if (*strategies) return RunStrategies(file, reduced);
    if (*normal) return RunNormalForm(file, reduced, znf, out);
    if (*opportunities) return RunOpportunities(file);
    if (*coalesce) return RunCoalesce(file, site, out);
    if (*simultanize) return RunSimultanize(file, site, classic, out);
    if (*minimize) return RunMinimize(file, trace, out, seed);
    if (*equiv) return RunEquiv(file, file_b, method, witness);
    if (*reconstruct) return RunReconstruct(file, out);
    if (*dot) return RunExportDot(file, out);
    if (*random) {
      WriteOutput(out, egs::SerializeEgs(egs::GenerateRandomGame(cfg)));
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const egs::InvalidSiteError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const egs::QueryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const egs::ConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const egs::ParseError& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const egs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
