// Copyright 2026 The Authors.
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

// blockade: certificates for committee-tree games and packing/covering
// partitions for trees of uniform matroids.
//
// Exit codes: 0 pass, 1 verification failure, 2 bad input or unsupported
// instance, 3 precondition violated.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blockade/blockade.hpp"

namespace {

using namespace blockade;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kBadInput = 2;
constexpr int kPrecondition = 3;

struct Config {
  std::string format = "human";
  std::uint64_t seed = 1;
  int depth_min = 1;
  int depth_max = 6;
  std::string mode = "all";
  int size = 10;
  int node_size = 4;
  std::string side = "M";
  std::vector<std::string> files;
  std::string action;
  std::string kind;
  std::vector<std::string> elements;
  int max_n = 0;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

CommitteeTree load_tree(const std::string& path) {
  auto in = open_input(path);
  return parse_ctree(in);
}

MatroidPair load_pair(const std::string& path) {
  auto in = open_input(path);
  return parse_tmat(in);
}

int cmd_vote(const Config& cfg) {
  const CommitteeTree tree = load_tree(cfg.files.at(0));
  const VoteOutcome out = vote_outcome(tree);
  const int root_margin = out.margin[tree.root()];
  if (parse_output_format(cfg.format) == OutputFormat::Human) {
    std::cout << to_string(out.result);
    if (out.result != VoteResult::Tie) std::cout << " margin " << (root_margin < 0 ? -root_margin : root_margin);
    std::cout << '\n';
    for (Vertex v = 0; v < tree.vertex_count(); ++v) {
      if (!tree.is_leaf(v)) std::cout << "  vertex " << v << " margin " << out.margin[v] << '\n';
    }
  } else {
    std::cout << "result " << to_string(out.result) << '\n';
    for (Vertex v = 0; v < tree.vertex_count(); ++v) {
      if (!tree.is_leaf(v)) std::cout << "margin " << v << ' ' << out.margin[v] << '\n';
    }
  }
  return kPass;
}

int cmd_certify(const Config& cfg) {
  const CommitteeTree tree = load_tree(cfg.files.at(0));
  const Certificate cert = find_certificate(tree);
  write_certificate(std::cout, cert);
  return kPass;
}

int cmd_verify(const Config& cfg) {
  if (cfg.files.size() != 2) throw InputError("verify needs a tree file and a certificate file");
  const CommitteeTree tree = load_tree(cfg.files[0]);
  auto in = open_input(cfg.files[1]);
  const CertificateRecord rec = parse_certificate(in);
  const VerificationReport report = verify_certificate(tree, rec);
  std::cout << report;
  return report.passed() ? kPass : kFail;
}

int cmd_stability(const Config& cfg) {
  auto in = open_input(cfg.files.at(0));
  const PeriodicTreeSpec spec = parse_pgen(in);
  std::vector<FrontierMode> modes;
  if (cfg.mode == "all") {
    modes = {FrontierMode::Neutral, FrontierMode::OpenAsBlue, FrontierMode::OpenAsRed};
  } else {
    modes = {parse_frontier_mode(cfg.mode)};
  }
  const StabilityReport report = stability_study(as_generator(spec), cfg.depth_min, cfg.depth_max, modes);
  const bool human = parse_output_format(cfg.format) == OutputFormat::Human;
  for (const auto& rec : report.records) {
    const std::string mode = rec.mode ? to_string(*rec.mode) : "finite";
    std::string edges;
    for (Vertex s : rec.prefix) edges += ' ' + std::to_string(s);
    if (human) {
      std::cout << "depth " << rec.depth << ' ' << mode << ' ' << to_string(rec.kind) << " prefix" << edges << '\n';
    } else {
      std::cout << "row " << rec.depth << ' ' << mode << ' ' << to_string(rec.kind) << edges << '\n';
    }
  }
  if (report.stabilization_depth) {
    std::cout << (human ? "stabilized at depth " : "stabilization ") << *report.stabilization_depth << '\n';
  } else {
    std::cout << (human ? "not stabilized" : "stabilization none") << '\n';
  }
  return kPass;
}

ElementSet element_args(const TreeOfMatroids& tm, const std::vector<std::string>& names) {
  ElementSet out;
  for (const auto& n : names) out.push_back(element_by_name(tm, n));
  return normalized(out);
}

int cmd_mat(const Config& cfg) {
  const MatroidPair pair = load_pair(cfg.files.at(0));
  if (cfg.side != "M" && cfg.side != "N") throw InputError("side must be M or N");
  const TreeOfMatroids& tm = cfg.side == "M" ? pair.m : pair.n;
  const OutputFormat format = parse_output_format(cfg.format);
  const auto& a = cfg.action;
  if (a == "independent") {
    std::cout << (is_independent(tm, element_args(tm, cfg.elements)) ? "true" : "false") << '\n';
  } else if (a == "rank") {
    std::cout << rank(tm, element_args(tm, cfg.elements)) << '\n';
  } else if (a == "closure") {
    std::cout << names_of(tm, closure(tm, element_args(tm, cfg.elements))) << '\n';
  } else if (a == "circuits") {
    for (const auto& c : enumerate_circuits(tm)) {
      std::string inner = names_of(tm, c);
      std::replace(inner.begin(), inner.end(), ' ', ',');
      std::cout << '{' << inner << "}\n";
    }
  } else if (a == "intersect") {
    write_triple(std::cout, pair.m, classical_intersection(pair.m, pair.n), format);
  } else if (a == "partition") {
    const PartitionCertificate cert = intersection_certificate(pair);
    write_partition(std::cout, pair, cert, format);
    return cert.report.passed() ? kPass : kFail;
  } else {
    throw InputError("unknown mat action '" + a + "'");
  }
  return kPass;
}

int cmd_gen(const Config& cfg) {
  Rng rng(cfg.seed);
  if (cfg.size < 1) throw InputError("size must be positive");
  if (cfg.kind == "tree") {
    write_ctree(std::cout, random_tree(rng, cfg.size));
  } else if (cfg.kind == "pgen") {
    write_pgen(std::cout, random_pgen(rng, cfg.size));
  } else if (cfg.kind == "tmat") {
    write_tmat(std::cout, random_tmat(rng, cfg.size, cfg.node_size));
  } else {
    throw InputError("unknown instance kind '" + cfg.kind + "'");
  }
  return kPass;
}

int cmd_enumerate(const Config& cfg) {
  const EnumerationSummary s = enumerate_trees(cfg.max_n);
  const bool human = parse_output_format(cfg.format) == OutputFormat::Human;
  const char* sep = human ? ": " : " ";
  std::cout << "max_n" << sep << s.max_n << '\n'
            << "shapes" << sep << s.shapes << '\n'
            << "instances" << sep << s.instances << '\n'
            << "certified" << sep << s.certified << '\n'
            << "vote_agreement" << sep << s.vote_agreements << '\n'
            << "exclusivity_checked" << sep << s.exclusivity_checked << '\n'
            << "exclusivity_violations" << sep << s.exclusivity_violations << '\n';
  for (const auto& c : s.counterexamples) std::cout << "counterexample\n" << c;
  std::cout << "verdict" << sep << (s.passed() ? "pass" : "fail") << '\n';
  return s.passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blockage certificates and matroid packing/covering partitions"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"human", "records"}));
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--depth-min", cfg.depth_min, "Smallest truncation depth");
  app.add_option("--depth-max", cfg.depth_max, "Largest truncation depth");
  app.add_option("--mode", cfg.mode, "Frontier mode")->check(CLI::IsMember({"all", "neutral", "blue", "red"}));

  auto* vote = app.add_subcommand("vote", "Deterministic vote on a finite tree");
  vote->add_option("tree", cfg.files, "Tree file (.ctree)")->required()->expected(1);
  auto* certify = app.add_subcommand("certify", "Find a verified blockage certificate");
  certify->add_option("tree", cfg.files, "Tree file (.ctree)")->required()->expected(1);
  auto* verify = app.add_subcommand("verify", "Check a certificate against a tree");
  verify->add_option("files", cfg.files, "Tree file and certificate file")->required()->expected(2);
  auto* stability = app.add_subcommand("stability", "Certificates on growing truncations");
  stability->add_option("pgen", cfg.files, "Periodic spec (.pgen)")->required()->expected(1);
  auto* mat = app.add_subcommand("mat", "Trees of uniform matroids");
  mat->add_option("action", cfg.action, "independent|rank|closure|circuits|intersect|partition")
      ->required()
      ->check(CLI::IsMember({"independent", "rank", "closure", "circuits", "intersect", "partition"}));
  mat->add_option("tmat", cfg.files, "Matroid pair (.tmat)")->required()->expected(1);
  mat->add_option("elements", cfg.elements, "Element names");
  mat->add_option("--side", cfg.side, "Which matroid of the pair")->check(CLI::IsMember({"M", "N"}));
  auto* gen = app.add_subcommand("gen", "Seeded random instance");
  gen->add_option("kind", cfg.kind, "tree|pgen|tmat")->required()->check(CLI::IsMember({"tree", "pgen", "tmat"}));
  gen->add_option("--size", cfg.size, "Vertices, states or nodes");
  gen->add_option("--node-size", cfg.node_size, "Largest node ground set (tmat)");
  auto* enumerate = app.add_subcommand("enumerate", "Exhaustive check over small trees");
  enumerate->add_option("max_n", cfg.max_n, "Largest vertex count")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kBadInput;
  }

  try {
    if (*vote) return cmd_vote(cfg);
    if (*certify) return cmd_certify(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*stability) return cmd_stability(cfg);
    if (*mat) return cmd_mat(cfg);
    if (*gen) return cmd_gen(cfg);
    if (*enumerate) return cmd_enumerate(cfg);
  } catch (const PreconditionViolated& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return kPrecondition;
  } catch (const ContractViolated& e) {
    std::cerr << "contract violated: " << e.what() << '\n';
    return kFail;
  } catch (const FeasibilityViolated& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kFail;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}
