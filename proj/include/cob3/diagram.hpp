#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cob3/term.hpp"

namespace cob3 {

/// Where a wire starts: a boundary input or an output port of a node.
struct Source {
  static constexpr std::size_t kBoundary = static_cast<std::size_t>(-1);
  std::size_t node = kBoundary;
  std::size_t port = 0;
  bool is_boundary() const { return node == kBoundary; }
  auto operator<=>(const Source&) const = default;
};

/// Where a wire ends: a boundary output or an input port of a node.
struct Target {
  static constexpr std::size_t kBoundary = static_cast<std::size_t>(-1);
  std::size_t node = kBoundary;
  std::size_t port = 0;
  bool is_boundary() const { return node == kBoundary; }
  auto operator<=>(const Target&) const = default;
};

struct DiagramNode {
  Generator gen;
  std::vector<Source> inputs;  // source feeding each input port
};

/// String diagram of a term: generator boxes with ordered ports and wires.
/// Identities, swaps and `empty` are absorbed into the wiring, so two terms
/// give isomorphic diagrams iff they are equal in the free symmetric strict
/// monoidal category on the generators.
struct Diagram {
  std::size_t dom = 0;
  std::size_t cod = 0;
  std::vector<DiagramNode> nodes;
  std::vector<Source> outputs;  // source feeding each boundary output

  /// Target of every source: index [node][port], boundary inputs separately.
  struct TargetIndex {
    std::vector<Target> boundary;
    std::vector<std::vector<Target>> node;
  };
  TargetIndex targets() const;

  bool acyclic() const;
};

/// Throws TypeError.
Diagram diagram_of_term(const BordismTerm& t);

/// Diagram with nodes renumbered canonically, plus a string key such that
/// two diagrams are isomorphic (fixing boundary order) iff keys are equal.
struct CanonicalDiagram {
  Diagram diagram;
  std::string key;
};
CanonicalDiagram canonicalize_diagram(const Diagram& d);

/// A term whose diagram is `d`; nodes are emitted in topological order.
BordismTerm diagram_to_term(const Diagram& d);

/// Embedding of a pattern diagram into a host diagram.
struct Match {
  std::vector<std::size_t> nodes;  // host node of each pattern node
  std::vector<Source> inputs;      // host source feeding pattern input i
  std::vector<Target> outputs;     // host target fed by pattern output j
  std::map<std::string, PrimeLabel> bindings;  // metavariable -> label
};

/// All embeddings of `pattern` into `host`, ordered by host position. A
/// pattern without nodes must be a single wire and matches every host wire.
/// Patterns with nodes must be connected and have no input-to-output wires.
std::vector<Match> find_matches(const Diagram& pattern, const Diagram& host);

/// Replaces the matched occurrence with `replacement` (same arity as the
/// pattern); metavariables are instantiated from the match. Returns nullopt
/// if the result would be cyclic or a metavariable is unbound.
std::optional<Diagram> replace_match(const Diagram& host, const Match& m,
                                     const Diagram& replacement);

}  // namespace cob3
