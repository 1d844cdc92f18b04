#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cob3/diagram.hpp"
#include "cob3/term.hpp"

namespace cob3 {

/// Equation lhs = rhs between terms; prime labels written "?x" are
/// metavariables. Rules are always usable in both directions.
struct RewriteRule {
  std::string name;
  BordismTerm lhs;
  BordismTerm rhs;
  bool bidirectional = true;
};

struct RuleSet {
  std::string name;
  std::vector<RewriteRule> rules;

  const RewriteRule& rule(std::string_view name) const;
  bool contains(std::string_view name) const;
};

/// "CF", "CF_LEGS" or "G2_FULL"; each set contains the previous one.
/// Throws UnknownRuleSet.
RuleSet builtin_rules(std::string_view set_name);

/// Builds a rule from term text (metavariables allowed).
RewriteRule make_rule(std::string name, std::string_view lhs, std::string_view rhs);

enum class Direction { Forward, Backward };
std::string_view to_string(Direction d);

/// Subterm of t at a root-relative child-index path (0 = left, 1 = right).
/// Throws NoMatch for a path that leaves the tree.
const BordismTerm& subterm_at(const BordismTerm& t, std::span<const std::size_t> path);

/// Rewrites the subterm at `position` by `rule` (lhs -> rhs for Forward).
/// Matching is syntactic with prime-label metavariables. Throws NoMatch.
BordismTerm apply_rule(const BordismTerm& t, const RewriteRule& rule,
                       std::span<const std::size_t> position, Direction dir);

/// Where a search step applied: the host nodes matched by the rule side, in
/// the canonical numbering of the state before the step, or the wire a
/// node-free side was inserted on.
struct StepPosition {
  std::vector<std::size_t> nodes;
  std::optional<std::size_t> wire;
  bool operator==(const StepPosition&) const = default;
};

struct TraceStep {
  std::string rule;
  StepPosition position;
  Direction direction = Direction::Forward;
  BordismTerm result;  // state after the step
};

struct RewriteTrace {
  BordismTerm start;
  BordismTerm end;
  std::vector<TraceStep> steps;
};

struct SearchLimits {
  std::size_t max_steps = 16;
  std::size_t node_budget = 200000;
  /// Intermediate diagrams may have at most this many more generator boxes
  /// than the larger endpoint.
  std::size_t size_slack = 4;
};

struct SearchResult {
  std::optional<RewriteTrace> trace;  // nullopt: not found within bounds
  std::size_t states_explored = 0;
  bool budget_exhausted = false;
  bool found() const { return trace.has_value(); }
};

/// Bidirectional breadth-first search for a shortest chain of rule
/// applications from a to b. States are string diagrams up to isomorphism,
/// so the symmetric monoidal coherence laws (interchange, swap naturality
/// and involution, identities) cost no steps.
SearchResult find_path(const BordismTerm& a, const BordismTerm& b, const RuleSet& rules,
                       const SearchLimits& limits = {});

/// Applies one recorded step to a state; nullopt if it does not apply.
std::optional<BordismTerm> replay_step(const BordismTerm& state, const RuleSet& rules,
                                       const TraceStep& step);

nlohmann::json trace_to_json(const RewriteTrace& trace);

struct RuleSoundness {
  std::string rule;
  bool pass = false;
  std::string detail;
};

struct SoundnessReport {
  std::string ruleset;
  std::vector<RuleSoundness> results;
  bool all_pass() const;
  std::string to_text() const;
  nlohmann::json to_json() const;
};

/// Instantiates metavariables with fresh labels and compares the canonical
/// cospans (and types) of both sides of every rule.
SoundnessReport verify_ruleset_soundness(const RuleSet& rules);

}  // namespace cob3
