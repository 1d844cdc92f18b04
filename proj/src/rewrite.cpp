#include "cob3/rewrite.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "cob3/cospan.hpp"
#include "cob3/errors.hpp"

namespace cob3 {

const RewriteRule& RuleSet::rule(std::string_view n) const {
  for (const auto& r : rules)
    if (r.name == n) return r;
  throw std::out_of_range("rule set " + name + " has no rule " + std::string(n));
}

bool RuleSet::contains(std::string_view n) const {
  return std::any_of(rules.begin(), rules.end(),
                     [&](const RewriteRule& r) { return r.name == n; });
}

RewriteRule make_rule(std::string name, std::string_view lhs, std::string_view rhs) {
  ParseOptions opts{.allow_metavariables = true};
  RewriteRule r{std::move(name), parse(lhs, opts), parse(rhs, opts), true};
  if (typecheck(r.lhs) != typecheck(r.rhs))
    throw TypeError("rule " + r.name + " relates terms of different types");
  return r;
}

RuleSet builtin_rules(std::string_view set_name) {
  if (set_name != "CF" && set_name != "CF_LEGS" && set_name != "G2_FULL")
    throw UnknownRuleSet("unknown rule set '" + std::string(set_name) + "'");
  RuleSet s{std::string(set_name), {}};
  auto add = [&](const char* name, const char* lhs, const char* rhs) {
    s.rules.push_back(make_rule(name, lhs, rhs));
  };
  add("unit-left", "m . (unit * id)", "id");
  add("unit-right", "m . (id * unit)", "id");
  add("counit-left", "(tr * id) . comul", "id");
  add("counit-right", "(id * tr) . comul", "id");
  add("associativity", "m . (m * id)", "m . (id * m)");
  add("coassociativity", "(comul * id) . comul", "(id * comul) . comul");
  add("frobenius-left", "comul . m", "(m * id) . (id * comul)");
  add("frobenius-right", "comul . m", "(id * m) . (comul * id)");
  add("commutativity", "m", "m . swap");
  add("cocommutativity", "comul", "swap . comul");
  add("swap-involution", "swap . swap", "id * id");
  add("swap-natural-unit", "swap . (unit * id)", "id * unit");
  add("swap-natural-counit", "(id * tr) . swap", "tr * id");
  add("swap-natural-mul", "swap . (m * id)", "(id * m) . (swap * id) . (id * swap)");
  add("swap-natural-comul", "(comul * id) . swap", "(id * swap) . (swap * id) . (id * comul)");
  add("swap-natural-pe", "swap . (pe(?p) * id)", "(id * pe(?p)) . swap");
  if (set_name == "CF") return s;
  add("legs", "m . (pe(?p) * id)", "m . (id * pe(?p))");
  if (set_name == "CF_LEGS") return s;
  add("waist", "pe(?p) . m", "m . (pe(?p) * id)");
  add("colegs", "(pe(?p) * id) . comul", "(id * pe(?p)) . comul");
  add("cowaist", "comul . pe(?p)", "(pe(?p) * id) . comul");
  add("prime-commutativity", "pe(?p) . pe(?q)", "pe(?q) . pe(?p)");
  return s;
}

std::string_view to_string(Direction d) {
  return d == Direction::Forward ? "forward" : "backward";
}

namespace {

using Bindings = std::map<std::string, PrimeLabel>;

bool match_term(const BordismTerm& pat, const BordismTerm& t, Bindings& b) {
  if (pat.node() != t.node()) return false;
  if (!pat.is_gen())
    return match_term(pat.left(), t.left(), b) && match_term(pat.right(), t.right(), b);
  const Generator& pg = pat.generator();
  const Generator& tg = t.generator();
  if (pg.kind() != tg.kind()) return false;
  if (!pg.is_prime()) return true;
  if (!pg.label().is_metavariable()) return pg.label() == tg.label();
  auto [it, inserted] = b.emplace(pg.label().str(), tg.label());
  return inserted || it->second == tg.label();
}

BordismTerm instantiate(const BordismTerm& t, const Bindings& b) {
  if (t.is_gen()) {
    const Generator& g = t.generator();
    if (!g.is_prime() || !g.label().is_metavariable()) return t;
    auto it = b.find(g.label().str());
    if (it == b.end()) throw NoMatch("metavariable " + g.label().str() + " is unbound");
    return BordismTerm::gen(Generator(g.kind(), it->second));
  }
  BordismTerm l = instantiate(t.left(), b), r = instantiate(t.right(), b);
  return t.node() == BordismTerm::Node::Compose ? BordismTerm::compose(l, r)
                                                : BordismTerm::tensor(l, r);
}

BordismTerm replace_at(const BordismTerm& t, std::span<const std::size_t> path,
                       const BordismTerm& with) {
  if (path.empty()) return with;
  BordismTerm l = t.left(), r = t.right();
  if (path[0] == 0)
    l = replace_at(l, path.subspan(1), with);
  else
    r = replace_at(r, path.subspan(1), with);
  return t.node() == BordismTerm::Node::Compose ? BordismTerm::compose(l, r)
                                                : BordismTerm::tensor(l, r);
}

}  // namespace

const BordismTerm& subterm_at(const BordismTerm& t, std::span<const std::size_t> path) {
  const BordismTerm* cur = &t;
  for (std::size_t step : path) {
    if (cur->is_gen() || step > 1) throw NoMatch("position leaves the term");
    cur = step == 0 ? &cur->left() : &cur->right();
  }
  return *cur;
}

BordismTerm apply_rule(const BordismTerm& t, const RewriteRule& rule,
                       std::span<const std::size_t> position, Direction dir) {
  const BordismTerm& from = dir == Direction::Forward ? rule.lhs : rule.rhs;
  const BordismTerm& to = dir == Direction::Forward ? rule.rhs : rule.lhs;
  const BordismTerm& sub = subterm_at(t, position);
  Bindings b;
  if (!match_term(from, sub, b))
    throw NoMatch("rule " + rule.name + " does not match " + print(sub));
  return replace_at(t, position, instantiate(to, b));
}

// ---------------------------------------------------------------------------
// Diagram search

namespace {

struct CompiledSide {
  Diagram pattern;
  bool usable = false;  // valid as a match pattern
};

struct CompiledRule {
  std::string name;
  CompiledSide side[2];  // lhs, rhs
  bool dir_ok[2] = {false, false};  // forward, backward
};

std::set<std::string> metavariables(const BordismTerm& t) {
  std::set<std::string> out;
  for (const auto& p : prime_labels(t))
    if (p.is_metavariable()) out.insert(p.str());
  return out;
}

bool connected_nodes(const Diagram& d) {
  if (d.nodes.empty()) return true;
  auto ti = d.targets();
  std::vector<bool> seen(d.nodes.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t n = stack.back();
    stack.pop_back();
    auto visit = [&](std::size_t m) {
      if (!seen[m]) {
        seen[m] = true;
        ++count;
        stack.push_back(m);
      }
    };
    for (const auto& s : d.nodes[n].inputs)
      if (!s.is_boundary()) visit(s.node);
    for (const auto& t : ti.node[n])
      if (!t.is_boundary()) visit(t.node);
  }
  return count == d.nodes.size();
}

bool valid_pattern(const Diagram& d) {
  if (d.nodes.empty())
    return d.dom == 1 && d.cod == 1 && d.outputs[0].is_boundary();
  for (const auto& s : d.outputs)
    if (s.is_boundary()) return false;
  return connected_nodes(d);
}

std::vector<CompiledRule> compile(const RuleSet& rules) {
  std::vector<CompiledRule> out;
  for (const auto& r : rules.rules) {
    CompiledRule c;
    c.name = r.name;
    CanonicalDiagram l = canonicalize_diagram(diagram_of_term(r.lhs));
    CanonicalDiagram h = canonicalize_diagram(diagram_of_term(r.rhs));
    if (l.key == h.key) continue;  // coherence law: free on diagrams
    c.side[0] = {l.diagram, valid_pattern(l.diagram)};
    c.side[1] = {h.diagram, valid_pattern(h.diagram)};
    auto lv = metavariables(r.lhs), rv = metavariables(r.rhs);
    c.dir_ok[0] = c.side[0].usable && std::includes(lv.begin(), lv.end(), rv.begin(), rv.end());
    c.dir_ok[1] = c.side[1].usable && std::includes(rv.begin(), rv.end(), lv.begin(), lv.end());
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const CompiledRule& a, const CompiledRule& b) { return a.name < b.name; });
  return out;
}

struct Move {
  std::size_t rule;
  Direction dir;
  StepPosition position;
};

// Calls f(move, canonical successor) for every applicable move in
// deterministic order: rule name, direction, match position.
template <class F>
void for_each_move(const Diagram& d, const std::vector<CompiledRule>& rules,
                   std::size_t max_nodes, F&& f) {
  for (std::size_t ri = 0; ri < rules.size(); ++ri) {
    const CompiledRule& r = rules[ri];
    for (int dir = 0; dir < 2; ++dir) {
      if (!r.dir_ok[dir]) continue;
      const Diagram& from = r.side[dir].pattern;
      const Diagram& to = r.side[1 - dir].pattern;
      const std::size_t grown = d.nodes.size() + to.nodes.size();
      if (grown > from.nodes.size() && grown - from.nodes.size() > max_nodes) continue;
      std::vector<Match> matches = find_matches(from, d);
      for (std::size_t mi = 0; mi < matches.size(); ++mi) {
        std::optional<Diagram> next = replace_match(d, matches[mi], to);
        if (!next) continue;
        StepPosition pos;
        if (from.nodes.empty())
          pos.wire = mi;
        else
          pos.nodes = matches[mi].nodes;
        Move mv{ri, dir == 0 ? Direction::Forward : Direction::Backward, std::move(pos)};
        if (f(mv, canonicalize_diagram(*next))) return;
      }
    }
  }
}

struct Visit {
  Diagram diagram;
  std::string parent;  // empty for the root
  std::size_t depth = 0;
};

}  // namespace

SearchResult find_path(const BordismTerm& a, const BordismTerm& b, const RuleSet& rules,
                       const SearchLimits& limits) {
  SearchResult result;
  if (typecheck(a) != typecheck(b)) return result;
  const std::vector<CompiledRule> compiled = compile(rules);
  CanonicalDiagram ca = canonicalize_diagram(diagram_of_term(a));
  CanonicalDiagram cb = canonicalize_diagram(diagram_of_term(b));
  const std::size_t max_nodes =
      std::max(ca.diagram.nodes.size(), cb.diagram.nodes.size()) + limits.size_slack;

  std::unordered_map<std::string, Visit> seen[2];
  std::vector<std::string> frontier[2];
  std::size_t depth[2] = {0, 0};
  seen[0].emplace(ca.key, Visit{ca.diagram, "", 0});
  seen[1].emplace(cb.key, Visit{cb.diagram, "", 0});
  frontier[0] = {ca.key};
  frontier[1] = {cb.key};

  std::vector<std::string> chain;  // keys from a to b
  if (ca.key == cb.key) chain = {ca.key};

  while (chain.empty()) {
    if (frontier[0].empty() || frontier[1].empty()) break;
    if (depth[0] + depth[1] + 1 > limits.max_steps) break;
    const int side = frontier[1].size() < frontier[0].size() ? 1 : 0;
    const int other = 1 - side;
    std::vector<std::string> next_frontier;
    std::string meet_from, meet_to;
    bool exhausted = false;
    for (const std::string& key : frontier[side]) {
      const Diagram cur = seen[side].at(key).diagram;
      for_each_move(cur, compiled, max_nodes, [&](const Move&, CanonicalDiagram nd) {
        if (seen[side].count(nd.key)) return false;
        if (seen[other].count(nd.key)) {
          meet_from = key;
          meet_to = nd.key;
          return true;
        }
        seen[side].emplace(nd.key, Visit{std::move(nd.diagram), key, depth[side] + 1});
        next_frontier.push_back(nd.key);
        if (seen[0].size() + seen[1].size() > limits.node_budget) {
          exhausted = true;
          return true;
        }
        return false;
      });
      if (!meet_to.empty() || exhausted) break;
    }
    result.states_explored = seen[0].size() + seen[1].size();
    if (!meet_to.empty()) {
      // meet_from (on `side`) -> meet_to (already on `other`).
      std::vector<std::string> left, right;
      for (std::string k = meet_from; !k.empty(); k = seen[side].at(k).parent) left.push_back(k);
      for (std::string k = meet_to; !k.empty(); k = seen[other].at(k).parent) right.push_back(k);
      std::reverse(left.begin(), left.end());
      left.insert(left.end(), right.begin(), right.end());
      if (side == 1) std::reverse(left.begin(), left.end());
      chain = std::move(left);
      break;
    }
    if (exhausted) {
      result.budget_exhausted = true;
      return result;
    }
    frontier[side] = std::move(next_frontier);
    ++depth[side];
  }
  result.states_explored = seen[0].size() + seen[1].size();
  if (chain.empty()) return result;

  auto diagram_of_key = [&](const std::string& k) -> const Diagram& {
    auto it = seen[0].find(k);
    return it != seen[0].end() ? it->second.diagram : seen[1].at(k).diagram;
  };
  RewriteTrace trace{a, b, {}};
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    std::optional<TraceStep> step;
    // Unbounded size here: the successor is already known to be reachable.
    for_each_move(diagram_of_key(chain[i]), compiled, static_cast<std::size_t>(-1),
                  [&](const Move& mv, CanonicalDiagram nd) {
                    if (nd.key != chain[i + 1]) return false;
                    step = TraceStep{compiled[mv.rule].name, mv.position, mv.dir,
                                     diagram_to_term(nd.diagram)};
                    return true;
                  });
    if (!step) throw std::logic_error("find_path: lost a step while rebuilding the trace");
    trace.steps.push_back(std::move(*step));
  }
  result.trace = std::move(trace);
  return result;
}

std::optional<BordismTerm> replay_step(const BordismTerm& state, const RuleSet& rules,
                                       const TraceStep& step) {
  std::vector<CompiledRule> compiled = compile(rules);
  auto it = std::find_if(compiled.begin(), compiled.end(),
                         [&](const CompiledRule& r) { return r.name == step.rule; });
  if (it == compiled.end()) return std::nullopt;
  int dir = step.direction == Direction::Forward ? 0 : 1;
  if (!it->dir_ok[dir]) return std::nullopt;
  Diagram d = canonicalize_diagram(diagram_of_term(state)).diagram;
  const Diagram& from = it->side[dir].pattern;
  std::vector<Match> matches = find_matches(from, d);
  for (std::size_t mi = 0; mi < matches.size(); ++mi) {
    bool same = from.nodes.empty() ? step.position.wire == mi
                                   : step.position.nodes == matches[mi].nodes;
    if (!same) continue;
    auto next = replace_match(d, matches[mi], it->side[1 - dir].pattern);
    if (!next) return std::nullopt;
    return diagram_to_term(canonicalize_diagram(*next).diagram);
  }
  return std::nullopt;
}

nlohmann::json trace_to_json(const RewriteTrace& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    nlohmann::json pos = nlohmann::json::object();
    if (s.position.wire)
      pos["wire"] = *s.position.wire;
    else
      pos["nodes"] = s.position.nodes;
    steps.push_back({{"step", i + 1},
                     {"rule", s.rule},
                     {"position", pos},
                     {"direction", std::string(to_string(s.direction))},
                     {"term", print(s.result)}});
  }
  return {{"start", print(trace.start)}, {"end", print(trace.end)}, {"steps", steps}};
}

bool SoundnessReport::all_pass() const {
  return std::all_of(results.begin(), results.end(),
                     [](const RuleSoundness& r) { return r.pass; });
}

std::string SoundnessReport::to_text() const {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.pass ? "PASS " : "FAIL ") << r.rule;
    if (!r.detail.empty()) os << ": " << r.detail;
    os << "\n";
  }
  os << ruleset << (all_pass() ? ": all rules sound\n" : ": unsound rules found\n");
  return os.str();
}

nlohmann::json SoundnessReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results)
    arr.push_back({{"rule", r.rule}, {"pass", r.pass}, {"detail", r.detail}});
  return {{"ruleset", ruleset}, {"all_pass", all_pass()}, {"results", arr}};
}

SoundnessReport verify_ruleset_soundness(const RuleSet& rules) {
  SoundnessReport report{rules.name, {}};
  for (const auto& r : rules.rules) {
    RuleSoundness out{r.name, false, ""};
    try {
      Bindings fresh;
      std::size_t counter = 0;
      for (const auto& side : {r.lhs, r.rhs})
        for (const auto& v : metavariables(side))
          if (!fresh.count(v)) fresh.emplace(v, PrimeLabel("fresh" + std::to_string(counter++)));
      BordismTerm l = instantiate(r.lhs, fresh), h = instantiate(r.rhs, fresh);
      MorphismType tl = typecheck(l), th = typecheck(h);
      if (tl != th) {
        out.detail = "types differ";
      } else {
        LabelledCospan cl = cospan_of_term(l), ch = cospan_of_term(h);
        out.pass = cl == ch;
        if (!out.pass)
          out.detail = manifold_signature(cl) + " vs " + manifold_signature(ch);
      }
    } catch (const Error& e) {
      out.detail = e.what();
    }
    report.results.push_back(std::move(out));
  }
  return report;
}

}  // namespace cob3
