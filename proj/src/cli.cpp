#include "cob3/cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cob3/cospan.hpp"
#include "cob3/errors.hpp"
#include "cob3/eval.hpp"
#include "cob3/fixtures.hpp"
#include "cob3/frobenius.hpp"
#include "cob3/normal_form.hpp"
#include "cob3/rewrite.hpp"
#include "cob3/term.hpp"

namespace cob3 {
namespace {

using nlohmann::json;

// Errors in user input (exit 2) that are not already typed.
struct InputError : Error {
  using Error::Error;
};

// A demo did not produce its expected outcome (exit 3).
struct DemoFailure : Error {
  using Error::Error;
};

struct Options {
  std::string format = "text";
  bool inline_terms = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BordismTerm load_term(const Options& o, const std::string& arg) {
  BordismTerm t = parse(o.inline_terms ? arg : read_file(arg));
  typecheck(t);
  return t;
}

json load_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

LAlgebra load_algebra(const std::string& path) {
  ParsedAlgebra parsed;
  try {
    parsed = algebra_from_json(load_json(path));
  } catch (const ShapeError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return LAlgebra::create(std::move(parsed.spec), std::move(parsed.primes));
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

void print_matrix(std::ostream& out, const LinearMap& m) {
  if (m.rows() == 1 && m.cols() == 1) {
    out << to_string(m.scalar()) << "\n";
    return;
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << to_string(m.at(r, c));
    out << "\n";
  }
}

// Vector in the basis e1..en, e.g. "-e2" or "2*e1 + 3*e2".
std::string basis_expansion(const Vector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    Rational c = v[i];
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    if (c < 0) c = -c;
    if (c != 1) s += to_string(c) + "*";
    s += "e" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

int cmd_eq(const Options& o, std::ostream& out, const std::string& a, const std::string& b) {
  LabelledCospan ca = cospan_of_term(load_term(o, a));
  LabelledCospan cb = cospan_of_term(load_term(o, b));
  bool equal = ca == cb;
  if (o.format == "json") {
    print_json(out, {{"equal", equal},
                     {"a", {{"signature", manifold_signature(ca)}, {"cospan", cospan_to_json(ca)}}},
                     {"b", {{"signature", manifold_signature(cb)}, {"cospan", cospan_to_json(cb)}}}});
  } else {
    out << "A: " << manifold_signature(ca) << "\n";
    out << "B: " << manifold_signature(cb) << "\n";
    out << (equal ? "EQUAL" : "NOT-EQUAL") << "\n";
  }
  return equal ? kExitOk : kExitNotEqual;
}

int cmd_normalize(const Options& o, std::ostream& out, const std::string& arg,
                  const std::string& presentation) {
  Presentation p;
  try {
    p = presentation_from_string(presentation);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  BordismTerm nf = canonical_term(cospan_of_term(load_term(o, arg)), p);
  if (o.format == "json")
    print_json(out, {{"presentation", presentation}, {"term", print(nf)}});
  else
    out << print(nf) << "\n";
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out, const std::string& arg,
             const std::string& algebra) {
  BordismTerm t = load_term(o, arg);
  LAlgebra alg = load_algebra(algebra);
  LinearMap m = eval_term(t, alg);
  if (o.format == "json")
    print_json(out, linear_map_to_json(m));
  else
    print_matrix(out, m);
  return kExitOk;
}

int cmd_invariant(const Options& o, std::ostream& out, const std::string& algebra,
                  const std::string& manifold, const std::string& idempotents) {
  ManifoldSpec spec;
  try {
    spec = parse_manifold(manifold);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  LAlgebra alg = load_algebra(algebra);
  Rational z = closed_invariant(spec, alg);
  std::optional<Rational> by_chars;
  if (!idempotents.empty()) {
    IdempotentDecomposition dec;
    try {
      dec = decomposition_from_json(load_json(idempotents));
    } catch (const std::exception& e) {
      throw InputError(idempotents + ": " + e.what());
    }
    by_chars = closed_invariant_by_characters(spec, alg, dec);
  }
  bool agree = !by_chars || *by_chars == z;
  if (o.format == "json") {
    json j = {{"manifold", manifold}, {"value", to_string(z)}};
    if (by_chars) {
      j["character_formula"] = to_string(*by_chars);
      j["agree"] = agree;
    }
    print_json(out, j);
  } else {
    out << "Z(" << manifold << ") = " << to_string(z) << "\n";
    if (by_chars) {
      out << "character formula = " << to_string(*by_chars) << "\n";
      out << (agree ? "agree" : "DISAGREE") << "\n";
    }
  }
  return agree ? kExitOk : kExitSemantic;
}

int cmd_verify_algebra(const Options& o, std::ostream& out, const std::string& path) {
  ParsedAlgebra parsed;
  try {
    parsed = algebra_from_json(load_json(path));
  } catch (const ShapeError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  bool derived = !parsed.spec.comul;
  FrobeniusAlgebraSpec spec = derived ? derive_comul(parsed.spec) : parsed.spec;
  AxiomReport report = verify_cf(spec);
  if (o.format == "json") {
    json j = report.to_json();
    j["comul_derived"] = derived;
    print_json(out, j);
  } else {
    if (derived) out << "comul derived from the trace pairing\n";
    out << report.to_text();
  }
  return report.all_pass() ? kExitOk : kExitSemantic;
}

int cmd_rewrite_path(const Options& o, std::ostream& out, const std::string& a,
                     const std::string& b, const std::string& rules,
                     const SearchLimits& limits) {
  BordismTerm ta = load_term(o, a), tb = load_term(o, b);
  RuleSet rs;
  try {
    rs = builtin_rules(rules);
  } catch (const UnknownRuleSet& e) {
    throw InputError(e.what());
  }
  SearchResult r = find_path(ta, tb, rs, limits);
  if (o.format == "json") {
    json j = {{"found", r.found()},
              {"rules", rules},
              {"max_steps", limits.max_steps},
              {"states_explored", r.states_explored},
              {"budget_exhausted", r.budget_exhausted}};
    if (r.trace) j["trace"] = trace_to_json(*r.trace);
    print_json(out, j);
  } else if (r.trace) {
    out << "start: " << print(r.trace->start) << "\n";
    for (std::size_t i = 0; i < r.trace->steps.size(); ++i) {
      const TraceStep& s = r.trace->steps[i];
      out << i + 1 << ". " << s.rule << " (" << to_string(s.direction) << ") -> "
          << print(s.result) << "\n";
    }
    out << "found path of " << r.trace->steps.size() << " steps under " << rules << "\n";
  } else {
    out << "no path within " << limits.max_steps << " steps under " << rules
        << (r.budget_exhausted ? " (node budget exhausted)" : "") << "\n";
  }
  return r.found() ? kExitOk : kExitNotEqual;
}

int demo_legs(const Options& o, std::ostream& out) {
  PrimeLabel p("P");
  LAlgebra alg = LAlgebra::create(fixtures::hadamard(), {{p, Vector{1, 1}}});
  LinearMap rot = LinearMap::square(2, {{0, 1}, {-1, 0}});
  std::map<PrimeLabel, LinearMap> overrides{{p, rot}};
  Vector e1e2 = basis_vector(4, 1);  // e1 (x) e2
  const std::string left_src = "m . (pe(P) * id)", right_src = "m . (id * pe(P))";
  Vector left = eval_with_endo_override(parse(left_src), alg, overrides).apply(e1e2);
  Vector right = eval_with_endo_override(parse(right_src), alg, overrides).apply(e1e2);

  // The override must still satisfy every rule of CF.
  RuleSet cf = builtin_rules("CF");
  std::vector<std::string> broken;
  for (const auto& r : cf.rules) {
    std::function<BordismTerm(const BordismTerm&)> fill = [&](const BordismTerm& t) {
      if (t.is_gen()) {
        const Generator& g = t.generator();
        if (g.is_prime() && g.label().is_metavariable())
          return BordismTerm::gen(Generator(g.kind(), p));
        return t;
      }
      BordismTerm l = fill(t.left()), h = fill(t.right());
      return t.node() == BordismTerm::Node::Compose ? BordismTerm::compose(l, h)
                                                    : BordismTerm::tensor(l, h);
    };
    if (!(eval_with_endo_override(fill(r.lhs), alg, overrides) ==
          eval_with_endo_override(fill(r.rhs), alg, overrides)))
      broken.push_back(r.name);
  }
  bool ok = left == Vector{0, -1} && right == Vector{1, 0} && broken.empty();
  if (o.format == "json") {
    print_json(out, {{"endomorphism", linear_map_to_json(rot)},
                     {"input", "e1*e2"},
                     {"left", {{"term", left_src}, {"value", basis_expansion(left)}}},
                     {"right", {{"term", right_src}, {"value", basis_expansion(right)}}},
                     {"cf_rules_violated", broken},
                     {"separated", left != right},
                     {"pass", ok}});
  } else {
    out << "pe(P) := [[0, 1], [-1, 0]] on the Hadamard algebra Q^2\n";
    out << left_src << " on e1*e2 = " << basis_expansion(left) << "\n";
    out << right_src << " on e1*e2 = " << basis_expansion(right) << "\n";
    out << "CF rules violated: " << (broken.empty() ? "none" : "") ;
    for (std::size_t i = 0; i < broken.size(); ++i) out << (i ? ", " : "") << broken[i];
    out << "\n" << (ok ? "legs is independent of CF" : "FAILED") << "\n";
  }
  if (!ok) throw DemoFailure("legs counterexample did not separate as expected");
  return kExitOk;
}

struct Witness {
  std::string name;
  std::string lhs;
  std::string rhs;
};

const std::vector<Witness>& redundancy_witnesses() {
  static const std::vector<Witness> w = {
      {"waist", "pe(P) . m", "m . (pe(P) * id)"},
      {"prime-commutativity", "pe(P) . pe(Q)", "pe(Q) . pe(P)"},
      {"cowaist", "comul . pe(P)", "(pe(P) * id) . comul"},
      {"colegs", "(pe(P) * id) . comul", "(id * pe(P)) . comul"},
  };
  return w;
}

int demo_redundancy(const Options& o, std::ostream& out) {
  SearchLimits limits;
  limits.max_steps = 24;
  RuleSet legs = builtin_rules("CF_LEGS");
  RuleSet cf = builtin_rules("CF");
  bool ok = true;
  json arr = json::array();
  for (const Witness& w : redundancy_witnesses()) {
    SearchResult r = find_path(parse(w.lhs), parse(w.rhs), legs, limits);
    ok = ok && r.found();
    if (o.format == "json") {
      json j = {{"relation", w.name}, {"rules", legs.name}, {"found", r.found()}};
      if (r.trace) j["trace"] = trace_to_json(*r.trace);
      arr.push_back(j);
      continue;
    }
    out << w.name << ": " << w.lhs << " = " << w.rhs << "\n";
    if (!r.trace) {
      out << "  no path within " << limits.max_steps << " steps under " << legs.name << "\n";
      continue;
    }
    for (std::size_t i = 0; i < r.trace->steps.size(); ++i) {
      const TraceStep& s = r.trace->steps[i];
      out << "  " << i + 1 << ". " << s.rule << " (" << to_string(s.direction) << ") -> "
          << print(s.result) << "\n";
    }
    out << "  found in " << r.trace->steps.size() << " steps under " << legs.name << "\n";
  }
  const std::string legs_l = "m . (pe(P) * id)", legs_r = "m . (id * pe(P))";
  SearchResult control = find_path(parse(legs_l), parse(legs_r), cf, limits);
  ok = ok && !control.found();
  if (o.format == "json") {
    print_json(out, {{"witnesses", arr},
                     {"control", {{"relation", "legs"}, {"rules", cf.name}, {"found", control.found()}}},
                     {"pass", ok}});
  } else {
    out << "legs: " << legs_l << " = " << legs_r << "\n";
    out << (control.found() ? "  UNEXPECTED path" : "  no path") << " within " << limits.max_steps
        << " steps under " << cf.name << "\n";
    out << (ok ? "all redundancy witnesses found" : "FAILED") << "\n";
  }
  if (!ok) throw DemoFailure("redundancy demo did not produce the expected outcome");
  return kExitOk;
}

int demo_soundness(const Options& o, std::ostream& out) {
  SoundnessReport r = verify_ruleset_soundness(builtin_rules("G2_FULL"));
  if (o.format == "json")
    print_json(out, r.to_json());
  else
    out << r.to_text();
  if (!r.all_pass()) throw DemoFailure("unsound rules in G2_FULL");
  return kExitOk;
}

int cmd_demo(const Options& o, std::ostream& out, const std::string& name) {
  if (name == "legs-counterexample") return demo_legs(o, out);
  if (name == "redundancy-paths") return demo_redundancy(o, out);
  if (name == "ruleset-soundness") return demo_soundness(o, out);
  throw InputError("unknown demo '" + name + "'");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bordism terms of 3-manifolds with prime decompositions", "cob3"};
  app.require_subcommand(1, 1);
  Options o;
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_flag("-e,--inline", o.inline_terms, "Term arguments are term text, not file paths");

  std::string a, b, presentation = "G1", algebra, manifold, idempotents, rules = "CF_LEGS",
                    demo;
  SearchLimits limits;

  auto* eq = app.add_subcommand("eq", "Compare two terms up to the bordism relations");
  eq->add_option("A", a)->required();
  eq->add_option("B", b)->required();

  auto* normalize = app.add_subcommand("normalize", "Print the canonical form of a term");
  normalize->add_option("T", a)->required();
  normalize->add_option("--presentation", presentation)->capture_default_str();

  auto* eval = app.add_subcommand("eval", "Evaluate a term in an algebra");
  eval->add_option("T", a)->required();
  eval->add_option("--algebra", algebra)->required();

  auto* invariant = app.add_subcommand("invariant", "Invariant of a closed manifold");
  invariant->add_option("--algebra", algebra)->required();
  invariant->add_option("--manifold", manifold)->required();
  invariant->add_option("--idempotents", idempotents,
                        "Idempotent decomposition for the character formula");

  auto* verify = app.add_subcommand("verify-algebra", "Check the Frobenius axioms");
  verify->add_option("F", algebra)->required();

  auto* path = app.add_subcommand("rewrite-path", "Search for a chain of rule applications");
  path->add_option("A", a)->required();
  path->add_option("B", b)->required();
  path->add_option("--rules", rules)->capture_default_str();
  path->add_option("--max-steps", limits.max_steps)->capture_default_str();
  path->add_option("--node-budget", limits.node_budget)->capture_default_str();
  path->add_option("--size-slack", limits.size_slack)->capture_default_str();

  auto* demo_cmd = app.add_subcommand("demo", "Run a built-in demonstration");
  demo_cmd->add_option("NAME", demo)
      ->required()
      ->check(CLI::IsMember({"legs-counterexample", "redundancy-paths", "ruleset-soundness"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*eq) return cmd_eq(o, out, a, b);
    if (*normalize) return cmd_normalize(o, out, a, presentation);
    if (*eval) return cmd_eval(o, out, a, algebra);
    if (*invariant) return cmd_invariant(o, out, algebra, manifold, idempotents);
    if (*verify) return cmd_verify_algebra(o, out, algebra);
    if (*path) return cmd_rewrite_path(o, out, a, b, rules, limits);
    if (*demo_cmd) return cmd_demo(o, out, demo);
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const TypeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const AlgebraVerificationError& e) {
    err << "error: " << e.what();
    return kExitSemantic;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitSemantic;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace cob3
