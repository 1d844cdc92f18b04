// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cob3/cospan.hpp"
#include "cob3/eval.hpp"
#include "cob3/fixtures.hpp"
#include "cob3/normal_form.hpp"
#include "cob3/rewrite.hpp"
#include "generators.hpp"

using namespace cob3;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// The fuzz corpus shared by criteria 3 and 8.
const std::vector<BordismTerm>& corpus() {
  static const std::vector<BordismTerm> terms = [] {
    testing::TermGenerator g(20240601, {.max_size = 12, .max_arity = 3, .labels = {"P", "Q"}});
    std::vector<BordismTerm> out;
    for (int i = 0; i < 1200; ++i) out.push_back(g.next());
    return out;
  }();
  return terms;
}

Outcome legs_counterexample() {
  Outcome o;
  PrimeLabel p("P");
  LAlgebra alg = LAlgebra::create(fixtures::hadamard(), {{p, {1, 1}}});
  std::map<PrimeLabel, LinearMap> rot{{p, LinearMap::square(2, {{0, 1}, {-1, 0}})}};
  Vector e1e2 = basis_vector(4, 1);
  Vector left = eval_with_endo_override(parse("m.(pe(P)*id)"), alg, rot).apply(e1e2);
  Vector right = eval_with_endo_override(parse("m.(id*pe(P))"), alg, rot).apply(e1e2);
  if (left != Vector{0, -1}) o.fail("left leg is not -e2");
  if (right != Vector{1, 0}) o.fail("right leg is not e1");
  o.detail = o.pass ? "-e2 vs e1" : o.detail;
  return o;
}

Outcome ruleset_soundness() {
  Outcome o;
  SoundnessReport r = verify_ruleset_soundness(builtin_rules("G2_FULL"));
  for (const auto& x : r.results)
    if (!x.pass) o.fail(x.rule + ": " + x.detail);
  if (o.pass) o.detail = std::to_string(r.results.size()) + " rules";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(99);
  std::vector<PrimeLabel> labels{PrimeLabel("P"), PrimeLabel("Q")};
  std::vector<LAlgebra> algebras;
  algebras.push_back(LAlgebra::create(fixtures::hadamard(),
                                      {{labels[0], {2, 3}}, {labels[1], {-1, Rational(1, 2)}}}));
  for (std::size_t dim : {1, 2, 3, 3, 2})
    algebras.push_back(fixtures::random_diagonal_l_algebra(rng, dim, labels));
  for (const BordismTerm& t : corpus()) {
    LabelledCospan c = cospan_of_term(t);
    for (const auto& alg : algebras) {
      if (!(eval_term(t, alg) == eval_semantic(c, alg))) o.fail("differs on " + print(t));
    }
  }
  if (o.pass)
    o.detail = std::to_string(corpus().size()) + " terms x " + std::to_string(algebras.size()) +
               " algebras";
  return o;
}

Outcome genus_law() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> small(0, 2);
  std::size_t checks = 0;
  for (std::size_t b = 1; b <= 5; ++b) {
    for (int rep = 0; rep < 20; ++rep) {
      std::size_t g1 = small(rng), g2 = small(rng);
      std::vector<PrimeLabel> p1, p2;
      for (std::size_t k = small(rng); k > 0; --k) p1.emplace_back(k % 2 ? "P" : "Q");
      for (std::size_t k = small(rng); k > 0; --k) p2.emplace_back("R");
      // Connected pieces 1 -> b and b -> 1, realized as terms, glued through a
      // random permutation of the b spheres.
      LabelledCospan split{1, b, {0}, std::vector<std::size_t>(b, 0), {{g1, p1}}};
      LabelledCospan merge{b, 1, std::vector<std::size_t>(b, 0), {0}, {{g2, p2}}};
      split.labels[0].normalize();
      merge.labels[0].normalize();
      auto perm = testing::random_permutation(rng, b);
      BordismTerm t = BordismTerm::compose(
          canonical_term(merge, Presentation::G2),
          BordismTerm::compose(permutation_term(perm), canonical_term(split, Presentation::G2)));
      LabelledCospan c = cospan_of_term(t);
      ++checks;
      if (c.apex_size() != 1) {
        o.fail("composite is disconnected");
        continue;
      }
      if (c.labels[0].genus != g1 + g2 + b - 1)
        o.fail("b=" + std::to_string(b) + " gave genus " + std::to_string(c.labels[0].genus));
      if (c.labels[0].primes.size() != p1.size() + p2.size()) o.fail("primes lost");
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " gluings, b = 1..5";
  return o;
}

Outcome redundancy_witnesses() {
  Outcome o;
  SearchLimits limits;
  limits.max_steps = 24;
  RuleSet legs = builtin_rules("CF_LEGS");
  const char* pairs[][3] = {
      {"waist", "pe(P) . m", "m . (pe(P) * id)"},
      {"prime-commutativity", "pe(P) . pe(Q)", "pe(Q) . pe(P)"},
      {"cowaist", "comul . pe(P)", "(pe(P) * id) . comul"},
      {"colegs", "(pe(P) * id) . comul", "(id * pe(P)) . comul"},
  };
  std::string lengths;
  for (const auto& w : pairs) {
    SearchResult r = find_path(parse(w[1]), parse(w[2]), legs, limits);
    if (!r.found()) {
      o.fail(std::string(w[0]) + " not found under CF_LEGS");
      continue;
    }
    // Every intermediate state must be the same bordism.
    LabelledCospan c = cospan_of_term(parse(w[1]));
    for (const auto& s : r.trace->steps)
      if (cospan_of_term(s.result) != c) o.fail(std::string(w[0]) + " trace leaves its class");
    lengths += (lengths.empty() ? "" : ", ") + std::string(w[0]) + " " +
               std::to_string(r.trace->steps.size());
  }
  SearchResult control = find_path(parse("m . (pe(P) * id)"), parse("m . (id * pe(P))"),
                                   builtin_rules("CF"), limits);
  if (control.found()) o.fail("legs derivable from CF within 24 steps");
  if (o.pass)
    o.detail = "steps: " + lengths + "; legs under CF: none (" +
               std::to_string(control.states_explored) + " states)";
  return o;
}

Outcome pl_bijection() {
  Outcome o;
  std::mt19937_64 rng(606);
  std::vector<PrimeLabel> labels{PrimeLabel("P"), PrimeLabel("Q")};
  for (int rep = 0; rep < 20; ++rep) {
    LAlgebra alg = fixtures::random_l_algebra(rng, 1 + rep % 3, labels);
    for (const auto& p : labels) {
      LinearMap e = prime_endo_matrix(alg, p);
      if (!verify_legs(alg.algebra(), e)) o.fail("legs fails for a multiplication operator");
      if (e.apply(alg.algebra().unit) != alg.prime_unit(p)) o.fail("e_p(1) != 1_p");
      BordismTerm t = BordismTerm::compose(prime_endo(p.str()), gen(GenKind::Unit));
      if (eval_term(t, alg).apply({1}) != alg.prime_unit(p)) o.fail("pe(p) . unit != 1_p");
      if (!(eval_term(prime_unit(p.str()), alg) == eval_term(t, alg))) o.fail("pu(p) != pe(p) . unit");
    }
  }
  if (o.pass) o.detail = "20 algebras";
  return o;
}

Outcome character_formula() {
  Outcome o;
  std::vector<PrimeLabel> labels{PrimeLabel("P"), PrimeLabel("Q"), PrimeLabel("R")};
  LAlgebra alg = LAlgebra::create(fixtures::hadamard(), {{labels[0], {2, 3}},
                                                         {labels[1], {-1, Rational(1, 2)}},
                                                         {labels[2], {0, 5}}});
  auto dec = fixtures::standard_idempotents(2);
  std::size_t count = 0;
  std::function<void(std::size_t, std::vector<PrimeLabel>&)> walk =
      [&](std::size_t from, std::vector<PrimeLabel>& primes) {
        for (std::size_t g = 0; g <= 2; ++g) {
          ManifoldSpec m{primes, g};
          ++count;
          if (closed_invariant(m, alg) != closed_invariant_by_characters(m, alg, dec))
            o.fail("disagreement");
        }
        if (primes.size() == 3) return;
        for (std::size_t i = from; i < labels.size(); ++i) {
          primes.push_back(labels[i]);
          walk(i, primes);
          primes.pop_back();
        }
      };
  std::vector<PrimeLabel> start;
  walk(0, start);
  Rational z = closed_invariant(parse_manifold("P#P"), alg);
  if (z != 13) o.fail("Z(P#P) = " + to_string(z));
  if (o.pass) o.detail = std::to_string(count) + " specs, Z(P#P) = " + to_string(z);
  return o;
}

Outcome normal_form() {
  Outcome o;
  for (const BordismTerm& t : corpus()) {
    BordismTerm nf = normalize_G1(t);
    if (!(normalize_G1(nf) == nf)) o.fail("not idempotent on " + print(t));
    if (!(cospan_of_term(nf) == cospan_of_term(t))) o.fail("cospan changed on " + print(t));
  }
  if (o.pass) o.detail = std::to_string(corpus().size()) + " terms";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  Outcome (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "legs counterexample", 1, legs_counterexample},
      {2, "ruleset soundness", 1, ruleset_soundness},
      {3, "oracle equivalence", 60, oracle_equivalence},
      {4, "genus law", 1, genus_law},
      {5, "redundancy witnesses", 120, redundancy_witnesses},
      {6, "P/L bijection", 5, pl_bijection},
      {7, "character formula", 5, character_formula},
      {8, "normal form idempotence", 30, normal_form},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) o.fail("took longer than the time limit");
    if (!o.pass) ++failures;
    std::printf("%s %d %-24s %7.3fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures,
              std::size(criteria));
  return failures == 0 ? 0 : 1;
}
