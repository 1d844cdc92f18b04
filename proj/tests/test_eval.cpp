#include <doctest.h>

#include <random>

#include "cob3/cospan.hpp"
#include "cob3/errors.hpp"
#include "cob3/eval.hpp"
#include "cob3/fixtures.hpp"
#include "cob3/rewrite.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using namespace cob3;

namespace {

LAlgebra hadamard_p(Vector one_p = {2, 3}) {
  return LAlgebra::create(fixtures::hadamard(), {{PrimeLabel("P"), std::move(one_p)}});
}

// ?p -> P, any other metavariable -> Q.
BordismTerm instantiate(const BordismTerm& t) {
  if (t.is_gen()) {
    const Generator& g = t.generator();
    if (g.is_prime() && g.label().is_metavariable())
      return BordismTerm::gen(Generator(g.kind(), PrimeLabel(g.label().str() == "?p" ? "P" : "Q")));
    return t;
  }
  BordismTerm l = instantiate(t.left()), r = instantiate(t.right());
  return t.node() == BordismTerm::Node::Compose ? BordismTerm::compose(l, r)
                                                : BordismTerm::tensor(l, r);
}

}  // namespace

TEST_CASE("worked values on the Hadamard algebra") {
  LAlgebra alg = hadamard_p();
  CHECK(eval_term(parse("tr . unit"), alg).scalar() == 2);
  CHECK(eval_term(parse("m . (unit * id)"), alg) == LinearMap::identity(2, 1));
  CHECK(eval_term(parse("m . comul"), alg) == LinearMap::identity(2, 1));
  CHECK(eval_term(parse("pe(P) . unit"), alg).apply({1}) == Vector{2, 3});
  CHECK(eval_term(parse("pu(P)"), alg).apply({1}) == Vector{2, 3});
  CHECK(eval_term(parse("empty"), alg).scalar() == 1);
  CHECK(eval_term(parse("tr . pe(P) . pe(P) . unit"), alg).scalar() == 13);
}

TEST_CASE("generator matrices") {
  LAlgebra alg = hadamard_p();
  LinearMap sw = eval_generator(GenKind::Swap, alg);
  // swap(e_i (x) e_j) = e_j (x) e_i
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(sw.at(j * 2 + i, i * 2 + j) == 1);
  LinearMap m = eval_generator(GenKind::Mul, alg);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 4);
  CHECK(m.at(1, 3) == 1);
  CHECK(m.at(0, 1) == 0);
  CHECK(eval_generator(GenKind::Counit, alg).cols() == 2);
  CHECK_THROWS_AS(eval_generator(Generator(GenKind::PrimeEndo, PrimeLabel("Q")), alg),
                  UnknownPrime);
}

TEST_CASE("manifold specs") {
  ManifoldSpec s = parse_manifold("P#Q#(S2xS1)^2");
  CHECK(s.primes == std::vector<PrimeLabel>{PrimeLabel("P"), PrimeLabel("Q")});
  CHECK(s.genus == 2);
  CHECK(parse_manifold("S3").primes.empty());
  CHECK(parse_manifold("S3").genus == 0);
  CHECK(parse_manifold("P#P#g0").primes.size() == 2);
  CHECK(parse_manifold("S2xS1#S2xS1").genus == 2);
  CHECK(parse_manifold("g3#P").genus == 3);
  CHECK_THROWS_AS(parse_manifold(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_manifold("P##Q"), std::invalid_argument);
  CHECK_THROWS_AS(parse_manifold("(S2xS1)^x"), std::invalid_argument);
}

TEST_CASE("closed invariants") {
  LAlgebra alg = hadamard_p();
  CHECK(closed_invariant(parse_manifold("S3"), alg) == 2);
  CHECK(closed_invariant(parse_manifold("P#P"), alg) == 13);
  CHECK(closed_invariant(parse_manifold("P"), alg) == 5);
  CHECK(closed_invariant(parse_manifold("(S2xS1)^1"), alg) == 2);
  CHECK_THROWS_AS(closed_invariant(parse_manifold("Q"), alg), UnknownPrime);
  CHECK(handle_operator(alg) == LinearMap::identity(2, 1));
}

TEST_CASE("closed invariants of diagonal algebras match the closed formula") {
  std::mt19937_64 rng(33);
  for (int rep = 0; rep < 10; ++rep) {
    std::size_t dim = 1 + rep % 3;
    LAlgebra alg = fixtures::random_diagonal_l_algebra(rng, dim, {PrimeLabel("A"), PrimeLabel("B")});
    std::map<std::string, std::vector<Rational>> units;
    for (const auto& [p, v] : alg.prime_units()) units[p.str()] = v;
    for (const char* m : {"S3", "A", "A#B#A", "B#(S2xS1)^2", "g1#A#B"}) {
      ManifoldSpec spec = parse_manifold(m);
      std::vector<std::string> primes;
      for (const auto& p : spec.primes) primes.push_back(p.str());
      CAPTURE(m);
      CHECK(closed_invariant(spec, alg) ==
            oracle::diagonal_invariant(alg.algebra().trace, units, primes, spec.genus));
    }
  }
}

TEST_CASE("character formula") {
  LAlgebra alg = hadamard_p();
  auto dec = fixtures::standard_idempotents(2);
  for (const char* m : {"S3", "P", "P#P", "P#P#P#(S2xS1)^2"})
    CHECK(closed_invariant_by_characters(parse_manifold(m), alg, dec) ==
          closed_invariant(parse_manifold(m), alg));
  LAlgebra dual = LAlgebra::create(fixtures::dual_numbers(), {{PrimeLabel("P"), {1, 1}}});
  CHECK_THROWS_AS(closed_invariant_by_characters(parse_manifold("P"), dual,
                                                 {{{1, 0}}}),
                  NotScalarOnBlock);
}

TEST_CASE("override of prime endomorphisms") {
  LAlgebra alg = hadamard_p({1, 1});
  std::map<PrimeLabel, LinearMap> rot{{PrimeLabel("P"), LinearMap::square(2, {{0, 1}, {-1, 0}})}};
  Vector e1e2 = basis_vector(4, 1);
  CHECK(eval_with_endo_override(parse("m . (pe(P) * id)"), alg, rot).apply(e1e2) ==
        Vector{0, -1});
  CHECK(eval_with_endo_override(parse("m . (id * pe(P))"), alg, rot).apply(e1e2) ==
        Vector{1, 0});
  std::map<PrimeLabel, LinearMap> bad{{PrimeLabel("P"), LinearMap::identity(3, 1)}};
  CHECK_THROWS_AS(eval_with_endo_override(parse("pe(P)"), alg, bad), ShapeError);
}

TEST_CASE("structural and semantic evaluation agree") {
  std::mt19937_64 rng(7);
  testing::TermGenerator g(71, {});
  std::vector<PrimeLabel> labels{PrimeLabel("P"), PrimeLabel("Q")};
  std::vector<LAlgebra> algebras;
  algebras.push_back(LAlgebra::create(fixtures::hadamard(),
                                      {{PrimeLabel("P"), {2, 3}}, {PrimeLabel("Q"), {-1, 0}}}));
  algebras.push_back(fixtures::random_l_algebra(rng, 2, labels));
  algebras.push_back(fixtures::random_l_algebra(rng, 3, labels));
  algebras.push_back(LAlgebra::create(derive_comul(fixtures::dual_numbers()),
                                      {{PrimeLabel("P"), {2, 1}}, {PrimeLabel("Q"), {0, 3}}}));
  for (int i = 0; i < 200; ++i) {
    BordismTerm t = g.next();
    LabelledCospan c = cospan_of_term(t);
    CAPTURE(print(t));
    for (const auto& alg : algebras) CHECK(eval_term(t, alg) == eval_semantic(c, alg));
  }
}

TEST_CASE("every relation holds in every L-algebra") {
  std::mt19937_64 rng(12);
  PrimeLabel p("P");
  RuleSet rules = builtin_rules("G2_FULL");
  for (int rep = 0; rep < 5; ++rep) {
    LAlgebra alg = fixtures::random_l_algebra(rng, 1 + rep % 3, {p, PrimeLabel("Q")});
    for (const auto& r : rules.rules) {
      CAPTURE(r.name);
      CHECK(eval_term(instantiate(r.lhs), alg) == eval_term(instantiate(r.rhs), alg));
    }
  }
}
