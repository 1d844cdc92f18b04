#include <doctest.h>

#include "cob3/cospan.hpp"
#include "cob3/normal_form.hpp"
#include "generators.hpp"

using namespace cob3;

namespace {

bool uses(const BordismTerm& t, GenKind k) {
  if (t.is_gen()) return t.generator().kind() == k;
  return uses(t.left(), k) || uses(t.right(), k);
}

}  // namespace

TEST_CASE("small normal forms") {
  CHECK(print(normalize_G1(parse("id"))) == "id");
  CHECK(print(normalize_G1(parse("m . (unit * id)"))) == "id");
  CHECK(print(normalize_G1(parse("pe(P) . unit"))) == "pu(P)");
  CHECK(print(normalize_G2(parse("pu(P)"))) == "(pe(P) . unit)");
  CHECK(print(normalize_G1(parse("empty"))) == "empty");
  CHECK(print(normalize_G1(parse("swap . swap"))) == "(id * id)");
  CHECK(normalize_G1(parse("m . swap")) == normalize_G1(parse("m")));
}

TEST_CASE("G1 forms avoid prime endomorphisms, G2 forms avoid prime units") {
  testing::TermGenerator g(41, {});
  for (int i = 0; i < 300; ++i) {
    BordismTerm t = g.next();
    CAPTURE(print(t));
    CHECK_FALSE(uses(normalize_G1(t), GenKind::PrimeEndo));
    CHECK_FALSE(uses(normalize_G2(t), GenKind::PrimeUnit));
  }
}

TEST_CASE("normal forms are cospan-preserving, idempotent and complete") {
  testing::TermGenerator g(42, {});
  for (int i = 0; i < 500; ++i) {
    BordismTerm t = g.next();
    CAPTURE(print(t));
    LabelledCospan c = cospan_of_term(t);
    for (Presentation p : {Presentation::G1, Presentation::G2}) {
      BordismTerm nf = canonical_term(c, p);
      CHECK(typecheck(nf) == typecheck(t));
      CHECK(cospan_of_term(nf) == c);
      CHECK(canonical_term(cospan_of_term(nf), p) == nf);
    }
  }
}

TEST_CASE("normal form distinguishes exactly the cospans") {
  testing::TermGenerator g(43, {.max_size = 7, .max_arity = 2, .labels = {"P"}});
  std::vector<BordismTerm> terms;
  for (int i = 0; i < 150; ++i) terms.push_back(g.next());
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (typecheck(terms[i]) != typecheck(terms[j])) continue;
      CHECK((normalize_G1(terms[i]) == normalize_G1(terms[j])) ==
            terms_equal(terms[i], terms[j]));
    }
}

TEST_CASE("presentation names") {
  CHECK(presentation_from_string("G2") == Presentation::G2);
  CHECK_THROWS_AS(presentation_from_string("g1"), std::invalid_argument);
}
