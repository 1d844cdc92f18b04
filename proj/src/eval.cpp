#include "cob3/eval.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cob3/normal_form.hpp"

namespace cob3 {

ManifoldSpec parse_manifold(std::string_view s) {
  ManifoldSpec m;
  auto trim = [](std::string_view t) {
    while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
    while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
    return t;
  };
  auto all_digits = [](std::string_view t) {
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::size_t start = 0;
  for (;;) {
    std::size_t hash = s.find('#', start);
    std::string_view tok = trim(s.substr(start, hash == std::string_view::npos ? s.npos : hash - start));
    if (tok.empty()) throw std::invalid_argument("empty factor in manifold '" + std::string(s) + "'");
    constexpr std::string_view handle = "(S2xS1)^";
    if (tok == "S3") {
    } else if (tok == "S2xS1") {
      m.genus += 1;
    } else if (tok.starts_with(handle) && all_digits(tok.substr(handle.size()))) {
      m.genus += std::stoul(std::string(tok.substr(handle.size())));
    } else if (tok.size() > 1 && tok[0] == 'g' && all_digits(tok.substr(1))) {
      m.genus += std::stoul(std::string(tok.substr(1)));
    } else {
      m.primes.emplace_back(std::string(tok));
    }
    if (hash == std::string_view::npos) break;
    start = hash + 1;
  }
  return m;
}

namespace {

LinearMap tensor_to_map(const Tensor3& t, std::size_t dom, std::size_t cod, bool is_mul) {
  const std::size_t d = t.dim();
  LinearMap out(d, dom, cod);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c) {
        if (is_mul)  // m(e_b (x) e_c) = sum_a mul(a,b,c) e_a
          out.at(a, b * d + c) = t(a, b, c);
        else  // comul(e_c) = sum_{a,b} comul(a,b,c) e_a (x) e_b
          out.at(a * d + b, c) = t(a, b, c);
      }
  return out;
}

LinearMap eval_gen_impl(const Generator& g, const LAlgebra& alg,
                        const std::map<PrimeLabel, LinearMap>* overrides) {
  const FrobeniusAlgebraSpec& s = alg.algebra();
  const std::size_t d = s.dim;
  switch (g.kind()) {
    case GenKind::Id:
      return LinearMap::identity(d, 1);
    case GenKind::Empty:
      return LinearMap::identity(d, 0);
    case GenKind::Mul:
      return tensor_to_map(s.mul, 2, 1, true);
    case GenKind::Comul:
      return tensor_to_map(*s.comul, 1, 2, false);
    case GenKind::Unit: {
      LinearMap out(d, 0, 1);
      for (std::size_t i = 0; i < d; ++i) out.at(i, 0) = s.unit[i];
      return out;
    }
    case GenKind::Counit: {
      LinearMap out(d, 1, 0);
      for (std::size_t i = 0; i < d; ++i) out.at(0, i) = s.trace[i];
      return out;
    }
    case GenKind::Swap: {
      LinearMap out(d, 2, 2);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) out.at(j * d + i, i * d + j) = 1;
      return out;
    }
    case GenKind::PrimeEndo: {
      if (overrides) {
        auto it = overrides->find(g.label());
        if (it != overrides->end()) {
          if (it->second.d() != d || it->second.dom_arity() != 1 ||
              it->second.cod_arity() != 1)
            throw ShapeError("override for '" + g.label().str() + "' has wrong shape");
          return it->second;
        }
      }
      return prime_endo_matrix(alg, g.label());
    }
    case GenKind::PrimeUnit: {
      const Vector& v = alg.prime_unit(g.label());
      LinearMap out(d, 0, 1);
      for (std::size_t i = 0; i < d; ++i) out.at(i, 0) = v[i];
      return out;
    }
  }
  throw std::logic_error("unhandled generator");
}

LinearMap eval_rec(const BordismTerm& t, const LAlgebra& alg,
                   const std::map<PrimeLabel, LinearMap>* overrides) {
  switch (t.node()) {
    case BordismTerm::Node::Gen:
      return eval_gen_impl(t.generator(), alg, overrides);
    case BordismTerm::Node::Compose:
      return eval_rec(t.left(), alg, overrides).after(eval_rec(t.right(), alg, overrides));
    case BordismTerm::Node::Tensor:
      return eval_rec(t.left(), alg, overrides).kron(eval_rec(t.right(), alg, overrides));
  }
  throw std::logic_error("unhandled node");
}

BordismTerm closed_term(const ManifoldSpec& m) {
  std::vector<BordismTerm> parts{gen(GenKind::Counit)};
  for (const auto& p : m.primes)
    parts.push_back(BordismTerm::gen(Generator(GenKind::PrimeEndo, p)));
  for (std::size_t h = 0; h < m.genus; ++h)
    parts.push_back(BordismTerm::compose(gen(GenKind::Mul), gen(GenKind::Comul)));
  parts.push_back(gen(GenKind::Unit));
  return compose_all(parts);
}

}  // namespace

LinearMap eval_generator(const Generator& g, const LAlgebra& alg) {
  return eval_gen_impl(g, alg, nullptr);
}

LinearMap eval_term(const BordismTerm& t, const LAlgebra& alg) {
  typecheck(t);
  return eval_rec(t, alg, nullptr);
}

LinearMap eval_with_endo_override(const BordismTerm& t, const LAlgebra& alg,
                                  const std::map<PrimeLabel, LinearMap>& overrides) {
  typecheck(t);
  return eval_rec(t, alg, &overrides);
}

LinearMap eval_semantic(const LabelledCospan& c, const LAlgebra& alg) {
  return eval_term(canonical_term(c, Presentation::G2), alg);
}

Rational closed_invariant(const ManifoldSpec& m, const LAlgebra& alg) {
  return eval_term(closed_term(m), alg).scalar();
}

LinearMap handle_operator(const LAlgebra& alg) {
  return eval_generator(GenKind::Mul, alg).after(eval_generator(GenKind::Comul, alg));
}

Rational closed_invariant_by_characters(const ManifoldSpec& m, const LAlgebra& alg,
                                        const IdempotentDecomposition& dec) {
  CharacterTable chi = characters(alg, dec);
  LinearMap handle = handle_operator(alg);
  Rational total = 0;
  for (std::size_t l = 0; l < dec.idempotents.size(); ++l) {
    Rational term = alg.trace(dec.idempotents[l]);
    for (const auto& p : m.primes) {
      auto it = std::find(chi.primes.begin(), chi.primes.end(), p);
      if (it == chi.primes.end()) throw UnknownPrime(p.str());
      term *= chi.values[l][static_cast<std::size_t>(it - chi.primes.begin())];
    }
    if (m.genus > 0) {
      Rational h = block_scalar(alg.algebra(), dec.idempotents[l], handle, l, "m.comul");
      for (std::size_t g = 0; g < m.genus; ++g) term *= h;
    }
    total += term;
  }
  return total;
}

}  // namespace cob3
