#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cob3/term.hpp"

namespace cob3::testing {

struct TermShape {
  std::size_t max_size = 12;    // tree nodes
  std::size_t max_arity = 3;    // every intermediate boundary
  std::vector<std::string> labels = {"P", "Q"};
  bool allow_empty = true;
};

class TermGenerator {
 public:
  TermGenerator(std::uint64_t seed, TermShape shape) : rng_(seed), shape_(std::move(shape)) {}

  /// A well-typed term within the shape; retries until one fits.
  BordismTerm next() {
    for (;;) {
      std::size_t dom = pick(0, shape_.max_arity);
      std::size_t budget = pick(1, shape_.max_size);
      auto t = term(dom, budget);
      if (t && t->size() <= shape_.max_size) return *t;
    }
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::size_t pick(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  const std::string& label() { return shape_.labels[pick(0, shape_.labels.size() - 1)]; }

  // One generator consuming `k` wires.
  BordismTerm atom(std::size_t k) {
    switch (k) {
      case 0:
        switch (pick(0, shape_.allow_empty ? 2 : 1)) {
          case 0: return gen(GenKind::Unit);
          case 1: return prime_unit(label());
          default: return gen(GenKind::Empty);
        }
      case 1:
        switch (pick(0, 3)) {
          case 0: return gen(GenKind::Id);
          case 1: return gen(GenKind::Counit);
          case 2: return gen(GenKind::Comul);
          default: return prime_endo(label());
        }
      default:
        return pick(0, 1) ? gen(GenKind::Mul) : gen(GenKind::Swap);
    }
  }

  // A layer of generators side by side over `dom` wires.
  std::optional<BordismTerm> layer(std::size_t dom) {
    std::vector<BordismTerm> parts;
    std::size_t left = dom;
    if (dom == 0 || pick(0, 4) == 0) parts.push_back(atom(0));
    while (left > 0) {
      std::size_t k = left >= 2 && pick(0, 2) == 0 ? 2 : 1;
      parts.push_back(atom(k));
      left -= k;
    }
    std::shuffle(parts.begin(), parts.end(), rng_);
    BordismTerm t = tensor_all(parts);
    if (typecheck(t).cod > shape_.max_arity) return std::nullopt;
    return t;
  }

  std::optional<BordismTerm> term(std::size_t dom, std::size_t budget) {
    if (budget <= 3) return layer(dom);
    switch (pick(0, 2)) {
      case 0:
      case 1: {
        std::size_t b1 = pick(1, budget - 2);
        auto before = term(dom, b1);
        if (!before || before->size() + 2 > budget) return std::nullopt;
        auto after = term(typecheck(*before).cod, budget - 1 - before->size());
        if (!after) return std::nullopt;
        return BordismTerm::compose(*after, *before);
      }
      default: {
        std::size_t d1 = pick(0, dom), b1 = pick(1, budget - 2);
        auto l = term(d1, b1);
        if (!l) return std::nullopt;
        if (budget < l->size() + 2) return std::nullopt;
        auto r = term(dom - d1, budget - 1 - l->size());
        if (!r) return std::nullopt;
        BordismTerm t = BordismTerm::tensor(*l, *r);
        if (typecheck(t).cod > shape_.max_arity) return std::nullopt;
        return t;
      }
    }
  }

  std::mt19937_64 rng_;
  TermShape shape_;
};

/// Random permutation of n.
inline std::vector<std::size_t> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace cob3::testing
