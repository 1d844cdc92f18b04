#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cob3 {

/// Name of an irreducible prime factor. Labels are opaque; two labels are
/// the same prime iff their strings are equal.
class PrimeLabel {
 public:
  PrimeLabel() = default;
  /// Throws std::invalid_argument unless `name` is a nonempty string over
  /// [A-Za-z0-9_#+~-]. With `allow_metavariable`, a single leading '?' is
  /// accepted as well (pattern variables in rewrite rules).
  explicit PrimeLabel(std::string name, bool allow_metavariable = false);

  const std::string& str() const { return name_; }
  bool is_metavariable() const { return !name_.empty() && name_[0] == '?'; }

  auto operator<=>(const PrimeLabel&) const = default;

  static bool valid_char(char c);

 private:
  std::string name_;
};

enum class GenKind {
  Id,
  Mul,
  Unit,
  Comul,
  Counit,
  Swap,
  Empty,
  PrimeEndo,
  PrimeUnit,
};

struct MorphismType {
  std::size_t dom = 0;
  std::size_t cod = 0;
  auto operator<=>(const MorphismType&) const = default;
};

class Generator {
 public:
  Generator(GenKind kind) : kind_(kind) {}  // NOLINT(google-explicit-constructor)
  Generator(GenKind kind, PrimeLabel label);

  GenKind kind() const { return kind_; }
  /// Only meaningful for PrimeEndo / PrimeUnit.
  const PrimeLabel& label() const { return label_; }
  bool is_prime() const {
    return kind_ == GenKind::PrimeEndo || kind_ == GenKind::PrimeUnit;
  }

  MorphismType type() const;

  auto operator<=>(const Generator&) const = default;

 private:
  GenKind kind_;
  PrimeLabel label_;
};

/// Immutable syntax tree over generators, composition and tensor product.
/// Copies share structure.
class BordismTerm {
 public:
  enum class Node { Gen, Compose, Tensor };

  static BordismTerm gen(Generator g);
  /// `after` after `before`, written "after . before".
  static BordismTerm compose(BordismTerm after, BordismTerm before);
  static BordismTerm tensor(BordismTerm left, BordismTerm right);

  Node node() const;
  bool is_gen() const { return node() == Node::Gen; }
  const Generator& generator() const;
  const BordismTerm& left() const;
  const BordismTerm& right() const;

  /// Count of tree nodes.
  std::size_t size() const;

  friend bool operator==(const BordismTerm& a, const BordismTerm& b);

 private:
  struct Impl;
  explicit BordismTerm(std::shared_ptr<const Impl> impl)
      : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

inline BordismTerm gen(GenKind k) { return BordismTerm::gen(k); }
inline BordismTerm prime_endo(const std::string& p) {
  return BordismTerm::gen(Generator(GenKind::PrimeEndo, PrimeLabel(p)));
}
inline BordismTerm prime_unit(const std::string& p) {
  return BordismTerm::gen(Generator(GenKind::PrimeUnit, PrimeLabel(p)));
}

struct ParseOptions {
  /// Accept "?x" labels inside pe()/pu().
  bool allow_metavariables = false;
};

/// Parses the term grammar:
///   term := atom | term "." term | term "*" term | "(" term ")"
/// "." is right-associative; "*" is left-associative and binds tighter.
/// Throws SyntaxError. Performs no arity checking.
BordismTerm parse(std::string_view src, ParseOptions opts = {});

/// Fully parenthesized canonical text.
std::string print(const BordismTerm& t);

/// Throws TypeError naming the offending composite and arities.
MorphismType typecheck(const BordismTerm& t);

/// Identity on n spheres; `empty` for n == 0.
BordismTerm id_n(std::size_t n);

/// Term over swap/id realizing `perm`: input i feeds output perm[i].
/// Throws std::invalid_argument unless perm is a bijection.
BordismTerm permutation_term(std::span<const std::size_t> perm);

/// Tensor of the given terms, left-nested; `empty` when `parts` is empty.
BordismTerm tensor_all(std::span<const BordismTerm> parts);
/// Composite parts[0] . parts[1] . ...; parts must be nonempty.
BordismTerm compose_all(std::span<const BordismTerm> parts);

/// All prime labels occurring in t, sorted and deduplicated.
std::vector<PrimeLabel> prime_labels(const BordismTerm& t);

std::string_view generator_keyword(GenKind k);

}  // namespace cob3
