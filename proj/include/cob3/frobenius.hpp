#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cob3/errors.hpp"
#include "cob3/rational.hpp"
#include "cob3/term.hpp"

namespace cob3 {

/// d x d x d array of rationals, flat.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(std::size_t d) : d_(d), data_(d * d * d, Rational(0)) {}

  std::size_t dim() const { return d_; }
  Rational& operator()(std::size_t a, std::size_t b, std::size_t c) {
    return data_[(a * d_ + b) * d_ + c];
  }
  const Rational& operator()(std::size_t a, std::size_t b, std::size_t c) const {
    return data_[(a * d_ + b) * d_ + c];
  }
  bool operator==(const Tensor3&) const = default;

 private:
  std::size_t d_ = 0;
  std::vector<Rational> data_;
};

/// Structure constants of a commutative Frobenius algebra over Q.
///   m(e_i (x) e_j)  = sum_k mul(k, i, j) e_k
///   comul(e_k)      = sum_{i,j} comul(i, j, k) e_i (x) e_j
struct FrobeniusAlgebraSpec {
  std::size_t dim = 0;
  Tensor3 mul;
  Vector unit;
  Vector trace;
  std::optional<Tensor3> comul;

  bool operator==(const FrobeniusAlgebraSpec&) const = default;
};

struct AxiomCheck {
  std::string name;
  bool pass = true;
  std::vector<std::size_t> witness;  // basis indices of the first failure
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_pass() const;
  const AxiomCheck& check(const std::string& name) const;
  std::string to_text() const;
  nlohmann::json to_json() const;
};

/// Throws ShapeError if tensor shapes disagree with dim. A missing comul
/// fails every check that needs it.
AxiomReport verify_cf(const FrobeniusAlgebraSpec& spec);

/// Fills comul from the pairing tr(ab). Throws DegeneratePairing.
FrobeniusAlgebraSpec derive_comul(FrobeniusAlgebraSpec spec);

/// Thrown when an algebra handed to the evaluator does not verify.
struct AlgebraVerificationError : Error {
  explicit AlgebraVerificationError(AxiomReport r)
      : Error("algebra fails commutative Frobenius axioms:\n" + r.to_text()),
        report(std::move(r)) {}
  AxiomReport report;
};

/// Commutative Frobenius algebra with a chosen element 1_p per prime.
class LAlgebra {
 public:
  /// Derives comul when absent, then verifies. Throws
  /// AlgebraVerificationError, DegeneratePairing, ShapeError.
  static LAlgebra create(FrobeniusAlgebraSpec spec,
                         std::map<PrimeLabel, Vector> prime_units = {});

  const FrobeniusAlgebraSpec& algebra() const { return spec_; }
  std::size_t dim() const { return spec_.dim; }
  const std::map<PrimeLabel, Vector>& prime_units() const { return primes_; }
  /// Throws UnknownPrime.
  const Vector& prime_unit(const PrimeLabel& p) const;

  Vector multiply(const Vector& a, const Vector& b) const;
  Rational trace(const Vector& a) const;

 private:
  LAlgebra(FrobeniusAlgebraSpec spec, std::map<PrimeLabel, Vector> primes)
      : spec_(std::move(spec)), primes_(std::move(primes)) {}
  FrobeniusAlgebraSpec spec_;
  std::map<PrimeLabel, Vector> primes_;
};

/// Matrix of a -> 1_p a. Throws UnknownPrime.
LinearMap prime_endo_matrix(const LAlgebra& alg, const PrimeLabel& p);
/// Matrix of a -> x a.
LinearMap multiplication_matrix(const FrobeniusAlgebraSpec& spec, const Vector& x);

/// Whether m . (endo * id) == m . (id * endo) exactly. Throws ShapeError.
bool verify_legs(const FrobeniusAlgebraSpec& spec, const LinearMap& endo);

struct IdempotentDecomposition {
  std::vector<Vector> idempotents;
};

/// Orthogonal, nonzero, idempotent, summing to the unit.
bool verify_decomposition(const FrobeniusAlgebraSpec& spec,
                          const IdempotentDecomposition& dec);

/// Scalar by which `op` acts on the block pi * A. Throws NotScalarOnBlock
/// (naming `what`) when op does not act as a scalar there.
Rational block_scalar(const FrobeniusAlgebraSpec& spec, const Vector& pi,
                      const LinearMap& op, std::size_t block,
                      const std::string& what);

struct CharacterTable {
  std::vector<PrimeLabel> primes;
  std::vector<std::vector<Rational>> values;  // [block][prime]
};

/// chi[lambda][p]. Throws std::invalid_argument if dec does not verify and
/// NotScalarOnBlock if some 1_p is not scalar on a block.
CharacterTable characters(const LAlgebra& alg, const IdempotentDecomposition& dec);

/// {dim, mul, unit, trace, comul?, primes} with rationals as strings.
nlohmann::json algebra_to_json(const FrobeniusAlgebraSpec& spec,
                               const std::map<PrimeLabel, Vector>& primes);
struct ParsedAlgebra {
  FrobeniusAlgebraSpec spec;
  std::map<PrimeLabel, Vector> primes;
};
/// Throws ShapeError or std::invalid_argument on malformed input.
ParsedAlgebra algebra_from_json(const nlohmann::json& j);

IdempotentDecomposition decomposition_from_json(const nlohmann::json& j);

}  // namespace cob3
