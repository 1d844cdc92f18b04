#include "cob3/fixtures.hpp"

namespace cob3::fixtures {

namespace {

Rational random_rational(std::mt19937_64& rng, int lo, int hi, bool nonzero) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, 3);
  for (;;) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    if (!nonzero || sgn(q) != 0) return q;
  }
}

}  // namespace

FrobeniusAlgebraSpec diagonal(const Vector& weights) {
  FrobeniusAlgebraSpec s;
  s.dim = weights.size();
  s.mul = Tensor3(s.dim);
  for (std::size_t i = 0; i < s.dim; ++i) s.mul(i, i, i) = 1;
  s.unit.assign(s.dim, Rational(1));
  s.trace = weights;
  return s;
}

FrobeniusAlgebraSpec hadamard() {
  FrobeniusAlgebraSpec s = diagonal({Rational(1), Rational(1)});
  Tensor3 w(2);
  w(0, 0, 0) = 1;
  w(1, 1, 1) = 1;
  s.comul = w;
  return s;
}

FrobeniusAlgebraSpec dual_numbers() {
  FrobeniusAlgebraSpec s;
  s.dim = 2;
  s.mul = Tensor3(2);
  s.mul(0, 0, 0) = 1;  // 1*1 = 1
  s.mul(1, 0, 1) = 1;  // 1*x = x
  s.mul(1, 1, 0) = 1;  // x*1 = x
  s.unit = {Rational(1), Rational(0)};
  s.trace = {Rational(0), Rational(1)};
  return s;
}

IdempotentDecomposition standard_idempotents(std::size_t n) {
  IdempotentDecomposition dec;
  for (std::size_t i = 0; i < n; ++i) dec.idempotents.push_back(basis_vector(n, i));
  return dec;
}

LAlgebra random_diagonal_l_algebra(std::mt19937_64& rng, std::size_t dim,
                                   const std::vector<PrimeLabel>& labels) {
  Vector w;
  for (std::size_t i = 0; i < dim; ++i) w.push_back(random_rational(rng, -4, 4, true));
  std::map<PrimeLabel, Vector> primes;
  for (const auto& p : labels) {
    Vector v;
    for (std::size_t i = 0; i < dim; ++i) v.push_back(random_rational(rng, -3, 3, false));
    primes.emplace(p, std::move(v));
  }
  return LAlgebra::create(diagonal(w), std::move(primes));
}

LAlgebra random_l_algebra(std::mt19937_64& rng, std::size_t dim,
                          const std::vector<PrimeLabel>& labels) {
  // Column j of `basis` holds the new basis vector b_j in idempotent
  // coordinates.
  std::vector<Vector> basis, inv;
  do {
    basis.assign(dim, Vector(dim));
    for (auto& row : basis)
      for (auto& x : row) x = random_rational(rng, -2, 2, false);
    inv = invert(basis);
  } while (inv.empty());

  Vector weights;
  for (std::size_t i = 0; i < dim; ++i)
    weights.push_back(random_rational(rng, -4, 4, true));

  FrobeniusAlgebraSpec s;
  s.dim = dim;
  s.mul = Tensor3(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t a = 0; a < dim; ++a) {
        Rational f = basis[a][i] * basis[a][j];
        if (sgn(f) == 0) continue;
        for (std::size_t k = 0; k < dim; ++k) s.mul(k, i, j) += inv[k][a] * f;
      }
  s.unit.assign(dim, Rational(0));
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t a = 0; a < dim; ++a) s.unit[k] += inv[k][a];
  s.trace.assign(dim, Rational(0));
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t a = 0; a < dim; ++a) s.trace[j] += weights[a] * basis[a][j];

  std::map<PrimeLabel, Vector> primes;
  for (const auto& p : labels) {
    Vector v;
    for (std::size_t i = 0; i < dim; ++i) v.push_back(random_rational(rng, -3, 3, false));
    primes.emplace(p, std::move(v));
  }
  return LAlgebra::create(std::move(s), std::move(primes));
}

}  // namespace cob3::fixtures
