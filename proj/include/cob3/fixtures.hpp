#pragma once

#include <cstdint>
#include <random>

#include "cob3/frobenius.hpp"

namespace cob3::fixtures {

/// Q^n with componentwise product and trace sum_i weights[i] x_i. Weights
/// must be nonzero for the result to be Frobenius. Comul is left empty.
FrobeniusAlgebraSpec diagonal(const Vector& weights);

/// The Hadamard algebra Q^2: unit (1,1), trace (1,1), comul e_i -> e_i (x) e_i.
FrobeniusAlgebraSpec hadamard();

/// Q[x]/(x^2) with tr(a + bx) = b. Not semisimple.
FrobeniusAlgebraSpec dual_numbers();

/// Standard idempotents e_1..e_n of a diagonal algebra.
IdempotentDecomposition standard_idempotents(std::size_t n);

/// A diagonal algebra of dimension `dim` written in a random rational basis,
/// with random nonzero trace weights and random 1_p for each label.
LAlgebra random_l_algebra(std::mt19937_64& rng, std::size_t dim,
                          const std::vector<PrimeLabel>& labels);

/// Diagonal algebra with random nonzero weights and random 1_p.
LAlgebra random_diagonal_l_algebra(std::mt19937_64& rng, std::size_t dim,
                                   const std::vector<PrimeLabel>& labels);

}  // namespace cob3::fixtures
