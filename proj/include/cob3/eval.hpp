#pragma once

#include <map>
#include <string_view>

#include "cob3/cospan.hpp"
#include "cob3/frobenius.hpp"
#include "cob3/rational.hpp"
#include "cob3/term.hpp"

namespace cob3 {

/// Closed manifold P_1 # ... # P_m # (S2xS1)^genus.
struct ManifoldSpec {
  std::vector<PrimeLabel> primes;
  std::size_t genus = 0;
};

/// Parses factors joined by '#': "S3" (no factor), "S2xS1", "(S2xS1)^g",
/// "g<N>" (N handles), anything else is a prime label. Throws
/// std::invalid_argument.
ManifoldSpec parse_manifold(std::string_view s);

LinearMap eval_generator(const Generator& g, const LAlgebra& alg);

/// Structural evaluation: composition is the matrix product and tensor the
/// Kronecker product. Throws TypeError, UnknownPrime.
LinearMap eval_term(const BordismTerm& t, const LAlgebra& alg);

/// As eval_term, but pe(p) evaluates to overrides[p] where given.
LinearMap eval_with_endo_override(const BordismTerm& t, const LAlgebra& alg,
                                  const std::map<PrimeLabel, LinearMap>& overrides);

/// Evaluation through the cospan invariant: evaluates the canonical G2 term.
LinearMap eval_semantic(const LabelledCospan& c, const LAlgebra& alg);

/// Z(M) = tr . e_M . (m . comul)^g . unit.
Rational closed_invariant(const ManifoldSpec& m, const LAlgebra& alg);

/// sum_lambda tr(pi_lambda) * prod_i chi_lambda(P_i) * h_lambda^g, where
/// h_lambda is the scalar of the handle operator m . comul on block lambda.
/// Throws NotScalarOnBlock, std::invalid_argument for a bad decomposition.
Rational closed_invariant_by_characters(const ManifoldSpec& m, const LAlgebra& alg,
                                        const IdempotentDecomposition& dec);

/// Handle operator m . comul as a d x d matrix.
LinearMap handle_operator(const LAlgebra& alg);

}  // namespace cob3
