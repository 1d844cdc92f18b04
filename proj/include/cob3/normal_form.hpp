#pragma once

#include <string_view>

#include "cob3/cospan.hpp"
#include "cob3/term.hpp"

namespace cob3 {

enum class Presentation { G1, G2 };

/// Presentation named "G1" or "G2"; throws std::invalid_argument otherwise.
Presentation presentation_from_string(std::string_view s);

/// Canonical term realizing a cospan. Each component with inputs I, outputs
/// O, genus g and primes P becomes
///   G2: comul^(|O|) . pe(P...) . (m . comul)^g . m^(|I|)
///   G1: comul^(|O|) . (m . comul)^g . m^(|I| + |P|)
/// where m^(k) multiplies k inputs left to right (unit when k = 0) and
/// comul^(k) splits into k outputs (tr when k = 0). Blocks are tensored in
/// canonical component order between boundary permutations. In G1 the prime
/// units are tensored to the right of the inputs, sorted by label:
///   core . (id_dom * pu(p_1) * ... * pu(p_m)).
BordismTerm canonical_term(const LabelledCospan& c, Presentation p);

/// canonical_term(cospan_of_term(t), G1). Throws TypeError.
BordismTerm normalize_G1(const BordismTerm& t);
BordismTerm normalize_G2(const BordismTerm& t);

}  // namespace cob3
