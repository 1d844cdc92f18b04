#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "cob3/term.hpp"

namespace cob3 {

/// Label of one connected component: the component is
///   P_1 # ... # P_k # (S2xS1)^genus  with some balls removed.
struct ComponentLabel {
  std::size_t genus = 0;
  std::vector<PrimeLabel> primes;  // kept sorted

  void normalize();
  auto operator<=>(const ComponentLabel&) const = default;
};

/// Cospan dom -> apex <- cod of finite sets with labelled apex. Each apex
/// point is one connected component of the bordism; points hit by neither
/// leg are closed components.
struct LabelledCospan {
  std::size_t dom = 0;
  std::size_t cod = 0;
  std::vector<std::size_t> in_leg;   // size dom, values < labels.size()
  std::vector<std::size_t> out_leg;  // size cod
  std::vector<ComponentLabel> labels;

  std::size_t apex_size() const { return labels.size(); }
  bool operator==(const LabelledCospan&) const = default;
};

LabelledCospan cospan_of_generator(const Generator& g);

/// `after` after `before`. Throws ArityMismatch unless before.cod == after.dom.
/// Each merged component gains genus equal to the first Betti number of the
/// graph whose vertices are the merged apex points and whose edges are the
/// glued boundary spheres.
LabelledCospan compose_cospans(const LabelledCospan& after,
                               const LabelledCospan& before);

LabelledCospan tensor_cospans(const LabelledCospan& left,
                              const LabelledCospan& right);

/// Renumbers apex points: boundary components by (incoming indices,
/// outgoing indices), then closed components sorted by label.
LabelledCospan canonicalize(const LabelledCospan& c);

/// Canonical cospan of a well-typed term. Throws TypeError.
LabelledCospan cospan_of_term(const BordismTerm& t);

bool terms_equal(const BordismTerm& a, const BordismTerm& b);

/// Human-readable rendering, e.g. "RP3 # (S2xS1)^2 \ 3 balls (2 in, 1 out)".
/// Components are joined by " + " in canonical order.
std::string manifold_signature(const LabelledCospan& c);

/// {dom, cod, components:[{in, out, genus, primes}]} in canonical order.
nlohmann::json cospan_to_json(const LabelledCospan& c);
LabelledCospan cospan_from_json(const nlohmann::json& j);

/// Incoming / outgoing boundary indices of each apex point.
struct ComponentBoundary {
  std::vector<std::size_t> in;
  std::vector<std::size_t> out;
};
std::vector<ComponentBoundary> component_boundaries(const LabelledCospan& c);

}  // namespace cob3
