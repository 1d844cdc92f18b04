#include "cob3/normal_form.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cob3 {

Presentation presentation_from_string(std::string_view s) {
  if (s == "G1") return Presentation::G1;
  if (s == "G2") return Presentation::G2;
  throw std::invalid_argument("unknown presentation '" + std::string(s) + "'");
}

namespace {

BordismTerm mul_chain(std::size_t inputs) {
  if (inputs == 0) return gen(GenKind::Unit);
  if (inputs == 1) return gen(GenKind::Id);
  // Applied first: m * id_{k-2}; last: m.
  std::vector<BordismTerm> layers;
  for (std::size_t rest = 0; rest + 2 <= inputs; ++rest)
    layers.push_back(rest == 0 ? gen(GenKind::Mul)
                               : BordismTerm::tensor(gen(GenKind::Mul), id_n(rest)));
  return compose_all(layers);
}

BordismTerm comul_chain(std::size_t outputs) {
  if (outputs == 0) return gen(GenKind::Counit);
  if (outputs == 1) return gen(GenKind::Id);
  std::vector<BordismTerm> layers;
  for (std::size_t rest = outputs - 2;; --rest) {
    layers.push_back(rest == 0 ? gen(GenKind::Comul)
                               : BordismTerm::tensor(gen(GenKind::Comul), id_n(rest)));
    if (rest == 0) break;
  }
  return compose_all(layers);
}

bool is_identity(const std::vector<std::size_t>& perm) {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != i) return false;
  return true;
}

struct Block {
  BordismTerm term;
  bool identity;
};

Block component_block(std::size_t inputs, std::size_t outputs,
                      const ComponentLabel& label, bool with_endos) {
  std::vector<BordismTerm> parts;  // outermost first
  if (outputs != 1) parts.push_back(comul_chain(outputs));
  if (with_endos)
    for (auto it = label.primes.rbegin(); it != label.primes.rend(); ++it)
      parts.push_back(BordismTerm::gen(Generator(GenKind::PrimeEndo, *it)));
  for (std::size_t h = 0; h < label.genus; ++h)
    parts.push_back(BordismTerm::compose(gen(GenKind::Mul), gen(GenKind::Comul)));
  if (inputs != 1) parts.push_back(mul_chain(inputs));
  if (parts.empty()) return {gen(GenKind::Id), true};
  return {compose_all(parts), false};
}

}  // namespace

BordismTerm canonical_term(const LabelledCospan& raw, Presentation pres) {
  const LabelledCospan c = canonicalize(raw);
  const std::vector<ComponentBoundary> bounds = component_boundaries(c);
  const bool g1 = pres == Presentation::G1;

  // Prime units for G1, sorted by (label, component).
  struct PrimeWire {
    PrimeLabel label;
    std::size_t component;
  };
  std::vector<PrimeWire> wires;
  if (g1)
    for (std::size_t v = 0; v < c.apex_size(); ++v)
      for (const auto& p : c.labels[v].primes) wires.push_back({p, v});
  std::stable_sort(wires.begin(), wires.end(), [](const auto& a, const auto& b) {
    return a.label < b.label;
  });

  // Core inputs: boundary 0..dom-1, then prime wire r at dom + r.
  const std::size_t core_in = c.dom + wires.size();
  std::vector<std::size_t> in_perm(core_in), out_perm(c.cod);
  std::vector<Block> blocks;
  std::size_t in_pos = 0, out_pos = 0;
  for (std::size_t v = 0; v < c.apex_size(); ++v) {
    std::size_t nin = bounds[v].in.size();
    for (std::size_t i : bounds[v].in) in_perm[i] = in_pos++;
    for (std::size_t r = 0; r < wires.size(); ++r)
      if (wires[r].component == v) {
        in_perm[c.dom + r] = in_pos++;
        ++nin;
      }
    // Block output q feeds boundary output bounds[v].out[q].
    for (std::size_t j : bounds[v].out) out_perm[out_pos++] = j;
    blocks.push_back(component_block(nin, bounds[v].out.size(), c.labels[v], !g1));
  }

  std::vector<BordismTerm> parts;  // outermost first
  if (!is_identity(out_perm)) parts.push_back(permutation_term(out_perm));
  if (!std::all_of(blocks.begin(), blocks.end(),
                   [](const Block& b) { return b.identity; })) {
    std::vector<BordismTerm> terms;
    for (auto& b : blocks) terms.push_back(b.term);
    parts.push_back(tensor_all(terms));
  }
  if (!is_identity(in_perm)) parts.push_back(permutation_term(in_perm));
  if (parts.empty() && wires.empty()) return id_n(c.dom);
  if (!wires.empty()) {
    std::vector<BordismTerm> layer;
    if (c.dom > 0) layer.push_back(id_n(c.dom));
    for (const auto& w : wires)
      layer.push_back(BordismTerm::gen(Generator(GenKind::PrimeUnit, w.label)));
    parts.push_back(tensor_all(layer));
  }
  return compose_all(parts);
}

BordismTerm normalize_G1(const BordismTerm& t) {
  return canonical_term(cospan_of_term(t), Presentation::G1);
}

BordismTerm normalize_G2(const BordismTerm& t) {
  return canonical_term(cospan_of_term(t), Presentation::G2);
}

}  // namespace cob3
