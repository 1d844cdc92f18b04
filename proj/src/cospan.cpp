#include "cob3/cospan.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "cob3/errors.hpp"

namespace cob3 {

void ComponentLabel::normalize() { std::sort(primes.begin(), primes.end()); }

LabelledCospan cospan_of_generator(const Generator& g) {
  LabelledCospan c;
  MorphismType ty = g.type();
  c.dom = ty.dom;
  c.cod = ty.cod;
  switch (g.kind()) {
    case GenKind::Empty:
      return c;
    case GenKind::Swap:
      c.in_leg = {0, 1};
      c.out_leg = {1, 0};
      c.labels.resize(2);
      return c;
    default:
      break;
  }
  c.in_leg.assign(ty.dom, 0);
  c.out_leg.assign(ty.cod, 0);
  c.labels.resize(1);
  if (g.is_prime()) c.labels[0].primes = {g.label()};
  return c;
}

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n), cycles(n, 0) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Adds an edge; an edge inside one class closes a cycle.
  void join(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      ++cycles[a];
      return;
    }
    parent[b] = a;
    cycles[a] += cycles[b];
  }
  std::vector<std::size_t> parent;
  std::vector<std::size_t> cycles;
};

}  // namespace

LabelledCospan compose_cospans(const LabelledCospan& after,
                               const LabelledCospan& before) {
  if (before.cod != after.dom)
    throw ArityMismatch("compose_cospans: codomain " +
                        std::to_string(before.cod) + " vs domain " +
                        std::to_string(after.dom));
  const std::size_t nb = before.apex_size();
  const std::size_t n = nb + after.apex_size();
  UnionFind uf(n);
  for (std::size_t j = 0; j < before.cod; ++j)
    uf.join(before.out_leg[j], nb + after.in_leg[j]);

  std::vector<std::size_t> slot(n, SIZE_MAX);
  LabelledCospan out;
  out.dom = before.dom;
  out.cod = after.cod;
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t r = uf.find(v);
    if (slot[r] == SIZE_MAX) {
      slot[r] = out.labels.size();
      out.labels.push_back({uf.cycles[r], {}});
    }
    const ComponentLabel& src =
        v < nb ? before.labels[v] : after.labels[v - nb];
    ComponentLabel& dst = out.labels[slot[r]];
    dst.genus += src.genus;
    dst.primes.insert(dst.primes.end(), src.primes.begin(), src.primes.end());
  }
  for (auto& l : out.labels) l.normalize();
  out.in_leg.reserve(out.dom);
  for (std::size_t i : before.in_leg) out.in_leg.push_back(slot[uf.find(i)]);
  out.out_leg.reserve(out.cod);
  for (std::size_t i : after.out_leg)
    out.out_leg.push_back(slot[uf.find(nb + i)]);
  return canonicalize(out);
}

LabelledCospan tensor_cospans(const LabelledCospan& left,
                              const LabelledCospan& right) {
  LabelledCospan out;
  const std::size_t shift = left.apex_size();
  out.dom = left.dom + right.dom;
  out.cod = left.cod + right.cod;
  out.in_leg = left.in_leg;
  for (std::size_t i : right.in_leg) out.in_leg.push_back(i + shift);
  out.out_leg = left.out_leg;
  for (std::size_t i : right.out_leg) out.out_leg.push_back(i + shift);
  out.labels = left.labels;
  out.labels.insert(out.labels.end(), right.labels.begin(), right.labels.end());
  return canonicalize(out);
}

std::vector<ComponentBoundary> component_boundaries(const LabelledCospan& c) {
  std::vector<ComponentBoundary> b(c.apex_size());
  for (std::size_t i = 0; i < c.dom; ++i) b[c.in_leg[i]].in.push_back(i);
  for (std::size_t j = 0; j < c.cod; ++j) b[c.out_leg[j]].out.push_back(j);
  return b;
}

LabelledCospan canonicalize(const LabelledCospan& c) {
  if (c.in_leg.size() != c.dom || c.out_leg.size() != c.cod)
    throw std::invalid_argument("canonicalize: leg sizes disagree with arity");
  std::vector<ComponentBoundary> bounds = component_boundaries(c);
  std::vector<std::size_t> order(c.apex_size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto closed = [&](std::size_t v) {
    return bounds[v].in.empty() && bounds[v].out.empty();
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    bool ca = closed(a), cb = closed(b);
    if (ca != cb) return cb;
    if (ca) {
      ComponentLabel la = c.labels[a], lb = c.labels[b];
      la.normalize();
      lb.normalize();
      return la < lb;
    }
    if (bounds[a].in != bounds[b].in) return bounds[a].in < bounds[b].in;
    return bounds[a].out < bounds[b].out;
  });
  std::vector<std::size_t> rank(c.apex_size());
  for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = k;

  LabelledCospan out;
  out.dom = c.dom;
  out.cod = c.cod;
  for (std::size_t i : c.in_leg) out.in_leg.push_back(rank[i]);
  for (std::size_t i : c.out_leg) out.out_leg.push_back(rank[i]);
  for (std::size_t v : order) {
    out.labels.push_back(c.labels[v]);
    out.labels.back().normalize();
  }
  return out;
}

LabelledCospan cospan_of_term(const BordismTerm& t) {
  typecheck(t);
  // Recursion on a typechecked tree cannot hit ArityMismatch.
  struct Fold {
    LabelledCospan operator()(const BordismTerm& s) const {
      switch (s.node()) {
        case BordismTerm::Node::Gen:
          return canonicalize(cospan_of_generator(s.generator()));
        case BordismTerm::Node::Compose:
          return compose_cospans((*this)(s.left()), (*this)(s.right()));
        case BordismTerm::Node::Tensor:
          return tensor_cospans((*this)(s.left()), (*this)(s.right()));
      }
      return {};
    }
  };
  return Fold{}(t);
}

bool terms_equal(const BordismTerm& a, const BordismTerm& b) {
  if (typecheck(a) != typecheck(b)) return false;
  return cospan_of_term(a) == cospan_of_term(b);
}

namespace {

std::string component_name(const ComponentLabel& l) {
  std::string s;
  for (const auto& p : l.primes) {
    if (!s.empty()) s += " # ";
    s += p.str();
  }
  if (l.genus > 0) {
    if (!s.empty()) s += " # ";
    s += "(S2xS1)^" + std::to_string(l.genus);
  }
  return s.empty() ? "S3" : s;
}

}  // namespace

std::string manifold_signature(const LabelledCospan& raw) {
  LabelledCospan c = canonicalize(raw);
  if (c.apex_size() == 0) return "empty";
  std::vector<ComponentBoundary> bounds = component_boundaries(c);
  std::string out;
  for (std::size_t v = 0; v < c.apex_size(); ++v) {
    if (v > 0) out += " + ";
    out += component_name(c.labels[v]);
    std::size_t nin = bounds[v].in.size(), nout = bounds[v].out.size();
    std::size_t balls = nin + nout;
    if (balls == 0) {
      out += " closed";
      continue;
    }
    out += " \\ " + std::to_string(balls) + (balls == 1 ? " ball" : " balls") +
           " (" + std::to_string(nin) + " in, " + std::to_string(nout) +
           " out)";
  }
  return out;
}

nlohmann::json cospan_to_json(const LabelledCospan& raw) {
  LabelledCospan c = canonicalize(raw);
  std::vector<ComponentBoundary> bounds = component_boundaries(c);
  nlohmann::json comps = nlohmann::json::array();
  for (std::size_t v = 0; v < c.apex_size(); ++v) {
    nlohmann::json primes = nlohmann::json::array();
    for (const auto& p : c.labels[v].primes) primes.push_back(p.str());
    comps.push_back({{"in", bounds[v].in},
                     {"out", bounds[v].out},
                     {"genus", c.labels[v].genus},
                     {"primes", primes}});
  }
  return {{"dom", c.dom}, {"cod", c.cod}, {"components", comps}};
}

LabelledCospan cospan_from_json(const nlohmann::json& j) {
  LabelledCospan c;
  c.dom = j.at("dom").get<std::size_t>();
  c.cod = j.at("cod").get<std::size_t>();
  c.in_leg.assign(c.dom, SIZE_MAX);
  c.out_leg.assign(c.cod, SIZE_MAX);
  for (const auto& comp : j.at("components")) {
    std::size_t v = c.labels.size();
    ComponentLabel l;
    l.genus = comp.at("genus").get<std::size_t>();
    for (const auto& p : comp.at("primes"))
      l.primes.emplace_back(p.get<std::string>());
    c.labels.push_back(std::move(l));
    for (std::size_t i : comp.at("in").get<std::vector<std::size_t>>()) {
      if (i >= c.dom || c.in_leg[i] != SIZE_MAX)
        throw std::invalid_argument("cospan json: bad incoming index");
      c.in_leg[i] = v;
    }
    for (std::size_t i : comp.at("out").get<std::vector<std::size_t>>()) {
      if (i >= c.cod || c.out_leg[i] != SIZE_MAX)
        throw std::invalid_argument("cospan json: bad outgoing index");
      c.out_leg[i] = v;
    }
  }
  for (std::size_t v : c.in_leg)
    if (v == SIZE_MAX) throw std::invalid_argument("cospan json: unmapped input");
  for (std::size_t v : c.out_leg)
    if (v == SIZE_MAX)
      throw std::invalid_argument("cospan json: unmapped output");
  return canonicalize(c);
}

}  // namespace cob3
