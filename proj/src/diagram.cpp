#include "cob3/diagram.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace cob3 {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::size_t out_arity(const DiagramNode& n) { return n.gen.type().cod; }

std::vector<Source> build(const BordismTerm& t, std::vector<Source> inputs,
                          Diagram& d) {
  switch (t.node()) {
    case BordismTerm::Node::Gen: {
      const Generator& g = t.generator();
      switch (g.kind()) {
        case GenKind::Id:
        case GenKind::Empty:
          return inputs;
        case GenKind::Swap:
          return {inputs[1], inputs[0]};
        default:
          break;
      }
      std::size_t id = d.nodes.size();
      d.nodes.push_back({g, std::move(inputs)});
      std::vector<Source> outs;
      for (std::size_t k = 0; k < g.type().cod; ++k) outs.push_back({id, k});
      return outs;
    }
    case BordismTerm::Node::Compose:
      return build(t.left(), build(t.right(), std::move(inputs), d), d);
    case BordismTerm::Node::Tensor: {
      std::size_t split = typecheck(t.left()).dom;
      std::vector<Source> rest(inputs.begin() + static_cast<std::ptrdiff_t>(split),
                               inputs.end());
      inputs.resize(split);
      std::vector<Source> outs = build(t.left(), std::move(inputs), d);
      std::vector<Source> more = build(t.right(), std::move(rest), d);
      outs.insert(outs.end(), more.begin(), more.end());
      return outs;
    }
  }
  return {};
}

std::string gen_token(const Generator& g) {
  std::string s(generator_keyword(g.kind()));
  if (g.is_prime()) {
    s += ':';
    s += g.label().str();
  }
  return s;
}

// Breadth-first numbering from the queued nodes, following ports in order.
void number_from(const Diagram& d, const Diagram::TargetIndex& ti,
                 std::deque<std::size_t>& queue, std::vector<std::size_t>& id,
                 std::vector<std::size_t>& order) {
  auto discover = [&](std::size_t n) {
    if (n == kNone || id[n] != kNone) return;
    id[n] = order.size();
    order.push_back(n);
    queue.push_back(n);
  };
  while (!queue.empty()) {
    std::size_t n = queue.front();
    queue.pop_front();
    for (const Source& s : d.nodes[n].inputs)
      if (!s.is_boundary()) discover(s.node);
    for (const Target& t : ti.node[n])
      if (!t.is_boundary()) discover(t.node);
  }
}

// Encodes nodes in `order` with ids from `id`; boundary sources as "B<i>".
std::string encode(const Diagram& d, const std::vector<std::size_t>& order,
                   const std::vector<std::size_t>& id) {
  std::string s;
  for (std::size_t n : order) {
    s += gen_token(d.nodes[n].gen);
    s += '(';
    for (const Source& src : d.nodes[n].inputs) {
      if (src.is_boundary())
        s += "B" + std::to_string(src.port);
      else
        s += std::to_string(id[src.node]) + "." + std::to_string(src.port);
      s += ',';
    }
    s += ");";
  }
  return s;
}

}  // namespace

Diagram::TargetIndex Diagram::targets() const {
  TargetIndex ti;
  ti.boundary.assign(dom, Target{});
  ti.node.resize(nodes.size());
  for (std::size_t n = 0; n < nodes.size(); ++n)
    ti.node[n].assign(out_arity(nodes[n]), Target{});
  auto set = [&](const Source& s, Target t) {
    if (s.is_boundary())
      ti.boundary.at(s.port) = t;
    else
      ti.node.at(s.node).at(s.port) = t;
  };
  for (std::size_t n = 0; n < nodes.size(); ++n)
    for (std::size_t k = 0; k < nodes[n].inputs.size(); ++k) set(nodes[n].inputs[k], {n, k});
  for (std::size_t j = 0; j < outputs.size(); ++j) set(outputs[j], {Target::kBoundary, j});
  return ti;
}

bool Diagram::acyclic() const {
  std::vector<std::size_t> indeg(nodes.size(), 0);
  std::vector<std::vector<std::size_t>> succ(nodes.size());
  for (std::size_t n = 0; n < nodes.size(); ++n)
    for (const Source& s : nodes[n].inputs)
      if (!s.is_boundary()) {
        succ[s.node].push_back(n);
        ++indeg[n];
      }
  std::vector<std::size_t> ready;
  for (std::size_t n = 0; n < nodes.size(); ++n)
    if (indeg[n] == 0) ready.push_back(n);
  std::size_t seen = 0;
  while (!ready.empty()) {
    std::size_t n = ready.back();
    ready.pop_back();
    ++seen;
    for (std::size_t m : succ[n])
      if (--indeg[m] == 0) ready.push_back(m);
  }
  return seen == nodes.size();
}

Diagram diagram_of_term(const BordismTerm& t) {
  MorphismType ty = typecheck(t);
  Diagram d;
  d.dom = ty.dom;
  d.cod = ty.cod;
  std::vector<Source> inputs;
  for (std::size_t i = 0; i < ty.dom; ++i) inputs.push_back({Source::kBoundary, i});
  d.outputs = build(t, std::move(inputs), d);
  return d;
}

CanonicalDiagram canonicalize_diagram(const Diagram& d) {
  const std::size_t n = d.nodes.size();
  const Diagram::TargetIndex ti = d.targets();
  std::vector<std::size_t> id(n, kNone), order;
  order.reserve(n);

  std::deque<std::size_t> queue;
  auto seed = [&](std::size_t node) {
    if (node == kNone || id[node] != kNone) return;
    id[node] = order.size();
    order.push_back(node);
    queue.push_back(node);
  };
  for (const Target& t : ti.boundary) seed(t.is_boundary() ? kNone : t.node);
  for (const Source& s : d.outputs) seed(s.is_boundary() ? kNone : s.node);
  number_from(d, ti, queue, id, order);

  // Closed components: pick the start node with the smallest encoding.
  struct Closed {
    std::string code;
    std::vector<std::size_t> order;
  };
  std::vector<Closed> closed;
  std::vector<bool> claimed(n, false);
  for (std::size_t u = 0; u < n; ++u) {
    if (id[u] != kNone || claimed[u]) continue;
    std::vector<std::size_t> local(n, kNone), members;
    std::deque<std::size_t> q{u};
    local[u] = 0;
    members.push_back(u);
    number_from(d, ti, q, local, members);
    for (std::size_t m : members) claimed[m] = true;

    Closed best;
    bool have = false;
    for (std::size_t start : members) {
      std::vector<std::size_t> lid(n, kNone), lorder{start};
      lid[start] = 0;
      std::deque<std::size_t> lq{start};
      number_from(d, ti, lq, lid, lorder);
      std::string code = encode(d, lorder, lid);
      if (!have || code < best.code) {
        best = {std::move(code), std::move(lorder)};
        have = true;
      }
    }
    closed.push_back(std::move(best));
  }
  std::sort(closed.begin(), closed.end(),
            [](const Closed& a, const Closed& b) { return a.code < b.code; });
  for (const Closed& c : closed)
    for (std::size_t m : c.order) {
      id[m] = order.size();
      order.push_back(m);
    }

  CanonicalDiagram out;
  Diagram& r = out.diagram;
  r.dom = d.dom;
  r.cod = d.cod;
  auto remap = [&](const Source& s) {
    return s.is_boundary() ? s : Source{id[s.node], s.port};
  };
  for (std::size_t old : order) {
    DiagramNode node{d.nodes[old].gen, {}};
    for (const Source& s : d.nodes[old].inputs) node.inputs.push_back(remap(s));
    r.nodes.push_back(std::move(node));
  }
  for (const Source& s : d.outputs) r.outputs.push_back(remap(s));

  std::vector<std::size_t> ident(r.nodes.size());
  for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = i;
  out.key = std::to_string(r.dom) + ">" + std::to_string(r.cod) + "|" +
            encode(r, ident, ident) + "|";
  for (const Source& s : r.outputs)
    out.key += (s.is_boundary() ? "B" + std::to_string(s.port)
                                : std::to_string(s.node) + "." + std::to_string(s.port)) +
               ",";
  return out;
}

BordismTerm diagram_to_term(const Diagram& d) {
  std::vector<Source> frontier;
  for (std::size_t i = 0; i < d.dom; ++i) frontier.push_back({Source::kBoundary, i});
  std::vector<BordismTerm> layers;  // applied first to last
  std::vector<bool> done(d.nodes.size(), false);

  auto permute_to = [&](const std::vector<Source>& wanted) {
    // Input position i of the permutation goes to the slot of frontier[i].
    std::vector<std::size_t> perm(frontier.size());
    bool identity = true;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      auto it = std::find(wanted.begin(), wanted.end(), frontier[i]);
      perm[i] = static_cast<std::size_t>(it - wanted.begin());
      identity = identity && perm[i] == i;
    }
    if (!identity) layers.push_back(permutation_term(perm));
    frontier = wanted;
  };

  for (std::size_t placed = 0; placed < d.nodes.size(); ++placed) {
    std::size_t next = kNone;
    for (std::size_t n = 0; n < d.nodes.size() && next == kNone; ++n) {
      if (done[n]) continue;
      bool ready = true;
      for (const Source& s : d.nodes[n].inputs)
        ready = ready && std::find(frontier.begin(), frontier.end(), s) != frontier.end();
      if (ready) next = n;
    }
    if (next == kNone) throw std::logic_error("diagram_to_term: cyclic diagram");
    done[next] = true;
    const DiagramNode& node = d.nodes[next];
    std::vector<Source> wanted = node.inputs;
    for (const Source& s : frontier)
      if (std::find(node.inputs.begin(), node.inputs.end(), s) == node.inputs.end())
        wanted.push_back(s);
    permute_to(wanted);
    std::size_t rest = frontier.size() - node.inputs.size();
    BordismTerm g = BordismTerm::gen(node.gen);
    layers.push_back(rest == 0 ? g : BordismTerm::tensor(g, id_n(rest)));
    std::vector<Source> next_frontier;
    for (std::size_t k = 0; k < out_arity(node); ++k) next_frontier.push_back({next, k});
    next_frontier.insert(next_frontier.end(),
                         frontier.begin() + static_cast<std::ptrdiff_t>(node.inputs.size()),
                         frontier.end());
    frontier = std::move(next_frontier);
  }
  permute_to(d.outputs);
  if (layers.empty()) return id_n(d.dom);
  std::reverse(layers.begin(), layers.end());
  return compose_all(layers);
}

namespace {

bool labels_compatible(const Generator& pattern, const Generator& host,
                       std::map<std::string, PrimeLabel>& bindings) {
  if (pattern.kind() != host.kind()) return false;
  if (!pattern.is_prime()) return true;
  if (!pattern.label().is_metavariable()) return pattern.label() == host.label();
  auto [it, inserted] = bindings.emplace(pattern.label().str(), host.label());
  return inserted || it->second == host.label();
}

std::optional<Match> match_from(const Diagram& p, const Diagram::TargetIndex& pti,
                                const Diagram& h, const Diagram::TargetIndex& hti,
                                std::size_t anchor_host) {
  Match m;
  m.nodes.assign(p.nodes.size(), kNone);
  std::vector<bool> used(h.nodes.size(), false);
  std::vector<std::optional<Source>> in(p.dom);
  std::vector<std::optional<Target>> out(p.cod);
  std::vector<std::size_t> stack;

  auto assign = [&](std::size_t pn, std::size_t hn) {
    if (m.nodes[pn] != kNone) return m.nodes[pn] == hn;
    if (used[hn] || !labels_compatible(p.nodes[pn].gen, h.nodes[hn].gen, m.bindings))
      return false;
    m.nodes[pn] = hn;
    used[hn] = true;
    stack.push_back(pn);
    return true;
  };
  if (!assign(0, anchor_host)) return std::nullopt;
  while (!stack.empty()) {
    std::size_t pn = stack.back();
    stack.pop_back();
    std::size_t hn = m.nodes[pn];
    const auto& pin = p.nodes[pn].inputs;
    for (std::size_t k = 0; k < pin.size(); ++k) {
      const Source& hs = h.nodes[hn].inputs[k];
      if (pin[k].is_boundary()) {
        in[pin[k].port] = hs;
      } else if (hs.is_boundary() || hs.port != pin[k].port || !assign(pin[k].node, hs.node)) {
        return std::nullopt;
      }
    }
    for (std::size_t k = 0; k < pti.node[pn].size(); ++k) {
      const Target& pt = pti.node[pn][k];
      const Target& ht = hti.node[hn][k];
      if (pt.is_boundary()) {
        out[pt.port] = ht;
      } else if (ht.is_boundary() || ht.port != pt.port || !assign(pt.node, ht.node)) {
        return std::nullopt;
      }
    }
  }
  for (std::size_t pn = 0; pn < p.nodes.size(); ++pn)
    if (m.nodes[pn] == kNone) return std::nullopt;
  for (const auto& s : in) {
    if (!s || (!s->is_boundary() && used[s->node])) return std::nullopt;
    m.inputs.push_back(*s);
  }
  for (const auto& t : out) {
    if (!t || (!t->is_boundary() && used[t->node])) return std::nullopt;
    m.outputs.push_back(*t);
  }
  return m;
}

}  // namespace

std::vector<Match> find_matches(const Diagram& pattern, const Diagram& host) {
  std::vector<Match> result;
  if (pattern.nodes.empty()) {
    if (pattern.dom != 1 || pattern.cod != 1)
      throw std::invalid_argument("node-free patterns must be a single wire");
    for (std::size_t n = 0; n < host.nodes.size(); ++n)
      for (std::size_t k = 0; k < host.nodes[n].inputs.size(); ++k)
        result.push_back({{}, {host.nodes[n].inputs[k]}, {Target{n, k}}, {}});
    for (std::size_t j = 0; j < host.outputs.size(); ++j)
      result.push_back({{}, {host.outputs[j]}, {Target{Target::kBoundary, j}}, {}});
    return result;
  }
  for (const Source& s : pattern.outputs)
    if (s.is_boundary())
      throw std::invalid_argument("pattern has a wire from input to output");
  const auto pti = pattern.targets();
  const auto hti = host.targets();
  for (std::size_t h = 0; h < host.nodes.size(); ++h)
    if (auto m = match_from(pattern, pti, host, hti, h)) result.push_back(std::move(*m));
  return result;
}

std::optional<Diagram> replace_match(const Diagram& host, const Match& m,
                                     const Diagram& rep) {
  if (rep.dom != m.inputs.size() || rep.cod != m.outputs.size())
    throw std::invalid_argument("replacement arity differs from pattern");
  std::vector<bool> removed(host.nodes.size(), false);
  for (std::size_t hn : m.nodes) removed[hn] = true;
  std::vector<std::size_t> new_id(host.nodes.size(), kNone);
  Diagram out;
  out.dom = host.dom;
  out.cod = host.cod;
  for (std::size_t n = 0; n < host.nodes.size(); ++n)
    if (!removed[n]) {
      new_id[n] = out.nodes.size();
      out.nodes.push_back(host.nodes[n]);
    }
  auto host_src = [&](const Source& s) {
    return s.is_boundary() ? s : Source{new_id[s.node], s.port};
  };
  for (auto& node : out.nodes)
    for (auto& s : node.inputs) s = host_src(s);
  out.outputs.clear();
  for (const Source& s : host.outputs) out.outputs.push_back(host_src(s));

  const std::size_t base = out.nodes.size();
  auto rep_src = [&](const Source& s) {
    return s.is_boundary() ? host_src(m.inputs[s.port]) : Source{base + s.node, s.port};
  };
  for (const DiagramNode& rn : rep.nodes) {
    Generator g = rn.gen;
    if (g.is_prime() && g.label().is_metavariable()) {
      auto it = m.bindings.find(g.label().str());
      if (it == m.bindings.end()) return std::nullopt;
      g = Generator(g.kind(), it->second);
    }
    DiagramNode node{g, {}};
    for (const Source& s : rn.inputs) node.inputs.push_back(rep_src(s));
    out.nodes.push_back(std::move(node));
  }
  for (std::size_t j = 0; j < rep.cod; ++j) {
    const Target& t = m.outputs[j];
    Source src = rep_src(rep.outputs[j]);
    if (t.is_boundary())
      out.outputs[t.port] = src;
    else
      out.nodes[new_id[t.node]].inputs[t.port] = src;
  }
  for (const auto& node : out.nodes)
    for (const Source& s : node.inputs)
      if (!s.is_boundary() && s.node == kNone)
        throw std::logic_error("replace_match: dangling wire");
  for (const Source& s : out.outputs)
    if (!s.is_boundary() && s.node == kNone)
      throw std::logic_error("replace_match: dangling wire");
  if (!out.acyclic()) return std::nullopt;
  return out;
}

}  // namespace cob3
