#include "cob3/term.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "cob3/errors.hpp"

namespace cob3 {

bool PrimeLabel::valid_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' ||
         c == '+' || c == '-' || c == '~';
}

PrimeLabel::PrimeLabel(std::string name, bool allow_metavariable)
    : name_(std::move(name)) {
  std::string_view body = name_;
  if (allow_metavariable && !body.empty() && body[0] == '?')
    body.remove_prefix(1);
  if (body.empty()) throw std::invalid_argument("empty prime label");
  for (char c : body)
    if (!valid_char(c))
      throw std::invalid_argument("invalid character in prime label '" +
                                  name_ + "'");
}

Generator::Generator(GenKind kind, PrimeLabel label)
    : kind_(kind), label_(std::move(label)) {
  if (!is_prime())
    throw std::invalid_argument("only pe/pu generators carry a label");
}

MorphismType Generator::type() const {
  switch (kind_) {
    case GenKind::Id: return {1, 1};
    case GenKind::Mul: return {2, 1};
    case GenKind::Unit: return {0, 1};
    case GenKind::Comul: return {1, 2};
    case GenKind::Counit: return {1, 0};
    case GenKind::Swap: return {2, 2};
    case GenKind::Empty: return {0, 0};
    case GenKind::PrimeEndo: return {1, 1};
    case GenKind::PrimeUnit: return {0, 1};
  }
  return {};
}

std::string_view generator_keyword(GenKind k) {
  switch (k) {
    case GenKind::Id: return "id";
    case GenKind::Mul: return "m";
    case GenKind::Unit: return "unit";
    case GenKind::Comul: return "comul";
    case GenKind::Counit: return "tr";
    case GenKind::Swap: return "swap";
    case GenKind::Empty: return "empty";
    case GenKind::PrimeEndo: return "pe";
    case GenKind::PrimeUnit: return "pu";
  }
  return "?";
}

struct BordismTerm::Impl {
  Node node;
  Generator gen{GenKind::Id};
  std::vector<BordismTerm> children;
  std::size_t size = 1;
};

BordismTerm::Node BordismTerm::node() const { return impl_->node; }

BordismTerm BordismTerm::gen(Generator g) {
  auto impl = std::make_shared<Impl>();
  impl->node = Node::Gen;
  impl->gen = std::move(g);
  return BordismTerm(std::move(impl));
}

BordismTerm BordismTerm::compose(BordismTerm after, BordismTerm before) {
  auto impl = std::make_shared<Impl>();
  impl->node = Node::Compose;
  impl->size = 1 + after.size() + before.size();
  impl->children = {std::move(after), std::move(before)};
  return BordismTerm(std::move(impl));
}

BordismTerm BordismTerm::tensor(BordismTerm left, BordismTerm right) {
  auto impl = std::make_shared<Impl>();
  impl->node = Node::Tensor;
  impl->size = 1 + left.size() + right.size();
  impl->children = {std::move(left), std::move(right)};
  return BordismTerm(std::move(impl));
}

const Generator& BordismTerm::generator() const {
  if (!is_gen()) throw std::logic_error("not a generator node");
  return impl_->gen;
}

const BordismTerm& BordismTerm::left() const {
  if (is_gen()) throw std::logic_error("generator has no children");
  return impl_->children[0];
}

const BordismTerm& BordismTerm::right() const {
  if (is_gen()) throw std::logic_error("generator has no children");
  return impl_->children[1];
}

std::size_t BordismTerm::size() const { return impl_->size; }

bool operator==(const BordismTerm& a, const BordismTerm& b) {
  if (a.impl_ == b.impl_) return true;
  if (a.node() != b.node() || a.size() != b.size()) return false;
  if (a.is_gen()) return a.generator() == b.generator();
  return a.left() == b.left() && a.right() == b.right();
}

namespace {

class Parser {
 public:
  Parser(std::string_view src, ParseOptions opts) : src_(src), opts_(opts) {}

  BordismTerm parse_all() {
    skip_ws();
    BordismTerm t = parse_compose();
    skip_ws();
    if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return t;
  }

 private:
  // compose := tensor ("." compose)?
  BordismTerm parse_compose() {
    BordismTerm lhs = parse_tensor();
    skip_ws();
    if (peek('.')) {
      ++pos_;
      return BordismTerm::compose(std::move(lhs), parse_compose());
    }
    return lhs;
  }

  // tensor := primary ("*" primary)*
  BordismTerm parse_tensor() {
    BordismTerm acc = parse_primary();
    for (;;) {
      skip_ws();
      if (!peek('*')) return acc;
      ++pos_;
      acc = BordismTerm::tensor(std::move(acc), parse_primary());
    }
  }

  BordismTerm parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    if (peek('(')) {
      ++pos_;
      BordismTerm inner = parse_compose();
      skip_ws();
      expect(')');
      return inner;
    }
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           std::isalpha(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    std::string_view word = src_.substr(start, pos_ - start);
    if (word.empty()) fail("expected a generator or '('");
    static constexpr GenKind plain[] = {GenKind::Id,    GenKind::Mul,
                                        GenKind::Unit,  GenKind::Comul,
                                        GenKind::Counit, GenKind::Swap,
                                        GenKind::Empty};
    for (GenKind k : plain)
      if (word == generator_keyword(k)) return BordismTerm::gen(k);
    if (word == "pe" || word == "pu") {
      GenKind k = word == "pe" ? GenKind::PrimeEndo : GenKind::PrimeUnit;
      skip_ws();
      expect('(');
      skip_ws();
      std::size_t lstart = pos_;
      if (opts_.allow_metavariables && peek('?')) ++pos_;
      while (pos_ < src_.size() && PrimeLabel::valid_char(src_[pos_])) ++pos_;
      std::string label(src_.substr(lstart, pos_ - lstart));
      if (label.empty() || label == "?") fail("expected a prime label", lstart);
      skip_ws();
      expect(')');
      return BordismTerm::gen(
          Generator(k, PrimeLabel(std::move(label), opts_.allow_metavariables)));
    }
    fail("unknown generator '" + std::string(word) + "'", start);
  }

  bool peek(char c) const { return pos_ < src_.size() && src_[pos_] == c; }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SyntaxError(msg, line, col);
  }

  std::string_view src_;
  ParseOptions opts_;
  std::size_t pos_ = 0;
};

void print_into(const BordismTerm& t, std::string& out) {
  if (t.is_gen()) {
    const Generator& g = t.generator();
    out += generator_keyword(g.kind());
    if (g.is_prime()) {
      out += '(';
      out += g.label().str();
      out += ')';
    }
    return;
  }
  out += '(';
  print_into(t.left(), out);
  out += t.node() == BordismTerm::Node::Compose ? " . " : " * ";
  print_into(t.right(), out);
  out += ')';
}

void collect_labels(const BordismTerm& t, std::vector<PrimeLabel>& out) {
  if (t.is_gen()) {
    if (t.generator().is_prime()) out.push_back(t.generator().label());
    return;
  }
  collect_labels(t.left(), out);
  collect_labels(t.right(), out);
}

std::string type_str(MorphismType m) {
  return std::to_string(m.dom) + "->" + std::to_string(m.cod);
}

}  // namespace

BordismTerm parse(std::string_view src, ParseOptions opts) {
  return Parser(src, opts).parse_all();
}

std::string print(const BordismTerm& t) {
  std::string out;
  print_into(t, out);
  return out;
}

MorphismType typecheck(const BordismTerm& t) {
  switch (t.node()) {
    case BordismTerm::Node::Gen:
      return t.generator().type();
    case BordismTerm::Node::Tensor: {
      MorphismType a = typecheck(t.left()), b = typecheck(t.right());
      return {a.dom + b.dom, a.cod + b.cod};
    }
    case BordismTerm::Node::Compose: {
      MorphismType after = typecheck(t.left()), before = typecheck(t.right());
      if (before.cod != after.dom)
        throw TypeError("cannot compose " + print(t.left()) + " : " +
                        type_str(after) + " after " + print(t.right()) +
                        " : " + type_str(before) + " in " + print(t));
      return {before.dom, after.cod};
    }
  }
  return {};
}

BordismTerm id_n(std::size_t n) {
  if (n == 0) return BordismTerm::gen(GenKind::Empty);
  BordismTerm acc = BordismTerm::gen(GenKind::Id);
  for (std::size_t i = 1; i < n; ++i)
    acc = BordismTerm::tensor(BordismTerm::gen(GenKind::Id), std::move(acc));
  return acc;
}

BordismTerm tensor_all(std::span<const BordismTerm> parts) {
  if (parts.empty()) return BordismTerm::gen(GenKind::Empty);
  BordismTerm acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i)
    acc = BordismTerm::tensor(std::move(acc), parts[i]);
  return acc;
}

BordismTerm compose_all(std::span<const BordismTerm> parts) {
  if (parts.empty()) throw std::invalid_argument("compose_all of nothing");
  BordismTerm acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;)
    acc = BordismTerm::compose(parts[i], std::move(acc));
  return acc;
}

BordismTerm permutation_term(std::span<const std::size_t> perm) {
  const std::size_t n = perm.size();
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    if (p >= n || seen[p])
      throw std::invalid_argument("permutation_term: not a bijection");
    seen[p] = true;
  }
  // Bubble the wires into place. `at[k]` is the output slot wanted by the
  // wire currently at position k; each adjacent swap is one layer.
  std::vector<std::size_t> at(perm.begin(), perm.end());
  std::vector<BordismTerm> layers;  // applied first to last
  for (std::size_t pass = 0; pass < n; ++pass) {
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (at[k] <= at[k + 1]) continue;
      std::swap(at[k], at[k + 1]);
      std::vector<BordismTerm> parts;
      if (k > 0) parts.push_back(id_n(k));
      parts.push_back(BordismTerm::gen(GenKind::Swap));
      if (k + 2 < n) parts.push_back(id_n(n - k - 2));
      layers.push_back(tensor_all(parts));
    }
  }
  if (layers.empty()) return id_n(n);
  std::reverse(layers.begin(), layers.end());
  return compose_all(layers);
}

std::vector<PrimeLabel> prime_labels(const BordismTerm& t) {
  std::vector<PrimeLabel> out;
  collect_labels(t, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace cob3
