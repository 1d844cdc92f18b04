#include "cob3/frobenius.hpp"

#include <sstream>
#include <stdexcept>

namespace cob3 {

namespace {

using Idx = std::size_t;

void check_shapes(const FrobeniusAlgebraSpec& s) {
  if (s.dim == 0) throw ShapeError("algebra dimension must be positive");
  if (s.mul.dim() != s.dim) throw ShapeError("mul tensor has wrong dimension");
  if (s.unit.size() != s.dim) throw ShapeError("unit vector has wrong length");
  if (s.trace.size() != s.dim) throw ShapeError("trace covector has wrong length");
  if (s.comul && s.comul->dim() != s.dim)
    throw ShapeError("comul tensor has wrong dimension");
}

// Records the first counterexample, if any.
class Checker {
 public:
  explicit Checker(std::string name) { c_.name = std::move(name); }
  void expect(bool ok, std::vector<Idx> where) {
    if (ok || !c_.pass) return;
    c_.pass = false;
    c_.witness = std::move(where);
  }
  void missing(const std::string& why) {
    c_.pass = false;
    c_.detail = why;
  }
  AxiomCheck done() { return std::move(c_); }

 private:
  AxiomCheck c_;
};

Rational delta(Idx a, Idx b) { return Rational(a == b ? 1 : 0); }

}  // namespace

bool AxiomReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const AxiomCheck& AxiomReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no axiom check named " + name);
}

std::string AxiomReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.witness.empty()) {
      os << " at (";
      for (std::size_t i = 0; i < c.witness.size(); ++i)
        os << (i ? "," : "") << c.witness[i];
      os << ")";
    }
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  return os.str();
}

nlohmann::json AxiomReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e = {{"name", c.name}, {"pass", c.pass}};
    if (!c.witness.empty()) e["witness"] = c.witness;
    if (!c.detail.empty()) e["detail"] = c.detail;
    arr.push_back(std::move(e));
  }
  return {{"all_pass", all_pass()}, {"checks", arr}};
}

AxiomReport verify_cf(const FrobeniusAlgebraSpec& s) {
  check_shapes(s);
  const Idx d = s.dim;
  const Tensor3& m = s.mul;
  AxiomReport report;

  {
    Checker c("commutativity");
    for (Idx k = 0; k < d; ++k)
      for (Idx i = 0; i < d; ++i)
        for (Idx j = 0; j < d; ++j) c.expect(m(k, i, j) == m(k, j, i), {k, i, j});
    report.checks.push_back(c.done());
  }
  {
    Checker c("associativity");
    for (Idx i = 0; i < d; ++i)
      for (Idx j = 0; j < d; ++j)
        for (Idx l = 0; l < d; ++l)
          for (Idx k = 0; k < d; ++k) {
            Rational lhs = 0, rhs = 0;
            for (Idx a = 0; a < d; ++a) {
              lhs += m(a, i, j) * m(k, a, l);
              rhs += m(a, j, l) * m(k, i, a);
            }
            c.expect(lhs == rhs, {i, j, l});
          }
    report.checks.push_back(c.done());
  }
  {
    Checker c("unit");
    for (Idx k = 0; k < d; ++k)
      for (Idx j = 0; j < d; ++j) {
        Rational left = 0, right = 0;
        for (Idx a = 0; a < d; ++a) {
          left += s.unit[a] * m(k, a, j);
          right += s.unit[a] * m(k, j, a);
        }
        c.expect(left == delta(k, j) && right == delta(k, j), {k, j});
      }
    report.checks.push_back(c.done());
  }

  Checker coassoc("coassociativity"), cocomm("cocommutativity"),
      counit("counit"), frob("frobenius");
  if (!s.comul) {
    for (Checker* c : {&coassoc, &cocomm, &counit, &frob})
      c->missing("comultiplication absent");
  } else {
    const Tensor3& w = *s.comul;
    for (Idx k = 0; k < d; ++k)
      for (Idx i = 0; i < d; ++i)
        for (Idx j = 0; j < d; ++j)
          for (Idx l = 0; l < d; ++l) {
            // (comul (x) id) comul  vs  (id (x) comul) comul  on e_k
            Rational lhs = 0, rhs = 0;
            for (Idx a = 0; a < d; ++a) {
              lhs += w(a, l, k) * w(i, j, a);
              rhs += w(i, a, k) * w(j, l, a);
            }
            coassoc.expect(lhs == rhs, {i, j, l});
          }
    for (Idx i = 0; i < d; ++i)
      for (Idx j = 0; j < d; ++j)
        for (Idx k = 0; k < d; ++k) cocomm.expect(w(i, j, k) == w(j, i, k), {i, j, k});
    for (Idx j = 0; j < d; ++j)
      for (Idx k = 0; k < d; ++k) {
        Rational left = 0, right = 0;
        for (Idx a = 0; a < d; ++a) {
          left += s.trace[a] * w(a, j, k);
          right += s.trace[a] * w(j, a, k);
        }
        counit.expect(left == delta(j, k) && right == delta(j, k), {j, k});
      }
    // (m (x) id)(id (x) comul) == comul m, on e_i (x) e_j, coefficient of
    // e_r (x) e_b.
    for (Idx i = 0; i < d; ++i)
      for (Idx j = 0; j < d; ++j)
        for (Idx r = 0; r < d; ++r)
          for (Idx b = 0; b < d; ++b) {
            Rational lhs = 0, rhs = 0;
            for (Idx a = 0; a < d; ++a) {
              lhs += w(a, b, j) * m(r, i, a);
              rhs += m(a, i, j) * w(r, b, a);
            }
            frob.expect(lhs == rhs, {i, j, r});
          }
  }
  report.checks.push_back(coassoc.done());
  report.checks.push_back(cocomm.done());
  report.checks.push_back(counit.done());
  report.checks.push_back(frob.done());
  return report;
}

FrobeniusAlgebraSpec derive_comul(FrobeniusAlgebraSpec s) {
  check_shapes(s);
  const Idx d = s.dim;
  std::vector<Vector> pairing(d, Vector(d, Rational(0)));
  for (Idx i = 0; i < d; ++i)
    for (Idx j = 0; j < d; ++j)
      for (Idx k = 0; k < d; ++k) pairing[i][j] += s.trace[k] * s.mul(k, i, j);
  std::vector<Vector> inv = invert(pairing);
  if (inv.empty()) throw DegeneratePairing("pairing tr(ab) is singular");
  // comul(a) = sum_{i,j} (a e_i) (x) inv[i][j] e_j
  Tensor3 w(d);
  for (Idx r = 0; r < d; ++r)
    for (Idx j = 0; j < d; ++j)
      for (Idx k = 0; k < d; ++k)
        for (Idx i = 0; i < d; ++i) w(r, j, k) += s.mul(r, k, i) * inv[i][j];
  s.comul = std::move(w);
  return s;
}

LAlgebra LAlgebra::create(FrobeniusAlgebraSpec spec,
                          std::map<PrimeLabel, Vector> prime_units) {
  check_shapes(spec);
  if (!spec.comul) spec = derive_comul(std::move(spec));
  AxiomReport r = verify_cf(spec);
  if (!r.all_pass()) throw AlgebraVerificationError(std::move(r));
  for (const auto& [p, v] : prime_units)
    if (v.size() != spec.dim)
      throw ShapeError("prime unit for '" + p.str() + "' has wrong length");
  return LAlgebra(std::move(spec), std::move(prime_units));
}

const Vector& LAlgebra::prime_unit(const PrimeLabel& p) const {
  auto it = primes_.find(p);
  if (it == primes_.end()) throw UnknownPrime(p.str());
  return it->second;
}

Vector LAlgebra::multiply(const Vector& a, const Vector& b) const {
  const Idx d = spec_.dim;
  Vector out(d, Rational(0));
  for (Idx i = 0; i < d; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (Idx j = 0; j < d; ++j) {
      if (sgn(b[j]) == 0) continue;
      for (Idx k = 0; k < d; ++k) out[k] += spec_.mul(k, i, j) * a[i] * b[j];
    }
  }
  return out;
}

Rational LAlgebra::trace(const Vector& a) const {
  Rational t = 0;
  for (Idx i = 0; i < spec_.dim; ++i) t += spec_.trace[i] * a[i];
  return t;
}

LinearMap multiplication_matrix(const FrobeniusAlgebraSpec& s, const Vector& x) {
  if (x.size() != s.dim) throw ShapeError("multiplier has wrong length");
  LinearMap out(s.dim, 1, 1);
  for (Idx k = 0; k < s.dim; ++k)
    for (Idx j = 0; j < s.dim; ++j)
      for (Idx i = 0; i < s.dim; ++i) out.at(k, j) += s.mul(k, i, j) * x[i];
  return out;
}

LinearMap prime_endo_matrix(const LAlgebra& alg, const PrimeLabel& p) {
  return multiplication_matrix(alg.algebra(), alg.prime_unit(p));
}

bool verify_legs(const FrobeniusAlgebraSpec& s, const LinearMap& endo) {
  if (endo.d() != s.dim || endo.dom_arity() != 1 || endo.cod_arity() != 1)
    throw ShapeError("verify_legs: endomorphism shape does not match algebra");
  const Idx d = s.dim;
  for (Idx i = 0; i < d; ++i)
    for (Idx j = 0; j < d; ++j)
      for (Idx k = 0; k < d; ++k) {
        Rational lhs = 0, rhs = 0;
        for (Idx a = 0; a < d; ++a) {
          lhs += endo.at(a, i) * s.mul(k, a, j);
          rhs += endo.at(a, j) * s.mul(k, i, a);
        }
        if (lhs != rhs) return false;
      }
  return true;
}

bool verify_decomposition(const FrobeniusAlgebraSpec& s,
                          const IdempotentDecomposition& dec) {
  const Idx d = s.dim;
  auto mult = [&](const Vector& a, const Vector& b) {
    Vector out(d, Rational(0));
    for (Idx i = 0; i < d; ++i)
      for (Idx j = 0; j < d; ++j)
        for (Idx k = 0; k < d; ++k) out[k] += s.mul(k, i, j) * a[i] * b[j];
    return out;
  };
  Vector sum(d, Rational(0));
  const Vector zero(d, Rational(0));
  for (std::size_t a = 0; a < dec.idempotents.size(); ++a) {
    const Vector& pa = dec.idempotents[a];
    if (pa.size() != d || pa == zero) return false;
    for (Idx k = 0; k < d; ++k) sum[k] += pa[k];
    for (std::size_t b = 0; b < dec.idempotents.size(); ++b) {
      Vector prod = mult(pa, dec.idempotents[b]);
      if (prod != (a == b ? pa : zero)) return false;
    }
  }
  return sum == s.unit;
}

Rational block_scalar(const FrobeniusAlgebraSpec& s, const Vector& pi,
                      const LinearMap& op, std::size_t block,
                      const std::string& what) {
  LinearMap proj = multiplication_matrix(s, pi);
  std::optional<Rational> scalar;
  for (Idx i = 0; i < s.dim; ++i) {
    Vector v = proj.apply(basis_vector(s.dim, i));
    Vector w = op.apply(v);
    Idx nz = 0;
    while (nz < s.dim && sgn(v[nz]) == 0) ++nz;
    if (nz == s.dim) {
      if (w != v) throw NotScalarOnBlock(block, what);
      continue;
    }
    Rational c = w[nz] / v[nz];
    if (scalar && *scalar != c) throw NotScalarOnBlock(block, what);
    scalar = c;
    for (Idx k = 0; k < s.dim; ++k)
      if (w[k] != c * v[k]) throw NotScalarOnBlock(block, what);
  }
  if (!scalar) throw NotScalarOnBlock(block, what);
  return *scalar;
}

CharacterTable characters(const LAlgebra& alg, const IdempotentDecomposition& dec) {
  if (!verify_decomposition(alg.algebra(), dec))
    throw std::invalid_argument("idempotent decomposition does not verify");
  CharacterTable t;
  for (const auto& [p, v] : alg.prime_units()) t.primes.push_back(p);
  for (std::size_t l = 0; l < dec.idempotents.size(); ++l) {
    std::vector<Rational> row;
    for (const auto& p : t.primes)
      row.push_back(block_scalar(alg.algebra(), dec.idempotents[l],
                                 prime_endo_matrix(alg, p), l, "1_" + p.str()));
    t.values.push_back(std::move(row));
  }
  return t;
}

namespace {

nlohmann::json tensor_to_json(const Tensor3& t) {
  nlohmann::json out = nlohmann::json::array();
  for (Idx a = 0; a < t.dim(); ++a) {
    nlohmann::json plane = nlohmann::json::array();
    for (Idx b = 0; b < t.dim(); ++b) {
      nlohmann::json row = nlohmann::json::array();
      for (Idx c = 0; c < t.dim(); ++c) row.push_back(to_string(t(a, b, c)));
      plane.push_back(std::move(row));
    }
    out.push_back(std::move(plane));
  }
  return out;
}

nlohmann::json vector_to_json(const Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

Vector vector_from_json(const nlohmann::json& j, Idx d, const std::string& what) {
  if (!j.is_array() || j.size() != d) throw ShapeError(what + ": expected length " + std::to_string(d));
  Vector v;
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

Tensor3 tensor_from_json(const nlohmann::json& j, Idx d, const std::string& what) {
  if (!j.is_array() || j.size() != d) throw ShapeError(what + ": wrong outer size");
  Tensor3 t(d);
  for (Idx a = 0; a < d; ++a) {
    if (!j[a].is_array() || j[a].size() != d) throw ShapeError(what + ": wrong plane size");
    for (Idx b = 0; b < d; ++b) {
      if (!j[a][b].is_array() || j[a][b].size() != d)
        throw ShapeError(what + ": wrong row size");
      for (Idx c = 0; c < d; ++c) t(a, b, c) = rational_from_json(j[a][b][c]);
    }
  }
  return t;
}

}  // namespace

nlohmann::json algebra_to_json(const FrobeniusAlgebraSpec& s,
                               const std::map<PrimeLabel, Vector>& primes) {
  nlohmann::json j = {{"dim", s.dim},
                      {"mul", tensor_to_json(s.mul)},
                      {"unit", vector_to_json(s.unit)},
                      {"trace", vector_to_json(s.trace)}};
  if (s.comul) j["comul"] = tensor_to_json(*s.comul);
  nlohmann::json p = nlohmann::json::object();
  for (const auto& [label, v] : primes) p[label.str()] = vector_to_json(v);
  j["primes"] = std::move(p);
  return j;
}

ParsedAlgebra algebra_from_json(const nlohmann::json& j) {
  ParsedAlgebra out;
  auto& s = out.spec;
  if (!j.is_object()) throw ShapeError("algebra json: expected an object");
  auto field = [&](const char* name) -> const nlohmann::json& {
    if (!j.contains(name)) throw ShapeError(std::string("algebra json: missing '") + name + "'");
    return j[name];
  };
  if (!field("dim").is_number_integer() || field("dim").get<long long>() <= 0)
    throw ShapeError("algebra json: 'dim' must be a positive integer");
  s.dim = j["dim"].get<Idx>();
  s.mul = tensor_from_json(field("mul"), s.dim, "mul");
  s.unit = vector_from_json(field("unit"), s.dim, "unit");
  s.trace = vector_from_json(field("trace"), s.dim, "trace");
  if (j.contains("comul") && !j["comul"].is_null())
    s.comul = tensor_from_json(j["comul"], s.dim, "comul");
  if (j.contains("primes"))
    for (const auto& [label, v] : j["primes"].items())
      out.primes.emplace(PrimeLabel(label), vector_from_json(v, s.dim, "primes." + label));
  return out;
}

IdempotentDecomposition decomposition_from_json(const nlohmann::json& j) {
  const nlohmann::json& arr = j.is_object() ? j.at("idempotents") : j;
  if (!arr.is_array()) throw ShapeError("idempotents: expected an array");
  IdempotentDecomposition dec;
  for (const auto& v : arr) {
    if (!v.is_array()) throw ShapeError("idempotents: expected vectors");
    Vector x;
    for (const auto& e : v) x.push_back(rational_from_json(e));
    dec.idempotents.push_back(std::move(x));
  }
  return dec;
}

}  // namespace cob3
