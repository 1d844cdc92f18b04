#include "cob3/rational.hpp"

#include <stdexcept>

#include "cob3/errors.hpp"

namespace cob3 {

Rational parse_rational(std::string_view s) {
  auto valid_int = [](std::string_view t) {
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("not a rational: '" + std::string(s) + "'");
  if (num[0] == '+') num.remove_prefix(1);
  mpz_class n(std::string(num), 10), dd(std::string(den), 10);
  if (dd == 0) throw std::invalid_argument("zero denominator: '" + std::string(s) + "'");
  Rational q(n, dd);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.dump(), 10);
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected an integer or \"num/den\" string, got " +
                              j.dump());
}

nlohmann::json rational_to_json(const Rational& q) { return to_string(q); }

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

Vector basis_vector(std::size_t n, std::size_t i) {
  Vector v(n, Rational(0));
  v.at(i) = 1;
  return v;
}

LinearMap::LinearMap(std::size_t d, std::size_t dom_arity, std::size_t cod_arity)
    : d_(d),
      dom_arity_(dom_arity),
      cod_arity_(cod_arity),
      rows_(ipow(d, cod_arity)),
      cols_(ipow(d, dom_arity)),
      entries_(rows_ * cols_, Rational(0)) {}

LinearMap LinearMap::identity(std::size_t d, std::size_t arity) {
  LinearMap m(d, arity, arity);
  for (std::size_t i = 0; i < m.rows_; ++i) m.at(i, i) = 1;
  return m;
}

LinearMap LinearMap::square(std::size_t d, const std::vector<Vector>& rows) {
  if (rows.size() != d) throw ShapeError("square matrix: wrong row count");
  LinearMap m(d, 1, 1);
  for (std::size_t r = 0; r < d; ++r) {
    if (rows[r].size() != d) throw ShapeError("square matrix: wrong row length");
    for (std::size_t c = 0; c < d; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

LinearMap LinearMap::after(const LinearMap& before) const {
  if (d_ != before.d_ || dom_arity_ != before.cod_arity_)
    throw ShapeError("LinearMap::after: shape mismatch");
  LinearMap out(d_, before.dom_arity_, cod_arity_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = at(r, k);
      if (sgn(a) == 0) continue;
      for (std::size_t c = 0; c < before.cols_; ++c) {
        const Rational& b = before.at(k, c);
        if (sgn(b) != 0) out.at(r, c) += a * b;
      }
    }
  }
  return out;
}

LinearMap LinearMap::kron(const LinearMap& right) const {
  if (d_ != right.d_) throw ShapeError("LinearMap::kron: dimension mismatch");
  LinearMap out(d_, dom_arity_ + right.dom_arity_, cod_arity_ + right.cod_arity_);
  for (std::size_t r1 = 0; r1 < rows_; ++r1)
    for (std::size_t c1 = 0; c1 < cols_; ++c1) {
      const Rational& a = at(r1, c1);
      if (sgn(a) == 0) continue;
      for (std::size_t r2 = 0; r2 < right.rows_; ++r2)
        for (std::size_t c2 = 0; c2 < right.cols_; ++c2) {
          const Rational& b = right.at(r2, c2);
          if (sgn(b) != 0)
            out.at(r1 * right.rows_ + r2, c1 * right.cols_ + c2) = a * b;
        }
    }
  return out;
}

Vector LinearMap::apply(const Vector& v) const {
  if (v.size() != cols_) throw ShapeError("LinearMap::apply: length mismatch");
  Vector out(rows_, Rational(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += at(r, c) * v[c];
  return out;
}

Rational LinearMap::scalar() const {
  if (rows_ != 1 || cols_ != 1) throw ShapeError("LinearMap::scalar: not 1x1");
  return entries_[0];
}

nlohmann::json linear_map_to_json(const LinearMap& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"dom_arity", m.dom_arity()},
          {"cod_arity", m.cod_arity()},
          {"d", m.d()},
          {"entries", rows}};
}

LinearMap linear_map_from_json(const nlohmann::json& j) {
  LinearMap m(j.at("d").get<std::size_t>(), j.at("dom_arity").get<std::size_t>(),
              j.at("cod_arity").get<std::size_t>());
  const auto& rows = j.at("entries");
  if (rows.size() != m.rows()) throw ShapeError("linear map json: row count");
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (rows[r].size() != m.cols()) throw ShapeError("linear map json: row length");
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = rational_from_json(rows[r][c]);
  }
  return m;
}

std::vector<Vector> invert(std::vector<Vector> a) {
  const std::size_t n = a.size();
  std::vector<Vector> inv(n, Vector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == n) return {};
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= p;
      inv[col][c] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      Rational f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

}  // namespace cob3
