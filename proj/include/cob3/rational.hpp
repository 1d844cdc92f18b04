#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace cob3 {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

/// Accepts "n", "-n", "n/d". Throws std::invalid_argument (also for d = 0).
Rational parse_rational(std::string_view s);
/// Canonical "n" or "n/d".
std::string to_string(const Rational& q);

/// JSON integers or "num/den" strings.
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json rational_to_json(const Rational& q);

/// Dense exact matrix from the d^dom_arity space to the d^cod_arity space.
/// Tensor indices are flattened big-endian: the leftmost factor is the most
/// significant digit.
class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(std::size_t d, std::size_t dom_arity, std::size_t cod_arity);

  static LinearMap identity(std::size_t d, std::size_t arity);
  /// d x d matrix from row-major entries.
  static LinearMap square(std::size_t d, const std::vector<Vector>& rows);

  std::size_t d() const { return d_; }
  std::size_t dom_arity() const { return dom_arity_; }
  std::size_t cod_arity() const { return cod_arity_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  /// this after `before`. Throws ShapeError on mismatch.
  LinearMap after(const LinearMap& before) const;
  /// Kronecker product, this on the left factors.
  LinearMap kron(const LinearMap& right) const;

  Vector apply(const Vector& v) const;
  /// 1x1 maps only.
  Rational scalar() const;

  bool operator==(const LinearMap&) const = default;

 private:
  std::size_t d_ = 1;
  std::size_t dom_arity_ = 0;
  std::size_t cod_arity_ = 0;
  std::size_t rows_ = 1;
  std::size_t cols_ = 1;
  std::vector<Rational> entries_{Rational(0)};
};

std::size_t ipow(std::size_t base, std::size_t exp);

/// Basis vector e_i of Q^n.
Vector basis_vector(std::size_t n, std::size_t i);

/// {dom_arity, cod_arity, d, entries:[[...]]} with rational strings.
nlohmann::json linear_map_to_json(const LinearMap& m);
LinearMap linear_map_from_json(const nlohmann::json& j);

/// Inverse of a square matrix given as rows; empty result if singular.
std::vector<Vector> invert(std::vector<Vector> a);

}  // namespace cob3
