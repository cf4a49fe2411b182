#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>

#include "cvsep/point.hpp"

namespace cvsep {

/// Exponent tuple of a monomial x_0^a_0 ... x_{n-1}^a_{n-1}.
struct Monomial {
  std::array<std::uint8_t, kMaxModes> exponents{};

  int degree() const;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Sparse real polynomial in n <= kMaxModes variables.
class Polynomial {
 public:
  explicit Polynomial(int n = 0) : n_(n) {}

  static Polynomial constant(int n, double value);

  int n() const noexcept { return n_; }
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, double>& terms() const noexcept { return terms_; }

  /// Adds `coefficient` to the monomial; exact zeros are dropped.
  void add(const Monomial& m, double coefficient);

  double evaluate(PointView x) const;

  Polynomial derivative(int axis) const;
  /// Multiplies by x_axis.
  Polynomial times_coordinate(int axis) const;
  /// Multiplies by c0 + sum_i c[i] x_i.
  Polynomial times_linear(double c0, std::span<const double> c) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator*=(double s);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  int n_;
  std::map<Monomial, double> terms_;
};

}  // namespace cvsep
