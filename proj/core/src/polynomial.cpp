#include "cvsep/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "cvsep/error.hpp"

namespace cvsep {

int Monomial::degree() const {
  int d = 0;
  for (auto e : exponents) d += e;
  return d;
}

Polynomial Polynomial::constant(int n, double value) {
  Polynomial p(n);
  p.add(Monomial{}, value);
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void Polynomial::add(const Monomial& m, double coefficient) {
  if (coefficient == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(m, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial::evaluate(PointView x) const {
  if (static_cast<int>(x.size()) != n_) {
    throw Error(ErrorKind::kInvalidArgument, "polynomial evaluated at point of wrong dimension");
  }
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double v = c;
    for (int i = 0; i < n_; ++i) {
      for (int e = 0; e < m.exponents[static_cast<std::size_t>(i)]; ++e) v *= x[static_cast<std::size_t>(i)];
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::derivative(int axis) const {
  Polynomial out(n_);
  const auto a = static_cast<std::size_t>(axis);
  for (const auto& [m, c] : terms_) {
    if (m.exponents[a] == 0) continue;
    Monomial d = m;
    --d.exponents[a];
    out.add(d, c * m.exponents[a]);
  }
  return out;
}

Polynomial Polynomial::times_coordinate(int axis) const {
  Polynomial out(n_);
  for (const auto& [m, c] : terms_) {
    Monomial d = m;
    ++d.exponents[static_cast<std::size_t>(axis)];
    out.add(d, c);
  }
  return out;
}

Polynomial Polynomial::times_linear(double c0, std::span<const double> c) const {
  Polynomial out(n_);
  for (const auto& [m, coeff] : terms_) {
    out.add(m, coeff * c0);
    for (int i = 0; i < n_; ++i) {
      if (c[static_cast<std::size_t>(i)] == 0.0) continue;
      Monomial d = m;
      ++d.exponents[static_cast<std::size_t>(i)];
      out.add(d, coeff * c[static_cast<std::size_t>(i)]);
    }
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add(m, c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out(std::max(a.n_, b.n_));
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m;
      for (std::size_t i = 0; i < kMaxModes; ++i) {
        m.exponents[i] = static_cast<std::uint8_t>(ma.exponents[i] + mb.exponents[i]);
      }
      out.add(m, ca * cb);
    }
  }
  return out;
}

}  // namespace cvsep
