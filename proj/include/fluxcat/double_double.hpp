#pragma once

#include <cmath>

namespace fluxcat::dd {

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2, about 32 significant digits.
struct Real {
  double hi = 0.0;
  double lo = 0.0;

  Real() = default;
  Real(double v) : hi(v) {}  // NOLINT(google-explicit-constructor)
  Real(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

inline Real two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline Real quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline Real two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline Real operator+(Real a, Real b) {
  Real s = two_sum(a.hi, b.hi);
  Real t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline Real operator-(Real a) { return {-a.hi, -a.lo}; }
inline Real operator-(Real a, Real b) { return a + (-b); }

inline Real operator*(Real a, Real b) {
  Real p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline Real operator/(Real a, Real b) {
  const double q1 = a.hi / b.hi;
  Real r = a - b * Real(q1);
  const double q2 = r.hi / b.hi;
  r = r - b * Real(q2);
  const double q3 = r.hi / b.hi;
  return Real(q1) + Real(q2) + Real(q3);
}

/// Complex number over double-double components.
struct Complex {
  Real re;
  Real im;
};

inline Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
inline Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
inline Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex operator/(const Complex& a, const Complex& b) {
  const Real den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
inline Real norm(const Complex& a) { return a.re * a.re + a.im * a.im; }

}  // namespace fluxcat::dd
