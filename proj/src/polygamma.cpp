#include "fluxcat/polygamma.hpp"

#include <cmath>
#include <string>

#include "fluxcat/errors.hpp"

namespace fluxcat {

namespace {

constexpr double kShift = 10.0;

// B_{2k} for k = 1..9.
constexpr double kBernoulli[] = {1.0 / 6.0,     -1.0 / 30.0,        1.0 / 42.0,
                                 -1.0 / 30.0,   5.0 / 66.0,         -691.0 / 2730.0,
                                 7.0 / 6.0,     -3617.0 / 510.0,    43867.0 / 798.0};

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(name) + ": argument must be finite and > 0");
  }
}

}  // namespace

double digamma(double x) {
  require_positive(x, "digamma");
  double acc = 0.0;
  while (x < kShift) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // psi(x) ~ ln x - 1/(2x) - sum B_{2k} / (2k x^{2k})
  const double inv2 = 1.0 / (x * x);
  double term = inv2;
  double series = 0.0;
  for (int k = 1; k <= 9; ++k) {
    series += kBernoulli[k - 1] / (2.0 * k) * term;
    term *= inv2;
  }
  return acc + std::log(x) - 0.5 / x - series;
}

double trigamma(double x) {
  require_positive(x, "trigamma");
  double acc = 0.0;
  while (x < kShift) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  // psi_1(x) ~ 1/x + 1/(2x^2) + sum B_{2k} / x^{2k+1}
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double term = inv2 * inv;
  double series = 0.0;
  for (int k = 1; k <= 9; ++k) {
    series += kBernoulli[k - 1] * term;
    term *= inv2;
  }
  return acc + inv + 0.5 * inv2 + series;
}

double polygamma(int order, double x) {
  switch (order) {
    case 0:
      return digamma(x);
    case 1:
      return trigamma(x);
    default:
      throw DomainError("polygamma: only orders 0 and 1 are supported");
  }
}

}  // namespace fluxcat
