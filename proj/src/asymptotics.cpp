#include "fluxcat/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fluxcat/errors.hpp"
#include "fluxcat/polygamma.hpp"

namespace fluxcat {

namespace {
constexpr double kPi = std::numbers::pi;
}

ExponentFit fit_decay_exponent(std::span<const SeriesPoint> series) {
  if (series.size() < 4) throw DomainError("exponent fit needs at least 4 grid points");
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!(series[i].N > 0.0)) throw DomainError("grid points must be positive");
    if (!std::isfinite(series[i].value)) throw NumericalError("non-finite value in series", 0.0);
    if (i > 0 && !(series[i].N > series[i - 1].N)) {
      throw DomainError("grid must be strictly increasing");
    }
  }
  const double n = static_cast<double>(series.size());
  double mx = 0.0, my = 0.0;
  for (const auto& p : series) {
    mx += std::log(p.N);
    my += p.value;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : series) {
    const double dx = std::log(p.N) - mx;
    sxx += dx * dx;
    sxy += dx * (p.value - my);
  }
  ExponentFit fit;
  fit.grid.assign(series.begin(), series.end());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (const auto& p : series) {
    const double r = p.value - (fit.slope * std::log(p.N) + fit.intercept);
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(r));
  }
  const auto& a = series[series.size() - 2];
  const auto& b = series.back();
  fit.last_pair_slope = (b.value - a.value) / (std::log(b.N) - std::log(a.N));
  return fit;
}

std::vector<ExponentFit> sliding_fits(std::span<const SeriesPoint> series, std::size_t window) {
  std::vector<ExponentFit> out;
  if (window < 4) throw DomainError("sliding window needs at least 4 points");
  for (std::size_t i = 0; i + window <= series.size(); ++i) {
    out.push_back(fit_decay_exponent(series.subspan(i, window)));
  }
  return out;
}

double catastrophe_exponent(double delta) { return -2.0 * delta * delta / (kPi * kPi); }

double anderson_exponent(double delta) {
  const double s = std::sin(delta);
  return -2.0 * s * s / (kPi * kPi);
}

AndersonIntegral anderson_integral(double delta, int N) {
  if (!(std::abs(delta) < kPi / 2)) throw DomainError("Anderson integral needs |delta| < pi/2");
  if (N < 1) throw DomainError("N must be at least 1");
  AndersonIntegral out{N, delta, 0.0};
  const double s = std::sin(delta);
  if (s == 0.0) return out;
  const double x = delta / kPi;
  // Smallest terms first.
  double sum = 0.0, comp = 0.0;
  auto add = [&](double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  };
  add(N * trigamma(N + 1.0 - x));
  add(N * trigamma(N + 1.0 + x));
  for (int k = N; k >= 1; --k) {
    const double km = k - x, kp = k + x;
    add(k / (km * km) + k / (kp * kp));
  }
  out.value = s * s / (kPi * kPi) * (sum + comp);
  return out;
}

BoundCheck upper_bound_check(const LogDet& overlap, const AndersonIntegral& integral,
                             double slack) {
  BoundCheck b;
  b.lhs = 2.0 * overlap.log_magnitude;
  b.rhs = -integral.value;
  b.holds = b.lhs <= b.rhs + slack;
  return b;
}

std::vector<SeriesPoint> fh_logdet_series(double delta, std::span<const int> n_grid,
                                          Execution exec) {
  std::vector<SeriesPoint> out(n_grid.size());
  for_each_index(n_grid.size(), exec, [&](std::size_t i) {
    const int N = n_grid[i];
    out[i] = {static_cast<double>(N), 2.0 * log_det(fh_matrix(delta, N)).log_magnitude};
  });
  return out;
}

std::vector<int> default_fit_grid() { return {128, 181, 256, 362, 512, 724, 1024, 1448, 2048}; }

}  // namespace fluxcat
