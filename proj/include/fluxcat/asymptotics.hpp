#pragma once

#include <span>
#include <vector>

#include "fluxcat/matrixcore.hpp"
#include "fluxcat/parallel.hpp"

namespace fluxcat {

struct SeriesPoint {
  double N = 0.0;
  double value = 0.0;  // log |det|^2
};

struct ExponentFit {
  std::vector<SeriesPoint> grid;
  double slope = 0.0;
  double intercept = 0.0;
  double max_abs_residual = 0.0;
  double last_pair_slope = 0.0;
};

/// Least-squares fit of value = slope * ln N + intercept. Needs at least 4 points with
/// strictly increasing N.
ExponentFit fit_decay_exponent(std::span<const SeriesPoint> series);

/// Fits over consecutive windows of `window` points.
std::vector<ExponentFit> sliding_fits(std::span<const SeriesPoint> series, std::size_t window = 4);

/// -2 delta^2 / pi^2
double catastrophe_exponent(double delta);
/// -2 sin^2(delta) / pi^2
double anderson_exponent(double delta);

struct AndersonIntegral {
  int N = 0;
  double delta = 0.0;
  double value = 0.0;
};

/// Second-order Anderson integral for the Fisher-Hartwig symbol, in closed form through
/// trigamma tails. Equals N - ||T_N||_F^2 of the Fisher-Hartwig matrix.
AndersonIntegral anderson_integral(double delta, int N);

struct BoundCheck {
  bool holds = true;
  double lhs = 0.0;  // log |D|^2
  double rhs = 0.0;  // -I
};

/// Anderson's inequality |D|^2 <= exp(-I).
BoundCheck upper_bound_check(const LogDet& overlap, const AndersonIntegral& integral,
                             double slack = 1e-10);

/// log |det T_N(fh_delta)|^2 for each N in the grid.
std::vector<SeriesPoint> fh_logdet_series(double delta, std::span<const int> n_grid,
                                          Execution exec = Execution::Parallel);

/// Geometric grid 128 .. 2048 with ratio sqrt(2).
std::vector<int> default_fit_grid();

}  // namespace fluxcat
