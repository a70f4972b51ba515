// Acceptance criteria 1-11: one [PASS]/[FAIL] line each, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fluxcat/asymptotics.hpp"
#include "fluxcat/hilbert.hpp"
#include "fluxcat/overlap.hpp"
#include "fluxcat/polygamma.hpp"

using namespace fluxcat;
constexpr double kPi = std::numbers::pi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto grid = default_fit_grid();
  std::string d;
  bool ok = true;
  for (double delta : {kPi / 8, kPi / 4, 3 * kPi / 8}) {
    const auto fit = fit_decay_exponent(fh_logdet_series(delta, grid, Execution::Serial));
    const double target = catastrophe_exponent(delta);
    ok = ok && std::abs(fit.slope - target) <= 0.05;
    d += fmt("slope %.5f vs %.5f; ", fit.slope, target);
  }
  const double t = seconds_since(t0);
  ok = ok && t <= 600.0;
  return {ok, d + fmt("serial %.1f s", t)};
}

Outcome criterion_2() {
  double worst = 0.0;
  for (int N : default_fit_grid()) {
    worst = std::max(worst, std::abs(std::exp(2 * log_det(fh_matrix(0.0, N)).log_magnitude) - 1.0));
  }
  for (int N : {16, 64, 256}) {
    for (auto bc : {BoundaryCondition::Periodic, BoundaryCondition::Dirichlet}) {
      const auto r = evaluate_overlap(MagneticPotential::zero(), bc, N, N / 2.0, {1e-12, false, 1e-8});
      worst = std::max(worst, std::abs(std::exp(2 * r.logdet_exact.log_magnitude) - 1.0));
    }
  }
  return {worst <= 1e-10, fmt("max ||det|^2 - 1| = %.2e over flux matrices and a = 0 overlaps", worst)};
}

Outcome criterion_3() {
  std::vector<int> grid = {1, 2, 3, 8, 33, 64};
  for (int N : default_fit_grid()) grid.push_back(N);
  int count = 0, held = 0;
  double margin = 1e300;
  for (double delta : {kPi / 8, kPi / 4, 3 * kPi / 8, -kPi / 3, 1.5}) {
    const auto series = fh_logdet_series(delta, grid, Execution::Parallel);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto I = anderson_integral(delta, grid[i]);
      const auto b = upper_bound_check(LogDet{0.5 * series[i].value, 0.0}, I, 1e-8);
      ++count;
      held += b.holds ? 1 : 0;
      margin = std::min(margin, b.rhs - b.lhs);
    }
  }
  return {held == count, fmt("%d/%d points, smallest margin %.3e", held, count, margin)};
}

Outcome criterion_4() {
  std::string d;
  bool ok = true;
  for (double delta : {kPi / 8, kPi / 4, 3 * kPi / 8}) {
    double lo = 1e300, hi = -1e300;
    for (int p = 8; p <= 16; ++p) {
      const double N = std::ldexp(1.0, p);
      const double r = anderson_integral(delta, int(N)).value + anderson_exponent(delta) * std::log(N);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    ok = ok && hi - lo < 0.1;
    d += fmt("spread %.2e; ", hi - lo);
  }
  double worst = 0.0;
  for (int N : {1, 64, 4096}) {
    for (double x : {0.125, -0.125, 0.375, -0.375}) {
      const long terms = 10000000;
      double s = 1.0 / (N + terms + 0.5 - x);
      for (long k = N + terms; k > N; --k) s += 1.0 / ((k - x) * (k - x));
      worst = std::max(worst, std::abs(trigamma(N + 1 - x) - s) / s);
    }
  }
  ok = ok && worst <= 1e-10;
  return {ok, d + fmt("tail vs 10^7-term oracle %.1e rel", worst)};
}

Outcome criterion_5() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> flux(-6.0, 6.0), width(0.2, 0.8), centre(-1.0, 1.0), extra(0.0, 30.0);
  std::uniform_int_distribution<int> n(1, 300);
  double worst = 0.0;
  bool dirichlet_zero = true;
  for (int i = 0; i < 100; ++i) {
    const auto a = MagneticPotential::gaussian_bump_with_flux(centre(rng), width(rng), flux(rng), 3.0);
    const int N = n(rng);
    const double L = 3.0 + extra(rng);
    const double closed = energy_difference(BoundaryCondition::Periodic, a, N, L);
    const double direct = ground_state_energy(BoundaryCondition::Periodic, a, N, L, true) -
                          ground_state_energy(BoundaryCondition::Periodic, a, N, L, false);
    if (closed != 0.0) worst = std::max(worst, std::abs(direct - closed) / std::abs(closed));
    const double dd = ground_state_energy(BoundaryCondition::Dirichlet, a, N, L, true) -
                      ground_state_energy(BoundaryCondition::Dirichlet, a, N, L, false);
    dirichlet_zero = dirichlet_zero && dd == 0.0 && energy_difference(BoundaryCondition::Dirichlet, a, N, L) == 0.0;
  }
  const auto a = MagneticPotential::gaussian_bump_with_flux(0.0, 0.5, 0.9, 3.0);
  double lim = 0.0;
  for (int N : {99999, 100000}) {
    const Parity p = N % 2 ? Parity::Odd : Parity::Even;
    const double got = N * energy_difference(BoundaryCondition::Periodic, a, N, N / 2.0);
    const double want = finite_size_energy(a, p, 1.0);
    lim = std::max(lim, std::abs(got - want) / std::abs(want));
  }
  const bool ok = worst <= 1e-10 && lim <= 1e-3 && dirichlet_zero;
  return {ok, fmt("max rel %.1e over 100 draws; N dE limits rel %.1e at N = 1e5; Dirichlet zero: %s", worst,
                  lim, dirichlet_zero ? "yes" : "no")};
}

const MagneticPotential& lemma_bump() {
  static const auto a = MagneticPotential::gaussian_bump_with_flux(0.0, 0.5, kPi / 4, 4.0);
  return a;
}

const std::vector<int> kLemmaGrid = {64, 91, 128, 181, 256, 362, 512, 724, 1024};

const LemmaReport& lemma_report() {
  static const LemmaReport r =
      lemma_factorization_check(lemma_bump(), BoundaryCondition::Periodic, kLemmaGrid, 1.0, 1e4, Execution::Parallel);
  return r;
}

Outcome criterion_6() {
  const auto& r = lemma_report();
  const std::size_t n = r.results.size();
  double lo = 1e300, hi = 0.0;
  for (std::size_t i = n - 4; i < n; ++i) {
    lo = std::min(lo, r.results[i].c_ratio);
    hi = std::max(hi, r.results[i].c_ratio);
  }
  const double ratio = r.c_max / r.c_min, tail = hi / lo - 1.0;
  return {r.within_band && ratio < 1e4 && tail < 0.2,
          fmt("C in [%.6f, %.6f], max/min %.4f, last four vary %.2f%%", r.c_min, r.c_max, ratio, 100 * tail)};
}

Outcome criterion_7() {
  int count = 0, held = 0;
  double worst = 0.0;
  for (const auto& r : lemma_report().results) {
    ++count;
    held += r.trace_norm_delta <= r.bound + 1e-8 ? 1 : 0;
    worst = std::max(worst, r.trace_norm_delta / r.bound);
  }
  // Smaller boxes, both boundary conditions, off-centre potential.
  const auto b = MagneticPotential::gaussian_bump_with_flux(0.8, 0.4, 1.2 + kPi, 2.0);
  const std::vector<int> grid = {4, 8, 16, 32, 64, 128};
  for (auto bc : {BoundaryCondition::Periodic, BoundaryCondition::Dirichlet}) {
    for (const auto& r : overlap_sweep(b, bc, grid, 1.0, Execution::Parallel)) {
      ++count;
      held += r.bound_holds ? 1 : 0;
      worst = std::max(worst, r.trace_norm_delta / r.bound);
    }
  }
  return {held == count, fmt("%d/%d sweep points, largest ||Delta||_1 / bound = %.3f", held, count, worst)};
}

Outcome criterion_8() {
  std::mt19937_64 rng(88);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> dd(0.05, 1.0);
  std::uniform_int_distribution<int> nn(4, 24);
  int held = 0;
  double worst = -1e300;
  for (int t = 0; t < 50; ++t) {
    const double L = 2.0, delta = dd(rng);
    std::vector<Complex> p(4);
    std::vector<double> q(4);
    for (auto& c : p) c = Complex(g(rng), g(rng)) * 0.7;
    for (auto& c : q) c = g(rng);
    // Re f = delta + |p(x)|^2 >= delta exactly; Im f arbitrary.
    Symbol f;
    f.value = [=](double x) {
      Complex px = 0.0;
      double qx = 0.0;
      for (int k = 0; k < 4; ++k) {
        px += p[k] * std::polar(1.0, (k - 1.5) * kPi * x / L);
        qx += q[k] * std::cos(k * kPi * x / L + 0.3 * k);
      }
      return Complex(delta + std::norm(px), qx);
    };
    const BasisWindow w = ground_state_window(BoundaryCondition::Periodic, L, nn(rng));
    const auto m = assemble_toeplitz(f, w);
    const double inv = operator_norm(m.entries.inverse());
    const auto rep = toeplitz_property_checks(f, w, m, t + 1, delta);
    bool clause_ok = true;
    for (const auto& c : rep.clauses)
      if (c.name == "inverse_bound") clause_ok = c.applicable && c.passed;
    if (inv <= 1.0 / delta + 1e-8 && clause_ok) ++held;
    worst = std::max(worst, inv * delta);
  }
  return {held == 50, fmt("%d/50 symbols, largest delta ||T^-1|| = %.6f", held, worst)};
}

Outcome criterion_9() {
  double prev = 0.0, last = 0.0;
  bool mono = true;
  for (int M = 1; M <= 4096; M *= 2) {
    const double n = hilbert_section_norm(M);
    mono = mono && n > prev && n < kPi;
    prev = last = n;
  }
  double op = 0.0;
  for (int M = 1; M <= 2048; M *= 2) op = std::max(op, k_part_norms(M).op_mm);
  const double growth = k_part_traces(2048).t_mm - k_part_traces(1024).t_mm;
  const double g_rel = std::abs(growth / (0.25 * std::log(2.0)) - 1.0);
  double lo = 1e300, hi = -1e300;
  for (int M = 256; M <= 4096; M *= 2) {
    lo = std::min(lo, k_part_traces(M).t_pp);
    hi = std::max(hi, k_part_traces(M).t_pp);
  }
  const bool ok = mono && op <= kPi * kPi / 4 + 1e-8 && g_rel <= 0.05 && hi - lo < 0.05;
  return {ok, fmt("norms increasing < pi: %s (M=4096: %.6f); max op K-- %.6f; trace growth %.5f (%.2f%% off); "
                  "tr K++ spread %.2e",
                  mono ? "yes" : "no", last, op, growth, 100 * g_rel, hi - lo)};
}

Outcome criterion_10() {
  const std::vector<int> grid = {128, 181, 256, 362, 512, 724, 1024, 1448, 2048};
  std::string d;
  bool ok = true;
  for (double delta : {kPi / 4, 3 * kPi / 8}) {
    std::vector<SeriesPoint> s(grid.size());
    for_each_index(grid.size(), Execution::Parallel, [&](std::size_t i) {
      const int M = grid[i] / 2;
      s[i] = {2.0 * M, 2.0 * dirichlet_flux_logdet(delta, M).log_magnitude};
    });
    const auto fit = fit_decay_exponent(s);
    const double bound = anderson_exponent(delta) + 0.05;
    ok = ok && fit.slope <= bound;
    d += fmt("slope %.5f <= %.5f; ", fit.slope, bound);
  }
  double worst = 0.0;
  for (double delta : {kPi / 4, kPi / 3, 3 * kPi / 8}) {
    for (int M : {8, 16, 32}) {
      worst = std::max(worst, std::abs(log_det(dirichlet_flux_closed_form(delta, 2 * M)).log_magnitude -
                                       dirichlet_flux_logdet(delta, M).log_magnitude));
    }
  }
  ok = ok && worst <= 1e-8;
  return {ok, d + fmt("block vs reduced %.1e", worst)};
}

Outcome criterion_11() {
  const double L = 32.0;
  const FluxProfile f(MagneticPotential::gaussian_bump_with_flux(0.0, 0.5, kPi / 4, 4.0), L);
  const auto p = assemble_toeplitz(flux_symbol(f, BoundaryCondition::Periodic),
                                   ground_state_window(BoundaryCondition::Periodic, L, 64));
  const double ep = (p.entries - fh_matrix(f.delta_L(), 64).entries).cwiseAbs().maxCoeff();
  const auto q = assemble_toeplitz(flux_symbol(f, BoundaryCondition::Dirichlet),
                                   ground_state_window(BoundaryCondition::Dirichlet, L, 32));
  const double eq = (q.entries - dirichlet_flux_closed_form(f.total_flux(), 32).entries).cwiseAbs().maxCoeff();
  return {ep <= 1e-9 && eq <= 1e-9, fmt("periodic N=64 max err %.1e; Dirichlet N=32 max err %.1e", ep, eq)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"periodic decay exponent of Fisher-Hartwig determinants", criterion_1},
      {"delta = 0 overlaps equal one", criterion_2},
      {"|Dtilde|^2 <= exp(-I) across the sweep", criterion_3},
      {"Anderson integral log growth and trigamma tails", criterion_4},
      {"energy closed forms and finite-size limits", criterion_5},
      {"factorisation constant C_{N,L} stays in a band", criterion_6},
      {"trace-norm bound on Delta_N", criterion_7},
      {"inverse bound ||T_N(f)^-1|| <= 1/delta", criterion_8},
      {"Hilbert section norms and K-part traces", criterion_9},
      {"Dirichlet upper bound and block reduction", criterion_10},
      {"assembled discontinuous symbol equals closed forms", criterion_11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] criterion %zu: %s (%s) [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
