#include "fluxcat/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fluxcat/errors.hpp"

namespace fluxcat {

namespace {

constexpr double kPi = std::numbers::pi;

double sgn0(double x) { return x < 0.0 ? -1.0 : 1.0; }

void require_size(int N) {
  if (N < 1) throw DomainError("matrix size N must be at least 1");
}

}  // namespace

Symbol gauge_symbol(const FluxProfile& flux, BoundaryCondition bc) {
  Symbol s;
  s.kind = SymbolKind::ExactGauge;
  s.breakpoints = flux.potential().breakpoints();
  const double drift = bc == BoundaryCondition::Periodic ? flux.delta_L() / flux.L() : 0.0;
  s.value = [flux, drift](double x) {
    return std::polar(1.0, flux.phi(x) - drift * x);
  };
  return s;
}

Symbol flux_symbol(const FluxProfile& flux, BoundaryCondition bc) {
  Symbol s;
  s.kind = SymbolKind::DiscontinuousFlux;
  s.breakpoints = {0.0};
  const double drift = bc == BoundaryCondition::Periodic ? flux.delta_L() / flux.L() : 0.0;
  const double total = flux.total_flux();
  s.value = [total, drift](double x) { return std::polar(1.0, total * sgn0(x) - drift * x); };
  return s;
}

SymbolMatrix overlap_matrix(const MagneticPotential& a, BoundaryCondition bc, int N, double L,
                            double quadrature_tol) {
  require_size(N);
  if (!(L > 0.0)) throw DomainError("half-length L must be positive");
  if (L < a.support_radius()) {
    throw DomainError("half-length L = " + std::to_string(L) +
                      " is smaller than the potential support radius " +
                      std::to_string(a.support_radius()));
  }
  const FluxProfile flux(a, L);
  return assemble_toeplitz(gauge_symbol(flux, bc), ground_state_window(bc, L, N),
                           quadrature_tol);
}

SymbolMatrix dirichlet_flux_closed_form(double total_flux, int N, double L) {
  require_size(N);
  SymbolMatrix out;
  out.bc = BoundaryCondition::Dirichlet;
  out.kind = SymbolKind::DiscontinuousFlux;
  out.L = L;
  out.entries = ComplexMatrix::Zero(N, N);
  const double c = std::cos(total_flux);
  const double s = 2.0 * std::sin(total_flux) / kPi;
  for (int jj = 0; jj < N; ++jj) {
    const long j = jj + 1;
    out.entries(jj, jj) = c;
    for (int kk = 0; kk < N; ++kk) {
      const long k = kk + 1;
      if ((j + k) % 2 == 0) continue;
      const double sum = 1.0 / static_cast<double>(j + k);
      const double diff = 1.0 / static_cast<double>(j - k);
      // Even rows pair sin with cos, odd rows cos with sin.
      const double v = (j % 2 == 0) ? sum + diff : sum - diff;
      out.entries(jj, kk) = Complex(0.0, s * v);
    }
  }
  return out;
}

SymbolMatrix flux_matrix(const FluxProfile& flux, BoundaryCondition bc, int N) {
  if (bc == BoundaryCondition::Dirichlet) {
    return dirichlet_flux_closed_form(flux.total_flux(), N, flux.L());
  }
  SymbolMatrix m = fh_matrix(flux.delta_L(), N);
  if (flux.n_L() % 2 != 0) m.entries = -m.entries;
  m.L = flux.L();
  return m;
}

SymbolMatrix flux_matrix(const MagneticPotential& a, BoundaryCondition bc, int N, double L) {
  return flux_matrix(FluxProfile(a, L), bc, N);
}

double delta_trace_norm_bound(BoundaryCondition bc, int N, double L, double weighted_l1) {
  const double base = static_cast<double>(N) / L * weighted_l1;
  return bc == BoundaryCondition::Dirichlet ? 2.0 * base : base;
}

OverlapResult evaluate_overlap(const MagneticPotential& a, BoundaryCondition bc, int N, double L,
                               const OverlapOptions& opts) {
  const FluxProfile flux(a, L);
  const SymbolMatrix exact = overlap_matrix(a, bc, N, L, opts.quadrature_tol);
  const SymbolMatrix approx = flux_matrix(flux, bc, N);

  OverlapResult r;
  r.N = N;
  r.L = L;
  r.bc = bc;
  r.n_L = flux.n_L();
  r.delta_L = flux.delta_L();
  r.logdet_exact = log_det(exact);
  r.logdet_flux = log_det(approx);
  r.degenerate = !std::isfinite(r.logdet_flux.log_magnitude);
  r.c_ratio = r.degenerate
                  ? std::numeric_limits<double>::infinity()
                  : std::exp(2.0 * (r.logdet_exact.log_magnitude - r.logdet_flux.log_magnitude));
  r.bound = delta_trace_norm_bound(bc, N, L, moment_integrals(a, L).weighted_l1);
  if (opts.compute_delta_norm) {
    r.trace_norm_delta = trace_norm(exact.entries - approx.entries);
    r.bound_holds = r.trace_norm_delta <= r.bound + opts.bound_slack;
  }
  return r;
}

std::vector<OverlapResult> overlap_sweep(const MagneticPotential& a, BoundaryCondition bc,
                                         std::span<const int> n_grid, double rho, Execution exec,
                                         const OverlapOptions& opts) {
  if (!(rho > 0.0)) throw DomainError("density rho must be positive");
  std::vector<OverlapResult> out(n_grid.size());
  for_each_index(n_grid.size(), exec, [&](std::size_t i) {
    const int N = n_grid[i];
    out[i] = evaluate_overlap(a, bc, N, N / (2.0 * rho), opts);
  });
  return out;
}

LemmaReport lemma_factorization_check(const MagneticPotential& a, BoundaryCondition bc,
                                      std::span<const int> n_grid, double rho,
                                      double band_factor, Execution exec,
                                      const OverlapOptions& opts) {
  if (!(band_factor >= 1.0)) throw DomainError("band factor must be at least 1");
  LemmaReport rep;
  rep.band_factor = band_factor;
  rep.results = overlap_sweep(a, bc, n_grid, rho, exec, opts);
  if (rep.results.empty()) return rep;
  rep.c_min = std::numeric_limits<double>::infinity();
  rep.c_max = 0.0;
  for (const auto& r : rep.results) {
    if (r.degenerate) rep.degenerate = true;
    rep.c_min = std::min(rep.c_min, r.c_ratio);
    rep.c_max = std::max(rep.c_max, r.c_ratio);
  }
  rep.within_band = !rep.degenerate && std::isfinite(rep.c_max) && rep.c_min > 0.0 &&
                    rep.c_max / rep.c_min <= band_factor;
  return rep;
}

DeltaBoundResult delta_matrix_bound_check(const MagneticPotential& a, BoundaryCondition bc, int N,
                                          double L, double slack) {
  OverlapOptions opts;
  opts.bound_slack = slack;
  const OverlapResult r = evaluate_overlap(a, bc, N, L, opts);
  return {r.trace_norm_delta, r.bound, r.bound_holds};
}

// ---------------------------------------------------------------------------------------------

SymbolSplit::SymbolSplit(FluxProfile flux, BoundaryCondition bc)
    : flux_(std::move(flux)), bc_(bc) {}

double SymbolSplit::drift(double x) const {
  return bc_ == BoundaryCondition::Periodic ? flux_.delta_L() * x / flux_.L() : 0.0;
}

double SymbolSplit::e_plus(double x) const {
  if (x < 0.0) return 0.0;
  return 2.0 * std::sin(0.5 * flux_.phi_plus(x) - drift(x)) * std::sin(0.5 * flux_.phi_minus(x));
}

double SymbolSplit::e_minus(double x) const {
  if (x >= 0.0) return 0.0;
  return 2.0 * std::sin(0.5 * flux_.phi_minus(x) + drift(x)) * std::sin(0.5 * flux_.phi_plus(x));
}

double SymbolSplit::f_plus(double x) const {
  if (x < 0.0) return 0.0;
  return 2.0 * std::cos(0.5 * flux_.phi_plus(x) - drift(x)) * std::sin(0.5 * flux_.phi_minus(x));
}

double SymbolSplit::f_minus(double x) const {
  if (x >= 0.0) return 0.0;
  return 2.0 * std::cos(0.5 * flux_.phi_minus(x) + drift(x)) * std::sin(0.5 * flux_.phi_plus(x));
}

Complex SymbolSplit::difference(double x) const {
  const double g = flux_.phi(x) - drift(x);
  const double gt = flux_.total_flux() * sgn0(x) - drift(x);
  return std::polar(1.0, g) - std::polar(1.0, gt);
}

Complex SymbolSplit::reconstructed(double x) const {
  return Complex(e_plus(x) + e_minus(x), f_minus(x) - f_plus(x));
}

SplitPieceNorms split_piece_norms(const MagneticPotential& a, BoundaryCondition bc, int N,
                                  double L) {
  if (L < a.support_radius()) throw DomainError("half-length L is smaller than the support");
  const FluxProfile flux(a, L);
  const SymbolSplit split(flux, bc);
  const BasisWindow basis = ground_state_window(bc, L, N);
  auto norm_of = [&](double (SymbolSplit::*piece)(double) const) {
    Symbol s;
    s.breakpoints = a.breakpoints();
    s.breakpoints.push_back(0.0);
    s.value = [&split, piece](double x) { return Complex((split.*piece)(x), 0.0); };
    return trace_norm(assemble_toeplitz(s, basis).entries);
  };
  SplitPieceNorms out;
  out.e_plus = norm_of(&SymbolSplit::e_plus);
  out.e_minus = norm_of(&SymbolSplit::e_minus);
  out.f_plus = norm_of(&SymbolSplit::f_plus);
  out.f_minus = norm_of(&SymbolSplit::f_minus);
  const double scale = (bc == BoundaryCondition::Dirichlet ? 2.0 : 1.0) * N / (2.0 * L);
  out.bound_plus = scale * weighted_l1_on(a, 0.0, L);
  out.bound_minus = scale * weighted_l1_on(a, -L, 0.0);
  return out;
}

}  // namespace fluxcat
