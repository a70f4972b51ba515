#pragma once

#include <span>
#include <vector>

#include "fluxcat/matrixcore.hpp"
#include "fluxcat/parallel.hpp"
#include "fluxcat/potential.hpp"

namespace fluxcat {

/// exp(i g_L): g_L = Phi_L(x) - delta_L x / L (periodic) or Phi_L(x) (Dirichlet).
Symbol gauge_symbol(const FluxProfile& flux, BoundaryCondition bc);

/// exp(i g~_L): g~_L = Phi_L(L) sgn(x) - delta_L x / L (periodic) or Phi_L(L) sgn(x)
/// (Dirichlet), with sgn(0) = +1.
Symbol flux_symbol(const FluxProfile& flux, BoundaryCondition bc);

/// Overlaps <phi_{L,j}, psi_{L,k}> between the free and perturbed occupied orbitals.
/// Periodic rows run over N_0 and columns over N_{n_L}; Dirichlet over 1..N.
SymbolMatrix overlap_matrix(const MagneticPotential& a, BoundaryCondition bc, int N, double L,
                            double quadrature_tol = 1e-12);

/// Closed form of T_N(exp(i g~_L)). Periodic: (-1)^{n_L} times the Fisher-Hartwig matrix.
SymbolMatrix flux_matrix(const FluxProfile& flux, BoundaryCondition bc, int N);
SymbolMatrix flux_matrix(const MagneticPotential& a, BoundaryCondition bc, int N, double L);

/// Dirichlet closed form: cos(Phi) on the diagonal, (2i/pi) sin(Phi) [1/(j+k) +- 1/(j-k)]
/// for j + k odd.
SymbolMatrix dirichlet_flux_closed_form(double total_flux, int N, double L = 0.0);

struct OverlapResult {
  int N = 0;
  double L = 0.0;
  BoundaryCondition bc = BoundaryCondition::Periodic;
  long n_L = 0;
  double delta_L = 0.0;
  LogDet logdet_exact;  // T_N(exp(i g_L))
  LogDet logdet_flux;   // T_N(exp(i g~_L))
  double c_ratio = 1.0;
  double trace_norm_delta = 0.0;
  double bound = 0.0;
  bool bound_holds = true;
  bool degenerate = false;
};

struct OverlapOptions {
  double quadrature_tol = 1e-12;
  bool compute_delta_norm = true;
  double bound_slack = 1e-8;
};

OverlapResult evaluate_overlap(const MagneticPotential& a, BoundaryCondition bc, int N, double L,
                               const OverlapOptions& opts = {});

/// One result per N with L = N / (2 rho).
std::vector<OverlapResult> overlap_sweep(const MagneticPotential& a, BoundaryCondition bc,
                                         std::span<const int> n_grid, double rho,
                                         Execution exec = Execution::Parallel,
                                         const OverlapOptions& opts = {});

struct LemmaReport {
  std::vector<OverlapResult> results;
  double c_min = 0.0;
  double c_max = 0.0;
  double band_factor = 1e4;
  bool within_band = true;
  bool degenerate = false;
};

LemmaReport lemma_factorization_check(const MagneticPotential& a, BoundaryCondition bc,
                                      std::span<const int> n_grid, double rho,
                                      double band_factor = 1e4,
                                      Execution exec = Execution::Parallel,
                                      const OverlapOptions& opts = {});

struct DeltaBoundResult {
  double trace_norm_delta = 0.0;
  double bound = 0.0;
  bool holds = true;
};

/// (N/L) int |y a| for periodic; Dirichlet orbitals have twice the sup-norm squared, so the
/// same argument yields 2 (N/L) int |y a|.
double delta_trace_norm_bound(BoundaryCondition bc, int N, double L, double weighted_l1);

/// Delta_N = overlap_matrix - flux_matrix against its trace-norm bound.
DeltaBoundResult delta_matrix_bound_check(const MagneticPotential& a, BoundaryCondition bc, int N,
                                          double L, double slack = 1e-8);

/// Hermitian pieces of exp(i g_L) - exp(i g~_L) = e+ + e- + i (f- - f+).
class SymbolSplit {
 public:
  SymbolSplit(FluxProfile flux, BoundaryCondition bc);

  double e_plus(double x) const;
  double e_minus(double x) const;
  double f_plus(double x) const;
  double f_minus(double x) const;

  Complex difference(double x) const;
  Complex reconstructed(double x) const;

 private:
  double drift(double x) const;  // delta_L x / L (periodic), 0 (Dirichlet)

  FluxProfile flux_;
  BoundaryCondition bc_;
};

struct SplitPieceNorms {
  double e_plus = 0.0, e_minus = 0.0, f_plus = 0.0, f_minus = 0.0;
  double bound_plus = 0.0;   // per-piece bound for e+, f+
  double bound_minus = 0.0;  // per-piece bound for e-, f-
};

/// Trace norms of T_N of each split piece and the half-line bounds (N/2L) int_0^L y|a| and
/// (N/2L) int_{-L}^0 |y a| (doubled for Dirichlet).
SplitPieceNorms split_piece_norms(const MagneticPotential& a, BoundaryCondition bc, int N,
                                  double L);

}  // namespace fluxcat
