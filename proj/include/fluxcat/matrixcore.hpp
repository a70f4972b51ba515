#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fluxcat/spectrum.hpp"

namespace fluxcat {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

enum class SymbolKind : std::int32_t { ExactGauge = 0, DiscontinuousFlux = 1, Custom = 2 };

const char* to_string(SymbolKind kind);

/// Bounded symbol on [-L, L] together with the points where it may jump or kink.
struct Symbol {
  std::function<Complex(double)> value;
  std::vector<double> breakpoints;
  SymbolKind kind = SymbolKind::Custom;
};

/// Which eigenbasis T_N is taken in. Periodic windows start at `first` (N_0 uses -floor(N/2));
/// Dirichlet windows are always {1, ..., size}.
struct BasisWindow {
  BoundaryCondition bc = BoundaryCondition::Periodic;
  double L = 1.0;
  int size = 1;
  long first = 0;
};

BasisWindow ground_state_window(BoundaryCondition bc, double L, int N);

/// Generalized Toeplitz matrix (<phi_j, f phi_k>) with provenance.
struct SymbolMatrix {
  ComplexMatrix entries;
  BoundaryCondition bc = BoundaryCondition::Periodic;
  SymbolKind kind = SymbolKind::Custom;
  double L = 0.0;

  int size() const { return static_cast<int>(entries.rows()); }
};

/// det = exp(log_magnitude) * exp(i phase); log_magnitude = -inf for a singular matrix.
struct LogDet {
  double log_magnitude = 0.0;
  double phase = 0.0;
};

struct LogDetReport {
  LogDet value;
  double rcond = 1.0;
  bool extended_precision = false;
};

/// Panel-adaptive assembly. Panels never straddle 0, +-L or a symbol breakpoint and are no
/// wider than 1/8 of the shortest basis wavelength in the window.
SymbolMatrix assemble_toeplitz(const Symbol& symbol, const BasisWindow& basis,
                               double quadrature_tol = 1e-12);

/// Real Toeplitz matrix with entries sin(delta) / (delta - pi (j - k)).
SymbolMatrix fh_matrix(double delta, int N);

/// sin(delta) / (delta - pi n), with the series branch near delta = 0 on the diagonal.
double fh_coefficient(double delta, long n);

LogDet log_det(const ComplexMatrix& m);
LogDet log_det(const SymbolMatrix& m);

/// Pivoted LU in double precision; repeats the factorization in double-double arithmetic when
/// the reciprocal condition estimate drops below `recheck_rcond`.
LogDetReport log_det_report(const ComplexMatrix& m, double recheck_rcond = 1e-12);

/// Pivoted LU carried out entirely in double-double arithmetic.
LogDet log_det_extended(const ComplexMatrix& m);

std::vector<double> singular_values(const ComplexMatrix& m);
double trace_norm(const ComplexMatrix& m);

struct PowerIterationOptions {
  double rel_tol = 1e-10;
  int max_iterations = 10000;
};

/// Largest singular value by power iteration on m^* m.
double operator_norm(const ComplexMatrix& m, const PowerIterationOptions& opts = {});

struct PropertyClause {
  std::string name;
  bool applicable = true;
  bool passed = true;
  std::string detail;
};

struct PropertyReport {
  std::vector<PropertyClause> clauses;

  bool ok() const;
  std::vector<std::string> failures() const;
};

/// Checks linearity, self-adjointness (real f), semidefiniteness (f >= 0) and the inverse
/// bound ||T_N(f)^{-1}|| <= 1/delta when +-Re f >= delta > 0. `delta_lower_bound`, when
/// positive, is a proven lower bound on +-Re f; otherwise it is estimated from samples.
PropertyReport toeplitz_property_checks(const Symbol& f, const BasisWindow& basis,
                                        const SymbolMatrix& matrix, std::uint64_t seed = 1,
                                        double delta_lower_bound = 0.0);

/// Flat binary export: int64 N, int32 bc tag, int32 symbol tag, then N*N row-major
/// (re, im) float64 pairs, all little-endian.
void write_binary(const SymbolMatrix& m, std::ostream& out);
SymbolMatrix read_binary(std::istream& in, double L = 0.0);
void write_csv(const SymbolMatrix& m, std::ostream& out);

}  // namespace fluxcat
