#pragma once

#include <optional>

#include <Eigen/Dense>

#include "fluxcat/matrixcore.hpp"

namespace fluxcat {

using RealMatrix = Eigen::MatrixXd;

/// (1 / (j + k + eta)) for j, k = 1..M.
RealMatrix hilbert_section(double eta, int M);

/// P H_eta^2 P: entries sum_{l >= 1} 1 / ((j + l + eta)(l + k + eta)), j, k = 1..M.
RealMatrix hilbert_square_section(double eta, int M);

/// Index reversal j -> M + 1 - j.
RealMatrix flip_matrix(int M);

struct KParts {
  RealMatrix mm, pm, mp, pp;
};

/// K_M from the Dirichlet flux-matrix reduction: entries sum_{l > M} jk / ((t^2 - j^2)(t^2 - k^2))
/// with t = l - 1/2, plus its four Hilbert-type pieces K = K^{--} + K^{+-} + K^{-+} + K^{++}.
struct KMatrix {
  int M = 0;
  RealMatrix entries;
  std::optional<KParts> parts;
};

KMatrix k_matrix(int M, bool with_parts = true);

/// K^{--} written as (1/4) Theta P H_{-3/2}^2 P Theta.
RealMatrix k_minus_minus_by_flip(int M);

/// ||P H_{-1/2} P|| by power iteration.
double hilbert_section_norm(int M);

/// log |det(I - (4/pi^2) sin^2(delta) K_M)|, which equals the log modulus of the flux-matrix
/// determinant for N = 2M.
LogDet dirichlet_flux_logdet(double delta, int M);

/// Leading factor det(I - c K^{--}) and the remainder det(I - (I - c K^{--})^{-1} c (K - K^{--})).
LogDet dirichlet_leading_logdet(double delta, int M);
LogDet dirichlet_remainder_logdet(double delta, int M);

/// det(I - (sin^2(delta) / pi^2) P H_eta^2 P), eta > -2.
LogDet hilbert_remark_logdet(double delta, double eta, int N);

struct KPartNorms {
  double t_mm = 0.0;
  double t_pp = 0.0;
  double t_mixed = 0.0;  // Hilbert-Schmidt bound on |tr K^{+-}|, |tr K^{-+}|
  double op_mm = 0.0;
};

KPartNorms k_part_norms(int M);

/// Trace-only closed forms, O(M).
KPartNorms k_part_traces(int M);

}  // namespace fluxcat
