#include "fluxcat/hilbert.hpp"

#include <cmath>
#include <numbers>

#include "fluxcat/errors.hpp"
#include "fluxcat/polygamma.hpp"

namespace fluxcat {

namespace {

constexpr double kPi = std::numbers::pi;

void require_order(int M) {
  if (M < 1) throw DomainError("section size M must be at least 1");
}

// sum_{l > M} 1 / ((l - a)(l - b)) for a, b < M + 1.
double tail_pair(int M, double a, double b) {
  if (a == b) return trigamma(M + 1.0 - a);
  return (digamma(M + 1.0 - b) - digamma(M + 1.0 - a)) / (a - b);
}

LogDet logdet_identity_minus(const RealMatrix& k, double c) {
  const RealMatrix m = RealMatrix::Identity(k.rows(), k.cols()) - c * k;
  return log_det(ComplexMatrix(m.cast<Complex>()));
}

double reduction_coefficient(double delta) {
  if (!(std::abs(delta) <= kPi / 2)) throw DomainError("need |delta| <= pi/2");
  const double s = std::sin(delta);
  return 4.0 * s * s / (kPi * kPi);
}

}  // namespace

RealMatrix hilbert_section(double eta, int M) {
  require_order(M);
  if (!(eta > -2.0)) throw DomainError("Hilbert section needs eta > -2");
  RealMatrix h(M, M);
  for (int j = 1; j <= M; ++j)
    for (int k = 1; k <= M; ++k) h(j - 1, k - 1) = 1.0 / (j + k + eta);
  return h;
}

RealMatrix hilbert_square_section(double eta, int M) {
  require_order(M);
  if (!(eta > -2.0)) throw DomainError("Hilbert section needs eta > -2");
  RealMatrix h(M, M);
  for (int j = 1; j <= M; ++j) {
    for (int k = 1; k <= M; ++k) {
      h(j - 1, k - 1) = j == k ? trigamma(1.0 + j + eta)
                               : (digamma(1.0 + j + eta) - digamma(1.0 + k + eta)) / (j - k);
    }
  }
  return h;
}

RealMatrix flip_matrix(int M) {
  require_order(M);
  RealMatrix t = RealMatrix::Zero(M, M);
  for (int j = 0; j < M; ++j) t(j, M - 1 - j) = 1.0;
  return t;
}

KMatrix k_matrix(int M, bool with_parts) {
  require_order(M);
  KMatrix out;
  out.M = M;
  out.entries.resize(M, M);
  std::vector<double> u(M + 1);
  for (int j = 1; j <= M; ++j) {
    u[j] = (digamma(M + 0.5 + j) - digamma(M + 0.5 - j)) / (2.0 * j);
  }
  for (int j = 1; j <= M; ++j) {
    for (int k = 1; k <= M; ++k) {
      double v;
      if (j == k) {
        v = 0.25 * (trigamma(M + 0.5 - j) + trigamma(M + 0.5 + j)) - 0.5 * u[j];
      } else {
        v = static_cast<double>(j) * k / (static_cast<double>(j) * j - static_cast<double>(k) * k) *
            (u[j] - u[k]);
      }
      out.entries(j - 1, k - 1) = v;
    }
  }
  if (with_parts) {
    KParts p;
    p.mm.resize(M, M);
    p.pm.resize(M, M);
    p.mp.resize(M, M);
    p.pp.resize(M, M);
    for (int j = 1; j <= M; ++j) {
      for (int k = 1; k <= M; ++k) {
        p.mm(j - 1, k - 1) = 0.25 * tail_pair(M, 0.5 + j, 0.5 + k);
        p.pm(j - 1, k - 1) = -0.25 * tail_pair(M, 0.5 - j, 0.5 + k);
        p.mp(j - 1, k - 1) = -0.25 * tail_pair(M, 0.5 + j, 0.5 - k);
        p.pp(j - 1, k - 1) = 0.25 * tail_pair(M, 0.5 - j, 0.5 - k);
      }
    }
    out.parts = std::move(p);
  }
  return out;
}

RealMatrix k_minus_minus_by_flip(int M) {
  const RealMatrix t = flip_matrix(M);
  return 0.25 * t * hilbert_square_section(-1.5, M) * t;
}

double hilbert_section_norm(int M) {
  return operator_norm(ComplexMatrix(hilbert_section(-0.5, M).cast<Complex>()));
}

LogDet dirichlet_flux_logdet(double delta, int M) {
  const double c = reduction_coefficient(delta);
  return logdet_identity_minus(k_matrix(M, false).entries, c);
}

LogDet dirichlet_leading_logdet(double delta, int M) {
  const double c = reduction_coefficient(delta);
  const KMatrix k = k_matrix(M, true);
  return logdet_identity_minus(k.parts->mm, c);
}

LogDet dirichlet_remainder_logdet(double delta, int M) {
  const double c = reduction_coefficient(delta);
  const KMatrix k = k_matrix(M, true);
  const RealMatrix lead = RealMatrix::Identity(M, M) - c * k.parts->mm;
  const RealMatrix rest = c * (k.parts->pm + k.parts->mp + k.parts->pp);
  const RealMatrix r = RealMatrix::Identity(M, M) - lead.partialPivLu().solve(rest);
  return log_det(ComplexMatrix(r.cast<Complex>()));
}

LogDet hilbert_remark_logdet(double delta, double eta, int N) {
  const double s = std::sin(delta);
  return logdet_identity_minus(hilbert_square_section(eta, N), s * s / (kPi * kPi));
}

KPartNorms k_part_norms(int M) {
  const KMatrix k = k_matrix(M, true);
  KPartNorms n;
  n.t_mm = k.parts->mm.trace();
  n.t_pp = k.parts->pp.trace();
  n.t_mixed = std::sqrt(n.t_mm * n.t_pp);
  n.op_mm = operator_norm(ComplexMatrix(k.parts->mm.cast<Complex>()));
  return n;
}

KPartNorms k_part_traces(int M) {
  require_order(M);
  KPartNorms n;
  for (int p = M - 1; p >= 0; --p) n.t_mm += trigamma(p + 0.5);
  for (int j = M; j >= 1; --j) n.t_pp += trigamma(M + 0.5 + j);
  n.t_mm *= 0.25;
  n.t_pp *= 0.25;
  n.t_mixed = std::sqrt(n.t_mm * n.t_pp);
  n.op_mm = std::numeric_limits<double>::quiet_NaN();
  return n;
}

}  // namespace fluxcat
