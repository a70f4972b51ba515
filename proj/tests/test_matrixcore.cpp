#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "fluxcat/errors.hpp"
#include "fluxcat/matrixcore.hpp"
#include "fluxcat/overlap.hpp"

using namespace fluxcat;
constexpr double kPi = std::numbers::pi;

ComplexMatrix random_matrix(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

Complex cofactor_det(const ComplexMatrix& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 1) return m(0, 0);
  Complex d = 0.0;
  for (int c = 0; c < n; ++c) {
    ComplexMatrix minor(n - 1, n - 1);
    for (int i = 1; i < n; ++i)
      for (int j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = m(i, j);
    d += (c % 2 ? -1.0 : 1.0) * m(0, c) * cofactor_det(minor);
  }
  return d;
}

Symbol constant_symbol(Complex c) {
  Symbol s;
  s.value = [c](double) { return c; };
  return s;
}

TEST_CASE("log_det basics") {
  const LogDet id = log_det(ComplexMatrix::Identity(5, 5));
  CHECK(id.log_magnitude == 0.0);
  CHECK(id.phase == 0.0);
  const LogDet d = log_det(ComplexMatrix(2.0 * ComplexMatrix::Identity(3, 3)));
  CHECK(std::abs(d.log_magnitude - std::log(8.0)) < 1e-15);
  CHECK(d.phase == 0.0);
  ComplexMatrix sing = ComplexMatrix::Zero(3, 3);
  sing(0, 0) = 1.0;
  CHECK(log_det(sing).log_magnitude == -std::numeric_limits<double>::infinity());
  ComplexMatrix neg = ComplexMatrix::Identity(2, 2);
  neg(0, 0) = -1.0;
  CHECK(std::abs(std::abs(log_det(neg).phase) - kPi) < 1e-15);
}

TEST_CASE("log_det against a cofactor oracle") {
  const ComplexMatrix m = random_matrix(8, 3);
  const Complex want = cofactor_det(m);
  const LogDet got = log_det(m);
  CHECK(std::abs(std::exp(got.log_magnitude) - std::abs(want)) / std::abs(want) < 1e-10);
  CHECK(std::abs(std::arg(std::polar(1.0, got.phase) / want)) < 1e-10);
  const LogDetReport rep = log_det_report(m);
  CHECK(rep.rcond > 0.0);
  CHECK(!rep.extended_precision);
}

TEST_CASE("log_det of a product is the sum") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const ComplexMatrix a = random_matrix(12, 10 + s), b = random_matrix(12, 20 + s);
    const LogDet la = log_det(a), lb = log_det(b), lab = log_det(ComplexMatrix(a * b));
    CHECK(std::abs(la.log_magnitude + lb.log_magnitude - lab.log_magnitude) < 1e-9);
    CHECK(std::abs(std::arg(std::polar(1.0, la.phase + lb.phase - lab.phase))) < 1e-9);
  }
}

TEST_CASE("extended precision on ill-conditioned matrices") {
  // U^T U with U unit upper triangular, all off-diagonal entries -1: integer entries (exact in
  // double), det = 1, condition number ~ 4^n.
  const int n = 24;
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) u(i, j) = -1.0;
  const ComplexMatrix a = (u.transpose() * u).cast<Complex>();
  const LogDetReport rep = log_det_report(a);
  CHECK(rep.rcond < 1e-12);
  CHECK(rep.extended_precision);
  CHECK(std::abs(rep.value.log_magnitude) < 1e-6);
  CHECK(std::abs(log_det_extended(a).log_magnitude) < 1e-6);

  // Hilbert matrix: agreement with the Cauchy formula is limited by rounding of the entries.
  const int h_n = 10;
  ComplexMatrix h(h_n, h_n);
  for (int i = 0; i < h_n; ++i)
    for (int j = 0; j < h_n; ++j) h(i, j) = 1.0 / (i + j + 1.0);
  double want = 0.0;
  for (int i = 0; i < h_n; ++i)
    for (int j = 0; j < h_n; ++j) {
      if (i < j) want += 2.0 * std::log(double(j - i));
      want -= std::log(double(i + j + 1));
    }
  CHECK(log_det_report(h).extended_precision);
  CHECK(std::abs(log_det_extended(h).log_magnitude - want) < 1e-3);
}

TEST_CASE("singular values, trace norm and operator norm") {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = -2.0;
  d(2, 2) = 3.0;
  CHECK(std::abs(trace_norm(d) - 6.0) < 1e-13);
  CHECK(std::abs(operator_norm(d) - 3.0) < 1e-9);
  Eigen::VectorXcd u = random_matrix(5, 7).col(0), v = random_matrix(5, 8).col(1);
  const ComplexMatrix r1 = u * v.adjoint();
  CHECK(std::abs(trace_norm(r1) - u.norm() * v.norm()) < 1e-12);
  const ComplexMatrix m = random_matrix(6, 9);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.adjoint() * m);
  double tn = 0.0;
  for (int i = 0; i < 6; ++i) tn += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
  CHECK(std::abs(trace_norm(m) - tn) < 1e-9);
  CHECK(std::abs(operator_norm(m) - std::sqrt(es.eigenvalues()(5))) < 1e-9);
  CHECK(operator_norm(m) <= trace_norm(m));
  CHECK(trace_norm(m) <= 6 * operator_norm(m));
}

TEST_CASE("fh_matrix closed form") {
  const auto id = fh_matrix(0.0, 6);
  CHECK((id.entries - ComplexMatrix::Identity(6, 6)).norm() == 0.0);
  const auto m = fh_matrix(kPi / 4, 4);
  CHECK(std::abs(m.entries(0, 0).real() - 0.9003163161571061) < 1e-15);
  CHECK(std::abs(m.entries(1, 0).real() + 0.3001054387190354) < 1e-15);
  CHECK(std::abs(fh_coefficient(1e-6, 0) - std::sin(1e-6) / 1e-6) < 1e-16);
  CHECK_THROWS_AS(fh_matrix(kPi / 2, 3), DomainError);
  for (int j = 1; j < 4; ++j)
    for (int k = 1; k < 4; ++k) CHECK(m.entries(j, k) == m.entries(j - 1, k - 1));
}

TEST_CASE("assembly: identity, shift, flux symbol") {
  const double L = 3.0;
  const auto w = ground_state_window(BoundaryCondition::Periodic, L, 7);
  const auto one = assemble_toeplitz(constant_symbol(1.0), w);
  CHECK((one.entries - ComplexMatrix::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-13);
  const auto dw = ground_state_window(BoundaryCondition::Dirichlet, L, 7);
  CHECK((assemble_toeplitz(constant_symbol(1.0), dw).entries - ComplexMatrix::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-13);

  Symbol shift;
  shift.value = [L](double x) { return std::polar(1.0, kPi * x / L); };
  const auto s = assemble_toeplitz(shift, w);
  for (int j = 0; j < 7; ++j)
    for (int k = 0; k < 7; ++k) CHECK(std::abs(s.entries(j, k) - (k == j + 1 ? 1.0 : 0.0)) < 1e-13);

  const auto a = MagneticPotential::gaussian_bump_with_flux(0.0, 0.5, 0.6, 3.0);
  const FluxProfile f(a, L);
  const auto t = assemble_toeplitz(flux_symbol(f, BoundaryCondition::Periodic), w);
  CHECK((t.entries - fh_matrix(f.delta_L(), 7).entries).cwiseAbs().maxCoeff() < 1e-9);
  for (int j = 1; j < 7; ++j)
    for (int k = 1; k < 7; ++k) CHECK(std::abs(t.entries(j, k) - t.entries(j - 1, k - 1)) < 1e-9);
}

TEST_CASE("property checks") {
  const double L = 2.0;
  const auto w = ground_state_window(BoundaryCondition::Periodic, L, 9);
  const Symbol one = constant_symbol(1.0);
  const auto rep = toeplitz_property_checks(one, w, assemble_toeplitz(one, w));
  CHECK(rep.ok());

  Symbol two_cos;
  two_cos.value = [L](double x) { return Complex(2.0 + std::cos(kPi * x / L), 0.0); };
  const auto m = assemble_toeplitz(two_cos, w);
  CHECK(toeplitz_property_checks(two_cos, w, m, 4, 1.0).ok());
  CHECK(operator_norm(m.entries.inverse()) <= 1.0 + 1e-8);

  const FluxProfile f(MagneticPotential::gaussian_bump_with_flux(0.0, 0.5, 1.1, 2.0), L);
  const auto fm = flux_matrix(f, BoundaryCondition::Periodic, 9);
  CHECK(operator_norm(fm.entries.inverse()) <= 1.0 / std::cos(f.delta_L()) + 1e-8);

  // A deliberately wrong matrix is caught as a named clause.
  SymbolMatrix wrong = m;
  wrong.entries(0, 1) += 0.1;
  const auto bad = toeplitz_property_checks(two_cos, w, wrong, 4, 1.0);
  CHECK(!bad.ok());
  CHECK(!bad.failures().empty());
}

TEST_CASE("binary and CSV export") {
  SymbolMatrix m = fh_matrix(0.4, 3);
  m.entries(0, 2) = Complex(0.25, -1.5);
  std::stringstream io;
  write_binary(m, io);
  CHECK(io.str().size() == 8 + 4 + 4 + 9 * 16);
  const SymbolMatrix back = read_binary(io);
  CHECK(back.entries == m.entries);
  CHECK(back.kind == m.kind);
  CHECK(back.bc == m.bc);
  std::ostringstream csv;
  write_csv(m, csv);
  CHECK(csv.str().rfind("row,col,re,im\n", 0) == 0);
}
