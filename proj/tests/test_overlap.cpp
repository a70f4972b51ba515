#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "fluxcat/errors.hpp"
#include "fluxcat/overlap.hpp"

using namespace fluxcat;
constexpr double kPi = std::numbers::pi;

MagneticPotential bump(double half_flux, double center = 0.0) {
  return MagneticPotential::gaussian_bump_with_flux(center, 0.5, half_flux, 4.0);
}

// Composite Simpson on 2*10^5 cells, independent of the panel quadrature.
Complex simpson(const std::function<Complex(double)>& f, double a, double b) {
  const int n = 200000;
  const double h = (b - a) / n;
  Complex s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

TEST_CASE("zero potential gives the identity") {
  for (auto bc : {BoundaryCondition::Periodic, BoundaryCondition::Dirichlet}) {
    const auto m = overlap_matrix(MagneticPotential::zero(), bc, 6, 3.0);
    CHECK((m.entries - ComplexMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-13);
    const auto r = evaluate_overlap(MagneticPotential::zero(), bc, 6, 3.0);
    CHECK(r.trace_norm_delta < 1e-12);
    CHECK(r.bound == 0.0);
    CHECK(std::abs(r.c_ratio - 1.0) < 1e-12);
  }
}

TEST_CASE("N = 2 periodic overlaps against eigenfunction quadrature") {
  const double L = 4.0;
  const auto a = bump(0.9, 0.3);
  const FluxProfile f(a, L);
  const EigenSystem sys(BoundaryCondition::Periodic, f);
  const auto free_set = ground_state_spec(BoundaryCondition::Periodic, 2, 0).occupied;
  const auto pert_set = ground_state_spec(BoundaryCondition::Periodic, 2, f.n_L()).occupied;
  const auto m = overlap_matrix(a, BoundaryCondition::Periodic, 2, L);
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      const Complex want = simpson(
          [&](double x) { return std::conj(sys.free_eigenfunction(free_set[j], x)) * sys.perturbed_eigenfunction(pert_set[k], x); },
          -L, L);
      CHECK(std::abs(m.entries(j, k) - want) < 1e-10);
    }
  }
}

TEST_CASE("Dirichlet N = 4 overlaps against eigenfunction quadrature") {
  const double L = 4.0;
  const auto a = bump(2.0, -0.4);
  const EigenSystem sys(BoundaryCondition::Dirichlet, FluxProfile(a, L));
  const auto m = overlap_matrix(a, BoundaryCondition::Dirichlet, 4, L);
  for (int j = 1; j <= 4; ++j)
    for (int k = 1; k <= 4; ++k) {
      const Complex want = simpson(
          [&](double x) { return std::conj(sys.free_eigenfunction(j, x)) * sys.perturbed_eigenfunction(k, x); }, -L, L);
      CHECK(std::abs(m.entries(j - 1, k - 1) - want) < 1e-10);
    }
  const auto one = overlap_matrix(a, BoundaryCondition::Dirichlet, 1, L);
  CHECK(std::abs(one.entries(0, 0)) <= 1.0);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(overlap_matrix(bump(0.5), BoundaryCondition::Periodic, 4, 3.0), DomainError);
  CHECK_THROWS_AS(overlap_matrix(bump(0.5), BoundaryCondition::Periodic, 0, 5.0), DomainError);
}

TEST_CASE("flux matrices") {
  for (auto bc : {BoundaryCondition::Periodic, BoundaryCondition::Dirichlet}) {
    CHECK((flux_matrix(MagneticPotential::zero(), bc, 5, 4.0).entries - ComplexMatrix::Identity(5, 5)).norm() == 0.0);
  }
  const auto d = dirichlet_flux_closed_form(kPi / 4, 4);
  CHECK(std::abs(d.entries(0, 1) - Complex(0.0, 2.0 / kPi * std::sqrt(0.5) * 4.0 / 3.0)) < 1e-15);
  CHECK(d.entries(0, 2) == Complex(0.0));
  CHECK(std::abs(d.entries(2, 2) - std::cos(kPi / 4)) < 1e-16);

  // Closed forms equal the assembled discontinuous symbol, including odd n_L.
  const double L = 16.0;
  for (double flux : {kPi / 4, kPi + 0.5, -2 * kPi - 0.3}) {
    const FluxProfile f(bump(flux), L);
    const auto p = assemble_toeplitz(flux_symbol(f, BoundaryCondition::Periodic), ground_state_window(BoundaryCondition::Periodic, L, 64));
    CHECK((p.entries - flux_matrix(f, BoundaryCondition::Periodic, 64).entries).cwiseAbs().maxCoeff() < 1e-9);
    const auto q = assemble_toeplitz(flux_symbol(f, BoundaryCondition::Dirichlet), ground_state_window(BoundaryCondition::Dirichlet, L, 32));
    CHECK((q.entries - flux_matrix(f, BoundaryCondition::Dirichlet, 32).entries).cwiseAbs().maxCoeff() < 1e-9);
  }

  // N = 2 periodic determinant from the closed form.
  const auto two = fh_matrix(kPi / 4, 2).entries;
  const double s0 = std::sin(kPi / 4) / (kPi / 4);
  const double s1 = std::sin(kPi / 4) / (kPi / 4 - kPi), sm1 = std::sin(kPi / 4) / (kPi / 4 + kPi);
  CHECK(std::abs(two.determinant().real() - (s0 * s0 - s1 * sm1)) < 1e-15);
}

TEST_CASE("overlap modulus is at most one and the trace-norm bound holds") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> flux(-4.0, 4.0), c(-1.0, 1.0);
  for (int i = 0; i < 6; ++i) {
    const auto a = MagneticPotential::gaussian_bump_with_flux(c(rng), 0.5, flux(rng), 2.5);
    for (auto bc : {BoundaryCondition::Periodic, BoundaryCondition::Dirichlet}) {
      for (int N : {5, 16, 33}) {
        const double L = std::max(2.5, N / 2.0);
        const auto r = evaluate_overlap(a, bc, N, L);
        CHECK(r.logdet_exact.log_magnitude <= 1e-12);
        CHECK(r.bound_holds);
        CHECK(std::abs(r.c_ratio - std::exp(2 * (r.logdet_exact.log_magnitude - r.logdet_flux.log_magnitude))) < 1e-12 * r.c_ratio);
      }
    }
  }
  const auto a = bump(kPi / 4);
  const auto big = delta_matrix_bound_check(a, BoundaryCondition::Periodic, 256, 128.0);
  CHECK(big.holds);
  // With N = 2 rho L the bound is 2 rho int |y a|, independent of N.
  const double w = moment_integrals(a, 8.0).weighted_l1;
  CHECK(std::abs(delta_trace_norm_bound(BoundaryCondition::Periodic, 16, 8.0, w) - 2.0 * w) < 1e-14);
}

TEST_CASE("symbol split") {
  for (auto bc : {BoundaryCondition::Periodic, BoundaryCondition::Dirichlet}) {
    const SymbolSplit s(FluxProfile(bump(1.3 + kPi, 0.4), 6.0), bc);
    for (int i = 0; i <= 1000; ++i) {
      const double x = -6.0 + 12.0 * i / 1000;
      CHECK(std::abs(s.difference(x) - s.reconstructed(x)) < 1e-12);
    }
    CHECK(s.e_minus(0.0) == 0.0);
    CHECK(s.f_minus(0.0) == 0.0);
    const auto n = split_piece_norms(bump(0.8, 0.4), bc, 12, 6.0);
    CHECK(n.e_plus <= n.bound_plus + 1e-8);
    CHECK(n.f_plus <= n.bound_plus + 1e-8);
    CHECK(n.e_minus <= n.bound_minus + 1e-8);
    CHECK(n.f_minus <= n.bound_minus + 1e-8);
  }
}

TEST_CASE("sweeps and the factorisation band") {
  const std::vector<int> grid = {8, 12, 16, 24, 32};
  const auto rep = lemma_factorization_check(MagneticPotential::zero(), BoundaryCondition::Periodic, grid, 1.0);
  CHECK(rep.within_band);
  CHECK(std::abs(rep.c_min - 1.0) < 1e-12);
  const auto a = bump(kPi / 4);
  const auto ser = overlap_sweep(a, BoundaryCondition::Periodic, grid, 0.5, Execution::Serial);
  const auto par = overlap_sweep(a, BoundaryCondition::Periodic, grid, 0.5, Execution::Parallel);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(ser[i].N == grid[i]);
    CHECK(ser[i].c_ratio == par[i].c_ratio);
    CHECK(ser[i].trace_norm_delta == par[i].trace_norm_delta);
  }
  CHECK_THROWS_AS(lemma_factorization_check(a, BoundaryCondition::Periodic, grid, 0.5, 0.5), DomainError);
}
