#pragma once

#include <complex>
#include <vector>

#include "fluxcat/potential.hpp"

namespace fluxcat {

enum class BoundaryCondition { Periodic, Dirichlet };

const char* to_string(BoundaryCondition bc);
BoundaryCondition boundary_condition_from_string(const std::string& name);

enum class Parity { Odd, Even };

/// Occupied one-particle indices of an N-fermion ground state.
struct GroundStateSpec {
  int n = 0;
  int m = 0;  // floor(N/2)
  std::vector<long> occupied;
};

/// Periodic window N_{shift}: {-m-shift, ..., m-shift} (odd N) or {-m-shift, ..., m-shift-1}
/// (even N). Dirichlet: {1, ..., N}.
GroundStateSpec ground_state_spec(BoundaryCondition bc, int N, long shift = 0);

/// Closed-form one-particle eigenpairs for the free and the gauge-perturbed Hamiltonian.
class EigenSystem {
 public:
  EigenSystem(BoundaryCondition bc, FluxProfile flux);

  BoundaryCondition bc() const noexcept { return bc_; }
  double L() const noexcept { return flux_.L(); }
  const FluxProfile& flux() const noexcept { return flux_; }

  double free_eigenvalue(long j) const;
  double perturbed_eigenvalue(long j) const;
  std::complex<double> free_eigenfunction(long j, double x) const;
  std::complex<double> perturbed_eigenfunction(long j, double x) const;

 private:
  BoundaryCondition bc_;
  FluxProfile flux_;
};

/// Sum of the N occupied eigenvalues. Periodic perturbed states occupy N_{n_L}, free ones N_0.
double ground_state_energy(BoundaryCondition bc, const FluxProfile& flux, int N, bool perturbed);
double ground_state_energy(BoundaryCondition bc, const MagneticPotential& a, int N, double L,
                           bool perturbed);

/// E_{a,N,L} - E_{0,N,L} in closed form: delta^2 N / L^2 (odd), delta (delta - pi) N / L^2
/// (even), 0 for Dirichlet.
double energy_difference(BoundaryCondition bc, const FluxProfile& flux, int N);
double energy_difference(BoundaryCondition bc, const MagneticPotential& a, int N, double L);

/// Coefficient of 1/N in the energy difference at density rho.
double finite_size_energy(double delta, Parity parity, double rho);
double finite_size_energy(const MagneticPotential& a, Parity parity, double rho);

/// Number of coinciding pairs among the perturbed periodic eigenvalues with |j| <= j_max.
int count_eigenvalue_collisions(const EigenSystem& sys, long j_max, double tol = 1e-12);

}  // namespace fluxcat
