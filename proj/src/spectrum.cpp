#include "fluxcat/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fluxcat/errors.hpp"

namespace fluxcat {

namespace {

constexpr double kPi = std::numbers::pi;

// Neumaier compensated summation; ground-state energies grow like N^3 / L^2 while the
// differences we compare them against shrink like N / L^2.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void check_particles(int N, double L) {
  if (N < 1) throw DomainError("particle number N must be >= 1");
  if (!(L > 0.0)) throw DomainError("half-length L must be > 0");
}

}  // namespace

const char* to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::Periodic ? "periodic" : "dirichlet";
}

BoundaryCondition boundary_condition_from_string(const std::string& name) {
  if (name == "periodic") return BoundaryCondition::Periodic;
  if (name == "dirichlet") return BoundaryCondition::Dirichlet;
  throw DomainError("unknown boundary condition '" + name + "'");
}

GroundStateSpec ground_state_spec(BoundaryCondition bc, int N, long shift) {
  if (N < 1) throw DomainError("particle number N must be >= 1");
  GroundStateSpec spec;
  spec.n = N;
  spec.m = N / 2;
  spec.occupied.reserve(N);
  if (bc == BoundaryCondition::Dirichlet) {
    for (long j = 1; j <= N; ++j) spec.occupied.push_back(j);
    return spec;
  }
  const long first = -spec.m - shift;
  for (long i = 0; i < N; ++i) spec.occupied.push_back(first + i);
  return spec;
}

EigenSystem::EigenSystem(BoundaryCondition bc, FluxProfile flux) : bc_(bc), flux_(std::move(flux)) {}

double EigenSystem::free_eigenvalue(long j) const {
  const double L = flux_.L();
  if (bc_ == BoundaryCondition::Periodic) {
    const double k = kPi * static_cast<double>(j) / L;
    return k * k;
  }
  if (j < 1) throw DomainError("Dirichlet eigenvalues are indexed from 1");
  const double k = kPi * static_cast<double>(j) / (2.0 * L);
  return k * k;
}

double EigenSystem::perturbed_eigenvalue(long j) const {
  if (bc_ == BoundaryCondition::Dirichlet) return free_eigenvalue(j);
  const double k = (static_cast<double>(j) * kPi + flux_.total_flux()) / flux_.L();
  return k * k;
}

std::complex<double> EigenSystem::free_eigenfunction(long j, double x) const {
  const double L = flux_.L();
  if (bc_ == BoundaryCondition::Periodic) {
    return std::polar(1.0 / std::sqrt(2.0 * L), -kPi * static_cast<double>(j) * x / L);
  }
  if (j < 1) throw DomainError("Dirichlet eigenfunctions are indexed from 1");
  const double arg = static_cast<double>(j) * kPi * x / (2.0 * L);
  const double v = (j % 2 == 0 ? std::sin(arg) : std::cos(arg)) / std::sqrt(L);
  return {v, 0.0};
}

std::complex<double> EigenSystem::perturbed_eigenfunction(long j, double x) const {
  const double phase = flux_.phi(x);
  if (bc_ == BoundaryCondition::Dirichlet) {
    return std::polar(1.0, phase) * free_eigenfunction(j, x);
  }
  const double L = flux_.L();
  const double k = (static_cast<double>(j) * kPi + flux_.total_flux()) / L;
  return std::polar(1.0 / std::sqrt(2.0 * L), phase - k * x);
}

double ground_state_energy(BoundaryCondition bc, const FluxProfile& flux, int N, bool perturbed) {
  check_particles(N, flux.L());
  const EigenSystem sys(bc, flux);
  const long shift = (bc == BoundaryCondition::Periodic && perturbed) ? flux.n_L() : 0;
  const auto spec = ground_state_spec(bc, N, shift);
  CompensatedSum sum;
  for (long j : spec.occupied) {
    sum.add(perturbed ? sys.perturbed_eigenvalue(j) : sys.free_eigenvalue(j));
  }
  return sum.value();
}

double ground_state_energy(BoundaryCondition bc, const MagneticPotential& a, int N, double L,
                           bool perturbed) {
  return ground_state_energy(bc, flux_profile(a, L), N, perturbed);
}

double energy_difference(BoundaryCondition bc, const FluxProfile& flux, int N) {
  check_particles(N, flux.L());
  if (bc == BoundaryCondition::Dirichlet) return 0.0;
  const double d = flux.delta_L();
  const double L2 = flux.L() * flux.L();
  return (N % 2 == 1 ? d * d : d * (d - kPi)) * N / L2;
}

double energy_difference(BoundaryCondition bc, const MagneticPotential& a, int N, double L) {
  return energy_difference(bc, flux_profile(a, L), N);
}

double finite_size_energy(double delta, Parity parity, double rho) {
  if (!(rho > 0.0)) throw DomainError("finite_size_energy: rho must be > 0");
  const double r2 = rho * rho;
  return parity == Parity::Odd ? 4.0 * delta * delta * r2 : 4.0 * delta * (delta - kPi) * r2;
}

double finite_size_energy(const MagneticPotential& a, Parity parity, double rho) {
  return finite_size_energy(flux_decomposition(full_line_flux(a)).delta, parity, rho);
}

int count_eigenvalue_collisions(const EigenSystem& sys, long j_max, double tol) {
  std::vector<double> values;
  for (long j = -j_max; j <= j_max; ++j) values.push_back(sys.perturbed_eigenvalue(j));
  std::sort(values.begin(), values.end());
  int collisions = 0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double scale = std::max(1.0, std::abs(values[i + 1]));
    if (values[i + 1] - values[i] <= tol * scale) ++collisions;
  }
  return collisions;
}

}  // namespace fluxcat
