#include "fluxcat/selftest.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "fluxcat/asymptotics.hpp"
#include "fluxcat/hilbert.hpp"
#include "fluxcat/overlap.hpp"
#include "fluxcat/polygamma.hpp"
#include "fluxcat/quadrature.hpp"

namespace fluxcat {

namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
  bool ok;
  std::string detail;
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

Check within(double got, double want, double tol) {
  return {std::abs(got - want) <= tol, "got " + num(got) + ", want " + num(want) + " +- " + num(tol)};
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

MagneticPotential bump() { return MagneticPotential::gaussian_bump_with_flux(0.3, 0.5, kPi / 4, 4.0); }

const std::vector<std::pair<std::string, std::function<Check()>>>& cases() {
  static const std::vector<std::pair<std::string, std::function<Check()>>> list = {
      {"quadrature: int_0^pi sin = 2",
       [] {
         const auto r = quad::integrate_adaptive([](double x) { return std::sin(x); }, 0.0, kPi);
         return within(r.value, 2.0, 1e-13);
       }},
      {"flux: total = n pi + delta, delta in (-pi/2, pi/2]",
       [] {
         std::mt19937_64 rng(7);
         std::uniform_real_distribution<double> u(-20.0, 20.0);
         for (int i = 0; i < 200; ++i) {
           const double t = u(rng);
           const auto d = flux_decomposition(t);
           if (!(d.delta > -kPi / 2 && d.delta <= kPi / 2) || std::abs(d.n * kPi + d.delta - t) > 1e-12)
             return Check{false, "t = " + num(t)};
         }
         return Check{true, "200 samples"};
       }},
      {"flux: phi(-L) = -phi(L), phi+ + phi- = int a",
       [] {
         const FluxProfile f(bump(), 5.0);
         const double total = f.phi_plus(5.0);
         const double worst = std::max(std::abs(f.phi(-5.0) + f.phi(5.0)),
                                       std::abs(f.phi_plus(0.7) + f.phi_minus(0.7) - total));
         return within(worst, 0.0, 1e-13);
       }},
      {"polygamma: psi(1) = -gamma, psi_1(1) = pi^2/6",
       [] {
         const double e = std::max(std::abs(digamma(1.0) + 0.57721566490153286),
                                   std::abs(trigamma(1.0) - kPi * kPi / 6));
         return within(e, 0.0, 1e-14);
       }},
      {"energy: closed form equals direct sum",
       [] {
         const MagneticPotential a = bump();
         double worst = 0.0;
         for (int N : {5, 6, 17, 40}) {
           const double L = N / 2.0 + 4.0;
           for (auto bc : {BoundaryCondition::Periodic, BoundaryCondition::Dirichlet}) {
             const double direct = ground_state_energy(bc, a, N, L, true) -
                                   ground_state_energy(bc, a, N, L, false);
             const double closed = energy_difference(bc, a, N, L);
             worst = std::max(worst, std::abs(direct - closed) /
                                         std::max(1.0, ground_state_energy(bc, a, N, L, false)));
           }
         }
         return within(worst, 0.0, 1e-13);
       }},
      {"matrix: assembled flux symbol equals closed form (periodic N=16, Dirichlet N=8)",
       [] {
         const double L = 8.0;
         const FluxProfile f(bump(), L);
         double worst = 0.0;
         for (auto [bc, N] : {std::pair{BoundaryCondition::Periodic, 16},
                              std::pair{BoundaryCondition::Dirichlet, 8}}) {
           const auto assembled = assemble_toeplitz(flux_symbol(f, bc), ground_state_window(bc, L, N));
           worst = std::max(worst, max_abs_diff(assembled.entries, flux_matrix(f, bc, N).entries));
         }
         return within(worst, 0.0, 1e-9);
       }},
      {"matrix: Toeplitz properties for a positive symbol",
       [] {
         Symbol s;
         s.value = [](double x) { return Complex(1.5 + std::cos(x) + 0.3 * std::sin(3 * x), 0.0); };
         s.breakpoints = {};
         const BasisWindow w = ground_state_window(BoundaryCondition::Periodic, 3.0, 12);
         const auto m = assemble_toeplitz(s, w);
         const auto rep = toeplitz_property_checks(s, w, m, 3, 0.5 - 0.3);
         std::string d;
         for (const auto& f : rep.failures()) d += f + " ";
         return Check{rep.ok(), d.empty() ? "all clauses hold" : d};
       }},
      {"matrix: LU log-det agrees with extended precision",
       [] {
         std::mt19937_64 rng(11);
         std::normal_distribution<double> g;
         ComplexMatrix m(20, 20);
         for (int i = 0; i < 20; ++i)
           for (int j = 0; j < 20; ++j) m(i, j) = Complex(g(rng), g(rng));
         const LogDet a = log_det(m), b = log_det_extended(m);
         return within(std::abs(a.log_magnitude - b.log_magnitude) + std::abs(std::arg(std::polar(1.0, a.phase - b.phase))),
                       0.0, 1e-11);
       }},
      {"asymptotics: Anderson integral equals N - ||T_N||_F^2",
       [] {
         const double d = 0.7;
         const int N = 32;
         const double frob = fh_matrix(d, N).entries.squaredNorm();
         return within(anderson_integral(d, N).value, N - frob, 1e-11);
       }},
      {"asymptotics: |Dtilde|^2 <= exp(-I)",
       [] {
         for (double d : {kPi / 8, kPi / 4, 3 * kPi / 8, -kPi / 3}) {
           for (int N : {8, 33, 64}) {
             const auto b = upper_bound_check(log_det(fh_matrix(d, N)), anderson_integral(d, N), 1e-8);
             if (!b.holds) return Check{false, "delta " + num(d) + " N " + std::to_string(N)};
           }
         }
         return Check{true, "12 points"};
       }},
      {"asymptotics: fit recovers a planted slope",
       [] {
         std::vector<SeriesPoint> s;
         for (double N : {10.0, 20.0, 40.0, 80.0, 160.0}) s.push_back({N, -0.3 * std::log(N) + 1.25});
         return within(fit_decay_exponent(s).slope, -0.3, 1e-12);
       }},
      {"overlap: symbol split reconstructs exp(i g) - exp(i g~)",
       [] {
         double worst = 0.0;
         for (auto bc : {BoundaryCondition::Periodic, BoundaryCondition::Dirichlet}) {
           const SymbolSplit s(FluxProfile(bump(), 6.0), bc);
           for (int i = 0; i <= 400; ++i) {
             const double x = -6.0 + 12.0 * i / 400;
             worst = std::max(worst, std::abs(s.difference(x) - s.reconstructed(x)));
           }
         }
         return within(worst, 0.0, 1e-13);
       }},
      {"overlap: trace-norm bound on Delta_N",
       [] {
         for (auto bc : {BoundaryCondition::Periodic, BoundaryCondition::Dirichlet}) {
           const auto r = delta_matrix_bound_check(bump(), bc, 16, 8.0);
           if (!r.holds) return Check{false, num(r.trace_norm_delta) + " > " + num(r.bound)};
         }
         return Check{true, "periodic and Dirichlet"};
       }},
      {"overlap: |D|^2 <= 1 and a = 0 gives 1",
       [] {
         const auto r = evaluate_overlap(bump(), BoundaryCondition::Periodic, 12, 6.0);
         const auto z = evaluate_overlap(MagneticPotential::zero(), BoundaryCondition::Periodic, 12, 6.0);
         const bool ok = r.logdet_exact.log_magnitude <= 1e-12 && std::abs(z.logdet_exact.log_magnitude) < 1e-12;
         return Check{ok, "log|D| = " + num(r.logdet_exact.log_magnitude)};
       }},
      {"hilbert: K = sum of four parts, K-- by flip",
       [] {
         const KMatrix k = k_matrix(12);
         const auto& p = *k.parts;
         const double e1 = (k.entries - (p.mm + p.pm + p.mp + p.pp)).cwiseAbs().maxCoeff();
         const double e2 = (p.mm - k_minus_minus_by_flip(12)).cwiseAbs().maxCoeff();
         return within(std::max(e1, e2), 0.0, 1e-12);
       }},
      {"hilbert: block determinant equals reduced K determinant",
       [] {
         const double d = kPi / 4;
         const int M = 8;
         const LogDet block = log_det(dirichlet_flux_closed_form(d, 2 * M));
         const LogDet reduced = dirichlet_flux_logdet(d, M);
         const LogDet lead = dirichlet_leading_logdet(d, M);
         const LogDet rem = dirichlet_remainder_logdet(d, M);
         return within(std::max(std::abs(block.log_magnitude - reduced.log_magnitude),
                                std::abs(lead.log_magnitude + rem.log_magnitude - reduced.log_magnitude)),
                       0.0, 1e-10);
       }},
      {"hilbert: section norms increase and stay below pi",
       [] {
         double prev = 0.0;
         for (int M : {2, 4, 8, 16, 32, 64}) {
           const double n = hilbert_section_norm(M);
           if (!(n > prev && n < kPi)) return Check{false, "M " + std::to_string(M) + " norm " + num(n)};
           prev = n;
         }
         return Check{true, "last " + num(prev)};
       }},
  };
  return list;
}

}  // namespace

std::vector<SelfTestCase> run_selftest(std::ostream& out) {
  std::vector<SelfTestCase> results;
  for (const auto& [name, fn] : cases()) {
    SelfTestCase c{name, false, ""};
    try {
      const Check r = fn();
      c.passed = r.ok;
      c.detail = r.detail;
    } catch (const std::exception& e) {
      c.detail = std::string("threw: ") + e.what();
    }
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << " (" << c.detail << ")\n";
    results.push_back(std::move(c));
  }
  return results;
}

}  // namespace fluxcat
