#pragma once

#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace fluxcat {

/// a(x) = amplitude * exp(-((x - center) / width)^2 / 2), cut to |x| <= support_radius.
struct GaussianBump {
  double center = 0.0;
  double width = 1.0;
  double amplitude = 0.0;
};

struct Knot {
  double x = 0.0;
  double value = 0.0;
};

/// Linear interpolation between knots (sorted by x); zero outside [x_front, x_back].
struct PiecewiseLinear {
  std::vector<Knot> knots;
};

/// Samples on the uniform grid x0 + i*dx, linearly interpolated; zero outside.
struct TableSamples {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<double> values;
};

/// Compactly supported 1D magnetic vector potential: a(x) = 0 for |x| > support_radius().
class MagneticPotential {
 public:
  using Shape = std::variant<GaussianBump, PiecewiseLinear, TableSamples>;

  static MagneticPotential zero();
  static MagneticPotential gaussian_bump(double center, double width, double amplitude,
                                         double support_radius);
  /// Gaussian bump scaled so that half of its integral equals `half_flux`.
  static MagneticPotential gaussian_bump_with_flux(double center, double width, double half_flux,
                                                   double support_radius);
  static MagneticPotential piecewise_linear(std::vector<Knot> knots);
  static MagneticPotential table(double x0, double dx, std::vector<double> values);

  double operator()(double x) const;

  /// Exact antiderivative: integral of a over (-inf, x].
  double antiderivative(double x) const;

  double support_radius() const noexcept { return support_radius_; }
  const Shape& shape() const noexcept { return shape_; }

  /// Points where a or |a| is not smooth (support edges, knots, sign changes).
  std::vector<double> breakpoints() const;

 private:
  MagneticPotential(Shape shape, double support_radius)
      : shape_(std::move(shape)), support_radius_(support_radius) {}

  Shape shape_;
  double support_radius_;
};

/// Parses {"kind": "zero" | "gaussian_bump" | "piecewise_linear" | "table", ...}.
MagneticPotential potential_from_json(const nlohmann::json& doc);
nlohmann::json potential_to_json(const MagneticPotential& a);

/// Flux quantities on [-L, L]. phi(x) = (1/2) int_{-L}^x a - (1/2) int_x^L a.
class FluxProfile {
 public:
  FluxProfile(MagneticPotential a, double L);

  double L() const noexcept { return L_; }
  double total_flux() const noexcept { return total_flux_; }
  long n_L() const noexcept { return n_L_; }
  double delta_L() const noexcept { return delta_L_; }

  double phi(double x) const;
  /// int_{-L}^x a
  double phi_plus(double x) const;
  /// int_x^L a
  double phi_minus(double x) const;

  const MagneticPotential& potential() const noexcept { return a_; }

 private:
  MagneticPotential a_;
  double L_;
  double lower_;  // antiderivative at -L
  double upper_;  // antiderivative at +L
  double total_flux_;
  long n_L_;
  double delta_L_;
};

struct FluxDecomposition {
  long n = 0;
  double delta = 0.0;
};

FluxProfile flux_profile(const MagneticPotential& a, double L);

/// total = n*pi + delta with delta in (-pi/2, pi/2].
FluxDecomposition flux_decomposition(double total_flux);

/// Half of the full-line integral of a, the L -> infinity limit of the total flux.
double full_line_flux(const MagneticPotential& a);

struct MomentIntegrals {
  double l1 = 0.0;           // int_{-L}^{L} |a|
  double weighted_l1 = 0.0;  // int_{-L}^{L} |y a(y)|
};

MomentIntegrals moment_integrals(const MagneticPotential& a, double L);

/// int_{lo}^{hi} |y a(y)| dy, used for the one-sided trace-norm bounds.
double weighted_l1_on(const MagneticPotential& a, double lo, double hi);

}  // namespace fluxcat
