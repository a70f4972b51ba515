#include "fluxcat/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fluxcat/errors.hpp"
#include "fluxcat/quadrature.hpp"

namespace fluxcat {

namespace {

constexpr double kPi = std::numbers::pi;

struct Evaluator {
  double x;
  double support;

  double operator()(const GaussianBump& g) const {
    if (std::abs(x) > support) return 0.0;
    const double u = (x - g.center) / g.width;
    return g.amplitude * std::exp(-0.5 * u * u);
  }
  double operator()(const PiecewiseLinear& p) const {
    const auto& k = p.knots;
    if (k.empty() || x < k.front().x || x > k.back().x) return 0.0;
    auto it = std::upper_bound(k.begin(), k.end(), x,
                               [](double v, const Knot& kn) { return v < kn.x; });
    if (it == k.end()) return k.back().value;
    const Knot& hi = *it;
    const Knot& lo = *(it - 1);
    const double t = (x - lo.x) / (hi.x - lo.x);
    return lo.value + t * (hi.value - lo.value);
  }
  double operator()(const TableSamples& t) const {
    const std::size_t n = t.values.size();
    if (n == 0) return 0.0;
    const double s = (x - t.x0) / t.dx;
    if (s < 0.0 || s > static_cast<double>(n - 1)) return 0.0;
    if (n == 1) return t.values[0];
    const std::size_t i = std::min(static_cast<std::size_t>(s), n - 2);
    const double f = s - static_cast<double>(i);
    return t.values[i] + f * (t.values[i + 1] - t.values[i]);
  }
};

// Integral of the linear interpolant between (x0, v0) and (x1, v1) over [x0, x].
double linear_piece_integral(double x0, double v0, double x1, double v1, double x) {
  const double h = x - x0;
  const double slope = (v1 - v0) / (x1 - x0);
  return h * (v0 + 0.5 * slope * h);
}

struct Antiderivative {
  double x;
  double support;

  double operator()(const GaussianBump& g) const {
    const double lo = -support;
    const double hi = std::min(x, support);
    if (hi <= lo) return 0.0;
    const double s = g.width * std::numbers::sqrt2;
    return g.amplitude * g.width * std::sqrt(kPi / 2.0) *
           (std::erf((hi - g.center) / s) - std::erf((lo - g.center) / s));
  }
  double operator()(const PiecewiseLinear& p) const {
    const auto& k = p.knots;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      if (x <= k[i].x) break;
      const double end = std::min(x, k[i + 1].x);
      acc += linear_piece_integral(k[i].x, k[i].value, k[i + 1].x, k[i + 1].value, end);
    }
    return acc;
  }
  double operator()(const TableSamples& t) const {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < t.values.size(); ++i) {
      const double a0 = t.x0 + t.dx * static_cast<double>(i);
      if (x <= a0) break;
      const double a1 = a0 + t.dx;
      acc += linear_piece_integral(a0, t.values[i], a1, t.values[i + 1], std::min(x, a1));
    }
    return acc;
  }
};

void append_linear_roots(double x0, double v0, double x1, double v1, std::vector<double>& out) {
  if ((v0 < 0.0 && v1 > 0.0) || (v0 > 0.0 && v1 < 0.0)) {
    out.push_back(x0 + (x1 - x0) * v0 / (v0 - v1));
  }
}

double required_number(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_number()) {
    throw DomainError(std::string("potential: field '") + key + "' must be a number");
  }
  return doc.at(key).get<double>();
}

}  // namespace

MagneticPotential MagneticPotential::zero() { return {PiecewiseLinear{}, 0.0}; }

MagneticPotential MagneticPotential::gaussian_bump(double center, double width, double amplitude,
                                                   double support_radius) {
  if (!(width > 0.0)) throw DomainError("gaussian bump: width must be > 0");
  if (!(support_radius > 0.0)) throw DomainError("gaussian bump: support_radius must be > 0");
  return {GaussianBump{center, width, amplitude}, support_radius};
}

MagneticPotential MagneticPotential::gaussian_bump_with_flux(double center, double width,
                                                             double half_flux,
                                                             double support_radius) {
  auto unit = gaussian_bump(center, width, 1.0, support_radius);
  const double integral = unit.antiderivative(support_radius);
  if (integral == 0.0) throw DomainError("gaussian bump: support excludes the bump");
  return gaussian_bump(center, width, 2.0 * half_flux / integral, support_radius);
}

MagneticPotential MagneticPotential::piecewise_linear(std::vector<Knot> knots) {
  std::sort(knots.begin(), knots.end(), [](const Knot& a, const Knot& b) { return a.x < b.x; });
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (knots[i].x == knots[i + 1].x) throw DomainError("piecewise linear: duplicate knot");
  }
  double radius = 0.0;
  for (const auto& k : knots) radius = std::max(radius, std::abs(k.x));
  return {PiecewiseLinear{std::move(knots)}, radius};
}

MagneticPotential MagneticPotential::table(double x0, double dx, std::vector<double> values) {
  if (!(dx > 0.0)) throw DomainError("table: dx must be > 0");
  const double x1 = x0 + dx * static_cast<double>(values.empty() ? 0 : values.size() - 1);
  const double radius = values.empty() ? 0.0 : std::max(std::abs(x0), std::abs(x1));
  return {TableSamples{x0, dx, std::move(values)}, radius};
}

double MagneticPotential::operator()(double x) const {
  return std::visit(Evaluator{x, support_radius_}, shape_);
}

double MagneticPotential::antiderivative(double x) const {
  return std::visit(Antiderivative{x, support_radius_}, shape_);
}

std::vector<double> MagneticPotential::breakpoints() const {
  std::vector<double> out;
  if (std::holds_alternative<GaussianBump>(shape_)) {
    out = {-support_radius_, support_radius_};
  } else if (const auto* p = std::get_if<PiecewiseLinear>(&shape_)) {
    for (std::size_t i = 0; i < p->knots.size(); ++i) {
      out.push_back(p->knots[i].x);
      if (i + 1 < p->knots.size()) {
        append_linear_roots(p->knots[i].x, p->knots[i].value, p->knots[i + 1].x,
                            p->knots[i + 1].value, out);
      }
    }
  } else if (const auto* t = std::get_if<TableSamples>(&shape_)) {
    for (std::size_t i = 0; i < t->values.size(); ++i) {
      const double xi = t->x0 + t->dx * static_cast<double>(i);
      out.push_back(xi);
      if (i + 1 < t->values.size()) {
        append_linear_roots(xi, t->values[i], xi + t->dx, t->values[i + 1], out);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

MagneticPotential potential_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string()) {
    throw DomainError("potential: expected an object with a string field 'kind'");
  }
  const auto kind = doc.at("kind").get<std::string>();
  if (kind == "zero") return MagneticPotential::zero();
  if (kind == "gaussian_bump") {
    const double center = doc.value("center", 0.0);
    const double width = required_number(doc, "width");
    const double radius = required_number(doc, "support_radius");
    if (doc.contains("half_flux")) {
      return MagneticPotential::gaussian_bump_with_flux(center, width,
                                                        required_number(doc, "half_flux"), radius);
    }
    return MagneticPotential::gaussian_bump(center, width, required_number(doc, "amplitude"),
                                            radius);
  }
  if (kind == "piecewise_linear") {
    if (!doc.contains("knots") || !doc.at("knots").is_array()) {
      throw DomainError("potential: 'knots' must be an array of [x, value] pairs");
    }
    std::vector<Knot> knots;
    for (const auto& k : doc.at("knots")) {
      if (!k.is_array() || k.size() != 2) throw DomainError("potential: knot must be [x, value]");
      knots.push_back({k[0].get<double>(), k[1].get<double>()});
    }
    return MagneticPotential::piecewise_linear(std::move(knots));
  }
  if (kind == "table") {
    if (!doc.contains("values") || !doc.at("values").is_array()) {
      throw DomainError("potential: 'values' must be an array");
    }
    return MagneticPotential::table(required_number(doc, "x0"), required_number(doc, "dx"),
                                    doc.at("values").get<std::vector<double>>());
  }
  throw DomainError("potential: unknown kind '" + kind + "'");
}

nlohmann::json potential_to_json(const MagneticPotential& a) {
  nlohmann::json doc;
  if (const auto* g = std::get_if<GaussianBump>(&a.shape())) {
    doc = {{"kind", "gaussian_bump"},
           {"center", g->center},
           {"width", g->width},
           {"amplitude", g->amplitude},
           {"support_radius", a.support_radius()}};
  } else if (const auto* p = std::get_if<PiecewiseLinear>(&a.shape())) {
    if (p->knots.empty()) return {{"kind", "zero"}};
    auto knots = nlohmann::json::array();
    for (const auto& k : p->knots) knots.push_back({k.x, k.value});
    doc = {{"kind", "piecewise_linear"}, {"knots", knots}};
  } else if (const auto* t = std::get_if<TableSamples>(&a.shape())) {
    doc = {{"kind", "table"}, {"x0", t->x0}, {"dx", t->dx}, {"values", t->values}};
  }
  return doc;
}

FluxProfile::FluxProfile(MagneticPotential a, double L) : a_(std::move(a)), L_(L) {
  if (!(L > 0.0)) throw DomainError("flux_profile: L must be > 0");
  lower_ = a_.antiderivative(-L);
  upper_ = a_.antiderivative(L);
  total_flux_ = 0.5 * (upper_ - lower_);
  const auto d = flux_decomposition(total_flux_);
  n_L_ = d.n;
  delta_L_ = d.delta;
}

double FluxProfile::phi_plus(double x) const { return a_.antiderivative(x) - lower_; }

double FluxProfile::phi_minus(double x) const { return upper_ - a_.antiderivative(x); }

double FluxProfile::phi(double x) const {
  const double F = a_.antiderivative(x);
  return 0.5 * (F - lower_) - 0.5 * (upper_ - F);
}

FluxProfile flux_profile(const MagneticPotential& a, double L) { return FluxProfile(a, L); }

FluxDecomposition flux_decomposition(double total_flux) {
  auto n = static_cast<long>(std::ceil(total_flux / kPi - 0.5));
  double delta = total_flux - static_cast<double>(n) * kPi;
  if (delta > kPi / 2) {
    delta -= kPi;
    ++n;
  } else if (delta <= -kPi / 2) {
    delta += kPi;
    --n;
  }
  return {n, delta};
}

double full_line_flux(const MagneticPotential& a) {
  const double r = a.support_radius() + 1.0;
  return 0.5 * (a.antiderivative(r) - a.antiderivative(-r));
}

double weighted_l1_on(const MagneticPotential& a, double lo, double hi) {
  if (hi <= lo) return 0.0;
  auto cuts = a.breakpoints();
  cuts.push_back(0.0);
  auto integrand = [&a](double y) { return std::abs(y * a(y)); };
  return quad::integrate_piecewise(integrand, lo, hi, cuts, 1e-13).value;
}

MomentIntegrals moment_integrals(const MagneticPotential& a, double L) {
  if (!(L > 0.0)) throw DomainError("moment_integrals: L must be > 0");
  auto cuts = a.breakpoints();
  cuts.push_back(0.0);
  const double lo = -std::min(L, std::max(a.support_radius(), 0.0));
  const double hi = -lo;
  MomentIntegrals m;
  if (hi <= lo) return m;
  m.l1 = quad::integrate_piecewise([&a](double y) { return std::abs(a(y)); }, lo, hi, cuts, 1e-13)
             .value;
  m.weighted_l1 = weighted_l1_on(a, lo, hi);
  return m;
}

}  // namespace fluxcat
