#include "fluxcat/matrixcore.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include <Eigen/SVD>

#include "fluxcat/double_double.hpp"
#include "fluxcat/errors.hpp"
#include "fluxcat/quadrature.hpp"

namespace fluxcat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kResyncEvery = 32;

struct Panel {
  double a;
  double b;
};

// Splits [-L, L] at 0, +-L and the symbol breakpoints, caps panel width, then bisects
// panels until the 16-point rule agrees with its two-halves refinement on both f and
// f * exp(i omega_max x).
std::vector<Panel> build_panels(const Symbol& symbol, double L, double omega_max, double tol,
                                int worst_row, int worst_col) {
  std::vector<double> cuts{-L, 0.0, L};
  for (double x : symbol.breakpoints) {
    if (x > -L && x < L) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double wavelength = omega_max > 0.0 ? 2.0 * kPi / omega_max : 2.0 * L;
  const double max_width = wavelength / 8.0;

  const auto& f = symbol.value;
  auto probe_hi = [&](double x) { return f(x) * std::polar(1.0, omega_max * x); };

  std::vector<Panel> out;
  double worst = 0.0;
  bool failed = false;

  auto refine = [&](auto&& self, double a, double b, Complex coarse0, Complex coarse1,
                    int depth) -> void {
    const double mid = 0.5 * (a + b);
    const Complex l0 = quad::gauss_panel(f, a, mid);
    const Complex r0 = quad::gauss_panel(f, mid, b);
    const Complex l1 = quad::gauss_panel(probe_hi, a, mid);
    const Complex r1 = quad::gauss_panel(probe_hi, mid, b);
    const double err = std::max(std::abs(l0 + r0 - coarse0), std::abs(l1 + r1 - coarse1));
    const double budget = tol * (b - a);
    if (err <= budget || depth == 0) {
      if (err > budget) {
        failed = true;
        worst = std::max(worst, err);
      }
      out.push_back({a, mid});
      out.push_back({mid, b});
      return;
    }
    self(self, a, mid, l0, l1, depth - 1);
    self(self, mid, b, r0, r1, depth - 1);
  };

  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double len = cuts[s + 1] - cuts[s];
    const auto count = static_cast<long>(std::ceil(len / max_width));
    for (long p = 0; p < count; ++p) {
      const double a = cuts[s] + len * static_cast<double>(p) / static_cast<double>(count);
      const double b = p + 1 == count
                           ? cuts[s + 1]
                           : cuts[s] + len * static_cast<double>(p + 1) / static_cast<double>(count);
      refine(refine, a, b, quad::gauss_panel(f, a, b), quad::gauss_panel(probe_hi, a, b), 40);
    }
  }
  if (failed) {
    throw NumericalError("assemble_toeplitz: quadrature did not converge; worst entry (" +
                             std::to_string(worst_row) + ", " + std::to_string(worst_col) + ")",
                         worst / (2.0 * L));
  }
  return out;
}

// Moment sums: nodes are summed per panel, panel sums are folded in with Neumaier
// compensation so that round-off does not grow with the panel count.
class MomentAccumulator {
 public:
  explicit MomentAccumulator(std::size_t n) : panel_(n), sum_(n), comp_(n) {}

  std::vector<Complex>& panel() { return panel_; }

  void fold() {
    for (std::size_t i = 0; i < panel_.size(); ++i) {
      add(sum_[i].real(), comp_[i].real(), panel_[i].real(), sum_[i], comp_[i], false);
      add(sum_[i].imag(), comp_[i].imag(), panel_[i].imag(), sum_[i], comp_[i], true);
      panel_[i] = 0.0;
    }
  }

  Complex value(std::size_t i) const { return sum_[i] + comp_[i]; }

 private:
  static void add(double s, double c, double v, Complex& sum, Complex& comp, bool imag) {
    const double t = s + v;
    c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
    if (imag) {
      sum.imag(t);
      comp.imag(c);
    } else {
      sum.real(t);
      comp.real(c);
    }
  }

  std::vector<Complex> panel_, sum_, comp_;
};

template <class Visit>
void for_each_node(const std::vector<Panel>& panels, MomentAccumulator& acc, Visit&& visit) {
  const auto& rule = quad::gauss_legendre_16();
  for (const auto& p : panels) {
    const double half = 0.5 * (p.b - p.a);
    const double mid = 0.5 * (p.a + p.b);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      visit(mid + half * rule.nodes[i], half * rule.weights[i], acc.panel());
    }
    acc.fold();
  }
}

SymbolMatrix assemble_periodic(const Symbol& symbol, const BasisWindow& basis, double tol) {
  const int N = basis.size;
  const double L = basis.L;
  const double omega_max = kPi * (N - 1) / L;
  const auto panels = build_panels(symbol, L, omega_max, tol, N - 1, 0);

  // c_n = (1/2L) int f(x) exp(i pi n x / L) dx for n = -(N-1) .. N-1.
  // Slots 0..N-1 hold c_n, slots N..2N-1 hold c_{-n}.
  MomentAccumulator acc(2 * static_cast<std::size_t>(N));
  for_each_node(panels, acc, [&](double x, double w, std::vector<Complex>& m) {
    const Complex v = symbol.value(x) * (w / (2.0 * L));
    const Complex z = std::polar(1.0, kPi * x / L);
    Complex p = 1.0;
    for (int n = 0; n < N; ++n) {
      if (n % kResyncEvery == 0) p = std::polar(1.0, kPi * n * x / L);
      m[n] += v * p;
      m[N + n] += v * std::conj(p);
      p *= z;
    }
  });
  std::vector<Complex> pos(N), neg(N);
  for (int n = 0; n < N; ++n) {
    pos[n] = acc.value(n);
    neg[n] = acc.value(N + n);
  }

  SymbolMatrix out;
  out.entries.resize(N, N);
  for (int r = 0; r < N; ++r) {
    for (int c = 0; c < N; ++c) {
      const int n = r - c;
      out.entries(r, c) = n >= 0 ? pos[n] : neg[-n];
    }
  }
  out.bc = BoundaryCondition::Periodic;
  out.kind = symbol.kind;
  out.L = L;
  return out;
}

SymbolMatrix assemble_dirichlet(const Symbol& symbol, const BasisWindow& basis, double tol) {
  const int N = basis.size;
  const double L = basis.L;
  const int top = 2 * N;
  const double omega_max = kPi * top / (2.0 * L);
  const auto panels = build_panels(symbol, L, omega_max, tol, N - 1, N);

  // C_m, S_m = (1/2L) int f(x) {cos, sin}(pi m x / 2L) dx for m = 0 .. 2N.
  const int width = top + 1;
  MomentAccumulator acc(2 * static_cast<std::size_t>(width));
  for_each_node(panels, acc, [&](double x, double w, std::vector<Complex>& mom) {
    const Complex v = symbol.value(x) * (w / (2.0 * L));
    const Complex y = std::polar(1.0, kPi * x / (2.0 * L));
    Complex p = 1.0;
    for (int m = 0; m <= top; ++m) {
      if (m % kResyncEvery == 0) p = std::polar(1.0, kPi * m * x / (2.0 * L));
      mom[m] += v * p.real();
      mom[width + m] += v * p.imag();
      p *= y;
    }
  });
  std::vector<Complex> C(width), S(width);
  for (int m = 0; m < width; ++m) {
    C[m] = acc.value(m);
    S[m] = acc.value(width + m);
  }
  auto sine = [&](int m) { return m >= 0 ? S[m] : -S[-m]; };

  SymbolMatrix out;
  out.entries.resize(N, N);
  for (int j = 1; j <= N; ++j) {
    for (int k = 1; k <= N; ++k) {
      const bool j_even = j % 2 == 0;
      const bool k_even = k % 2 == 0;
      const int d = j - k;
      const int s = j + k;
      Complex v;
      if (j_even && k_even) {
        v = C[std::abs(d)] - C[s];
      } else if (!j_even && !k_even) {
        v = C[std::abs(d)] + C[s];
      } else if (j_even) {
        v = sine(d) + S[s];
      } else {
        v = -sine(d) + S[s];
      }
      out.entries(j - 1, k - 1) = v;
    }
  }
  out.bc = BoundaryCondition::Dirichlet;
  out.kind = symbol.kind;
  out.L = L;
  return out;
}

double wrap_phase(Complex unit) {
  double p = std::arg(unit);
  if (p <= -kPi) p += 2.0 * kPi;
  return p;
}

template <class Lu>
LogDetReport report_from_lu(const Lu& lu) {
  LogDetReport rep;
  const auto& packed = lu.matrixLU();
  const Eigen::Index n = packed.rows();
  double log_mag = 0.0;
  Complex unit = static_cast<double>(lu.permutationP().determinant());
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex u = packed(i, i);
    const double a = std::abs(u);
    if (a == 0.0) {
      rep.value = {-std::numeric_limits<double>::infinity(), 0.0};
      rep.rcond = 0.0;
      return rep;
    }
    log_mag += std::log(a);
    unit *= u / a;
    if (i % 64 == 63) unit /= std::abs(unit);
  }
  rep.value = {log_mag, wrap_phase(unit)};
  rep.rcond = lu.rcond();
  return rep;
}

bool is_real(const ComplexMatrix& m) { return (m.imag().array() == 0.0).all(); }

}  // namespace

const char* to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::ExactGauge:
      return "exact_gauge";
    case SymbolKind::DiscontinuousFlux:
      return "discontinuous_flux";
    case SymbolKind::Custom:
      break;
  }
  return "custom";
}

BasisWindow ground_state_window(BoundaryCondition bc, double L, int N) {
  BasisWindow w;
  w.bc = bc;
  w.L = L;
  w.size = N;
  w.first = bc == BoundaryCondition::Periodic ? -static_cast<long>(N / 2) : 1;
  return w;
}

SymbolMatrix assemble_toeplitz(const Symbol& symbol, const BasisWindow& basis,
                               double quadrature_tol) {
  if (basis.size < 1) throw DomainError("assemble_toeplitz: window size must be >= 1");
  if (!(basis.L > 0.0)) throw DomainError("assemble_toeplitz: L must be > 0");
  if (!symbol.value) throw DomainError("assemble_toeplitz: empty symbol");
  return basis.bc == BoundaryCondition::Periodic
             ? assemble_periodic(symbol, basis, quadrature_tol)
             : assemble_dirichlet(symbol, basis, quadrature_tol);
}

double fh_coefficient(double delta, long n) {
  if (n == 0) {
    if (std::abs(delta) < 1e-4) {
      const double d2 = delta * delta;
      return 1.0 - d2 / 6.0 + d2 * d2 / 120.0;
    }
    return std::sin(delta) / delta;
  }
  return std::sin(delta) / (delta - kPi * static_cast<double>(n));
}

SymbolMatrix fh_matrix(double delta, int N) {
  if (!(std::abs(delta) < kPi / 2)) throw DomainError("fh_matrix: need |delta| < pi/2");
  if (N < 1) throw DomainError("fh_matrix: N must be >= 1");
  std::vector<double> coeff(2 * N - 1);
  for (long n = -(N - 1); n <= N - 1; ++n) coeff[n + N - 1] = fh_coefficient(delta, n);
  SymbolMatrix out;
  out.entries.resize(N, N);
  for (int r = 0; r < N; ++r) {
    for (int c = 0; c < N; ++c) out.entries(r, c) = coeff[r - c + N - 1];
  }
  out.bc = BoundaryCondition::Periodic;
  out.kind = SymbolKind::DiscontinuousFlux;
  return out;
}

LogDetReport log_det_report(const ComplexMatrix& m, double recheck_rcond) {
  if (m.rows() != m.cols()) throw DomainError("log_det: matrix must be square");
  if (m.rows() == 0) return {};
  LogDetReport rep;
  if (is_real(m)) {
    const Eigen::MatrixXd re = m.real();
    rep = report_from_lu(Eigen::PartialPivLU<Eigen::MatrixXd>(re));
  } else {
    rep = report_from_lu(Eigen::PartialPivLU<ComplexMatrix>(m));
  }
  if (std::isfinite(rep.value.log_magnitude) && rep.rcond < recheck_rcond) {
    rep.value = log_det_extended(m);
    rep.extended_precision = true;
  }
  return rep;
}

LogDet log_det(const ComplexMatrix& m) { return log_det_report(m).value; }

LogDet log_det(const SymbolMatrix& m) { return log_det(m.entries); }

LogDet log_det_extended(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("log_det: matrix must be square");
  const Eigen::Index n = m.rows();
  std::vector<dd::Complex> a(static_cast<std::size_t>(n * n));
  auto at = [&](Eigen::Index r, Eigen::Index c) -> dd::Complex& {
    return a[static_cast<std::size_t>(r * n + c)];
  };
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) at(r, c) = {m(r, c).real(), m(r, c).imag()};
  }
  double log_mag = 0.0;
  Complex unit = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    double best = dd::norm(at(k, k)).to_double();
    for (Eigen::Index r = k + 1; r < n; ++r) {
      const double v = dd::norm(at(r, k)).to_double();
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0};
    if (piv != k) {
      for (Eigen::Index c = 0; c < n; ++c) std::swap(at(k, c), at(piv, c));
      unit = -unit;
    }
    const dd::Complex pivot = at(k, k);
    for (Eigen::Index r = k + 1; r < n; ++r) {
      const dd::Complex factor = at(r, k) / pivot;
      for (Eigen::Index c = k + 1; c < n; ++c) at(r, c) = at(r, c) - factor * at(k, c);
    }
    const dd::Real nrm = dd::norm(pivot);
    log_mag += 0.5 * (std::log(nrm.hi) + std::log1p(nrm.lo / nrm.hi));
    const Complex u(pivot.re.to_double(), pivot.im.to_double());
    unit *= u / std::abs(u);
  }
  return {log_mag, wrap_phase(unit)};
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (m.size() == 0) return {};
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

double trace_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (double s : singular_values(m)) sum += s;
  return sum;
}

double operator_norm(const ComplexMatrix& m, const PowerIterationOptions& opts) {
  const Eigen::Index n = m.cols();
  if (n == 0 || m.rows() == 0) return 0.0;
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(1.0 + 0.25 * unif(rng), 0.25 * unif(rng));
  v.normalize();

  double prev = -1.0;
  double current = 0.0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    const Eigen::VectorXcd w = m * v;
    current = w.squaredNorm();  // Rayleigh quotient of m^* m at unit v
    if (current == 0.0 && it == 0) {
      // v landed in the kernel; restart along a coordinate axis.
      v.setZero();
      v(n - 1) = 1.0;
      continue;
    }
    if (prev >= 0.0 && std::abs(current - prev) <= opts.rel_tol * current) {
      return std::sqrt(current);
    }
    Eigen::VectorXcd u = m.adjoint() * w;
    const double un = u.norm();
    if (un == 0.0) return 0.0;
    v = u / un;
    prev = current;
  }
  throw NumericalError("operator_norm: power iteration stagnated (last iterates " +
                           std::to_string(std::sqrt(prev)) + ", " +
                           std::to_string(std::sqrt(current)) + ")",
                       std::abs(current - prev) / std::max(current, 1e-300));
}

bool PropertyReport::ok() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const auto& c) { return c.passed; });
}

std::vector<std::string> PropertyReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : clauses) {
    if (!c.passed) out.push_back(c.name + ": " + c.detail);
  }
  return out;
}

PropertyReport toeplitz_property_checks(const Symbol& f, const BasisWindow& basis,
                                        const SymbolMatrix& matrix, std::uint64_t seed,
                                        double delta_lower_bound) {
  PropertyReport report;
  const ComplexMatrix& T = matrix.entries;
  const double L = basis.L;
  char buf[256];

  // (i) linearity against a random trigonometric companion symbol.
  {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<Complex> coeff(7);
    for (auto& c : coeff) c = Complex(gauss(rng), gauss(rng));
    const Complex alpha(gauss(rng), gauss(rng));
    const Complex beta(gauss(rng), gauss(rng));
    Symbol h;
    h.value = [coeff, L](double x) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < coeff.size(); ++k) {
        s += coeff[k] * std::polar(1.0, kPi * (static_cast<double>(k) - 3.0) * x / L);
      }
      return s;
    };
    Symbol combo;
    combo.value = [&f, &h, alpha, beta](double x) { return alpha * f.value(x) + beta * h.value(x); };
    combo.breakpoints = f.breakpoints;
    const ComplexMatrix lhs = assemble_toeplitz(combo, basis).entries;
    const ComplexMatrix rhs = alpha * T + beta * assemble_toeplitz(h, basis).entries;
    const double err = (lhs - rhs).cwiseAbs().maxCoeff();
    std::snprintf(buf, sizeof buf, "max |T(af+bh) - aT(f) - bT(h)| = %.3e", err);
    report.clauses.push_back({"linearity", true, err <= 1e-9, buf});
  }

  // Sample the symbol to decide which clauses apply.
  constexpr int kSamples = 4001;
  double max_imag = 0.0;
  double min_re = std::numeric_limits<double>::infinity();
  double max_re = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kSamples; ++i) {
    const double x = -L + 2.0 * L * i / (kSamples - 1);
    const Complex v = f.value(x);
    max_imag = std::max(max_imag, std::abs(v.imag()));
    min_re = std::min(min_re, v.real());
    max_re = std::max(max_re, v.real());
  }
  const bool real_symbol = max_imag <= 1e-14;

  // (ii) self-adjointness for real f.
  {
    PropertyClause c{"self_adjoint", real_symbol, true, "symbol not real"};
    if (real_symbol) {
      const double err = (T - T.adjoint()).cwiseAbs().maxCoeff();
      c.passed = err <= 1e-10;
      std::snprintf(buf, sizeof buf, "max |T - T*| = %.3e", err);
      c.detail = buf;
    }
    report.clauses.push_back(c);
  }

  // (iii) positive semidefinite for f >= 0.
  {
    const bool applicable = real_symbol && min_re >= 0.0;
    PropertyClause c{"positive_semidefinite", applicable, true, "symbol not nonnegative"};
    if (applicable) {
      const ComplexMatrix herm = 0.5 * (T + T.adjoint());
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
      const double lo = es.eigenvalues().minCoeff();
      c.passed = lo >= -1e-10;
      std::snprintf(buf, sizeof buf, "smallest eigenvalue = %.3e", lo);
      c.detail = buf;
    }
    report.clauses.push_back(c);
  }

  // (iv) ||T^{-1}|| <= 1/delta when +-Re f >= delta > 0.
  {
    double delta = delta_lower_bound;
    if (!(delta > 0.0)) delta = min_re > 0.0 ? min_re : (max_re < 0.0 ? -max_re : 0.0);
    const bool applicable = delta > 0.0;
    PropertyClause c{"inverse_bound", applicable, true, "real part of symbol changes sign"};
    if (applicable) {
      const ComplexMatrix inv = T.partialPivLu().inverse();
      const double nrm = operator_norm(inv);
      c.passed = nrm <= 1.0 / delta + 1e-8;
      std::snprintf(buf, sizeof buf, "||T^-1|| = %.12g, 1/delta = %.12g", nrm, 1.0 / delta);
      c.detail = buf;
    }
    report.clauses.push_back(c);
  }
  return report;
}

void write_binary(const SymbolMatrix& m, std::ostream& out) {
  static_assert(std::endian::native == std::endian::little, "binary export assumes little-endian");
  const std::int64_t n = m.size();
  const auto bc = static_cast<std::int32_t>(m.bc == BoundaryCondition::Periodic ? 0 : 1);
  const auto kind = static_cast<std::int32_t>(m.kind);
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(&bc), sizeof bc);
  out.write(reinterpret_cast<const char*>(&kind), sizeof kind);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const double pair[2] = {m.entries(r, c).real(), m.entries(r, c).imag()};
      out.write(reinterpret_cast<const char*>(pair), sizeof pair);
    }
  }
}

SymbolMatrix read_binary(std::istream& in, double L) {
  std::int64_t n = 0;
  std::int32_t bc = 0, kind = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  in.read(reinterpret_cast<char*>(&bc), sizeof bc);
  in.read(reinterpret_cast<char*>(&kind), sizeof kind);
  if (!in || n < 0 || bc < 0 || bc > 1 || kind < 0 || kind > 2) {
    throw DomainError("read_binary: malformed header");
  }
  SymbolMatrix m;
  m.entries.resize(n, n);
  m.bc = bc == 0 ? BoundaryCondition::Periodic : BoundaryCondition::Dirichlet;
  m.kind = static_cast<SymbolKind>(kind);
  m.L = L;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      double pair[2];
      in.read(reinterpret_cast<char*>(pair), sizeof pair);
      m.entries(r, c) = Complex(pair[0], pair[1]);
    }
  }
  if (!in) throw DomainError("read_binary: truncated payload");
  return m;
}

void write_csv(const SymbolMatrix& m, std::ostream& out) {
  out << "row,col,re,im\n";
  char buf[96];
  for (Eigen::Index r = 0; r < m.entries.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.entries.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%ld,%ld,%.17g,%.17g\n", static_cast<long>(r),
                    static_cast<long>(c), m.entries(r, c).real(), m.entries(r, c).imag());
      out << buf;
    }
  }
}

}  // namespace fluxcat
