// Serial reference vs OpenMP worker pool on the two heaviest sweeps.
#include <chrono>
#include <cstdio>
#include <numbers>
#include <vector>

#include "fluxcat/asymptotics.hpp"
#include "fluxcat/overlap.hpp"

using namespace fluxcat;

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int main() {
  const double delta = std::numbers::pi / 4;
  const std::vector<int> fh_grid = {128, 181, 256, 362, 512, 724, 1024};
  const std::vector<int> ov_grid = {16, 24, 32, 48, 64, 96};
  const auto a = MagneticPotential::gaussian_bump_with_flux(0.0, 0.5, delta, 4.0);

  std::printf("workers: %d\n", worker_count());
  std::vector<SeriesPoint> s_ser, s_par;
  const double t1 = seconds([&] { s_ser = fh_logdet_series(delta, fh_grid, Execution::Serial); });
  const double t2 = seconds([&] { s_par = fh_logdet_series(delta, fh_grid, Execution::Parallel); });
  bool same = true;
  for (std::size_t i = 0; i < s_ser.size(); ++i) same = same && s_ser[i].value == s_par[i].value;
  std::printf("fh_logdet_series   serial %8.3f s  parallel %8.3f s  speedup %5.2f  identical=%s\n", t1,
              t2, t1 / t2, same ? "yes" : "no");

  std::vector<OverlapResult> o_ser, o_par;
  const double t3 = seconds([&] { o_ser = overlap_sweep(a, BoundaryCondition::Periodic, ov_grid, 1.0, Execution::Serial); });
  const double t4 = seconds([&] { o_par = overlap_sweep(a, BoundaryCondition::Periodic, ov_grid, 1.0, Execution::Parallel); });
  same = true;
  for (std::size_t i = 0; i < o_ser.size(); ++i) same = same && o_ser[i].c_ratio == o_par[i].c_ratio;
  std::printf("overlap_sweep      serial %8.3f s  parallel %8.3f s  speedup %5.2f  identical=%s\n", t3,
              t4, t3 / t4, same ? "yes" : "no");
  return 0;
}
