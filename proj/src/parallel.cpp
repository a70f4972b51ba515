#include "fluxcat/parallel.hpp"

namespace fluxcat {

namespace {
int default_workers() {
  static const int n = omp_get_max_threads();
  return n;
}
}  // namespace

void set_worker_count(int k) { omp_set_num_threads(k > 0 ? k : default_workers()); }

int worker_count() { return omp_get_max_threads(); }

}  // namespace fluxcat
