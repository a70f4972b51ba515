#pragma once

#include <cstddef>
#include <exception>

#include <omp.h>

namespace fluxcat {

enum class Execution { Serial, Parallel };

/// Sets the OpenMP team size used by parallel sweeps; k <= 0 restores the default.
void set_worker_count(int k);
int worker_count();

/// Calls body(i) for i in [0, n). The serial branch is the reference the parallel one is
/// tested against; each index writes only its own output slot, so results are identical.
template <class Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
  if (exec == Execution::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long r = 0; r < count; ++r) {
    // Largest grid points first: they dominate the runtime.
    const auto i = static_cast<std::size_t>(count - 1 - r);
    try {
      body(i);
    } catch (...) {
#pragma omp critical(fluxcat_for_each_index)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace fluxcat
