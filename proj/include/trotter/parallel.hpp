#pragma once

#include <cstdint>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace trotter {

/// Runs f(i) for i in [0, count), concurrently when OpenMP is enabled.
/// jobs <= 0 uses the runtime default. Exceptions are collected and one is
/// rethrown after every task has finished; letting one escape a parallel
/// region would terminate the process.
template <class F>
void parallel_for(std::int64_t count, int jobs, F&& f) {
#ifdef _OPENMP
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  std::exception_ptr error = nullptr;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      f(i);
    } catch (...) {
#pragma omp critical(trotter_parallel_for_error)
      {
        if (!error) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
#else
  (void)jobs;
  for (std::int64_t i = 0; i < count; ++i) f(i);
#endif
}

}  // namespace trotter
