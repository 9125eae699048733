#pragma once

#include <cstddef>
#include <exception>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ppcurve {

// Worker budget for replicate-level loops. threads == 1 selects the serial
// reference path; 0 means "OpenMP default".
struct Execution {
  int threads = 0;

  static Execution serial() { return {1}; }
  bool is_serial() const { return threads == 1; }
};

// Worker count from PPCURVE_THREADS, or 0 when unset/invalid.
int threads_from_environment();

int available_threads();

// out[i] = fn(i) for i in [0, count). Each index owns its output slot and its
// own random substream, so the parallel and serial paths agree bit for bit.
template <class T, class Fn>
std::vector<T> map_indexed_serial(std::size_t count, Fn&& fn) {
  std::vector<T> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
  return out;
}

template <class T, class Fn>
std::vector<T> map_indexed(std::size_t count, Fn&& fn, Execution exec = {}) {
#ifdef _OPENMP
  if (exec.is_serial() || count < 2) return map_indexed_serial<T>(count, fn);
  std::vector<T> out(count);
  const int threads = exec.threads > 0 ? exec.threads : omp_get_max_threads();
  const auto n = static_cast<long long>(count);
  // Exceptions must not escape the parallel region; the one from the lowest
  // index is rethrown, as the serial loop would.
  std::exception_ptr error;
  long long error_index = std::numeric_limits<long long>::max();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(ppcurve_map_indexed_error)
      if (i < error_index) {
        error_index = i;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
#else
  (void)exec;
  return map_indexed_serial<T>(count, fn);
#endif
}

}  // namespace ppcurve
