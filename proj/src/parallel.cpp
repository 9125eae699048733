#include "ppcurve/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace ppcurve {

int threads_from_environment() {
  const char* raw = std::getenv("PPCURVE_THREADS");
  if (raw == nullptr) return 0;
  int value = 0;
  const char* end = raw + std::strlen(raw);
  const auto res = std::from_chars(raw, end, value);
  if (res.ec != std::errc() || res.ptr != end || value < 0) return 0;
  return value;
}

int available_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace ppcurve
