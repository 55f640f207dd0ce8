#pragma once

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <vector>

#include <omp.h>

namespace gharm {

/// Thread count used by parallel scans. Resolution order: explicit
/// set_thread_count(), GHARM_THREADS environment variable, OpenMP default.
int thread_count();
void set_thread_count(int n);

namespace detail {
inline int& thread_override() {
  static int n = 0;  // 0 = unset
  return n;
}
}  // namespace detail

inline int thread_count() {
  if (detail::thread_override() > 0) return detail::thread_override();
  if (const char* env = std::getenv("GHARM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

inline void set_thread_count(int n) { detail::thread_override() = n; }

/// Evaluates fn(i) for i in [0, n) into a vector. Each slot is written by
/// exactly one iteration, so the result is bit-identical for any thread
/// count; callers reduce the vector serially. Exceptions cannot cross an
/// OpenMP region, so they are captured per slot and the lowest-index one is
/// rethrown afterwards (again independent of thread count).
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count())
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Serial reference path for the same kernel; kept for testing and for the
/// benchmark target.
template <class T, class Fn>
std::vector<T> serial_map(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
  return out;
}

}  // namespace gharm
