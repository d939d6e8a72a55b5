#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#include <omp.h>

namespace equisym::par {

/// Runs body(i) for i in [0, n) across OpenMP threads.  The first exception thrown by any
/// iteration is rethrown on the calling thread after the loop.
template <class Body>
void for_each_index(std::size_t n, Body&& body) {
  std::exception_ptr error;
  std::mutex guard;
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

/// Serial counterpart of for_each_index.
template <class Body>
void for_each_index_serial(std::size_t n, Body&& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

inline int max_threads() { return omp_get_max_threads(); }
inline void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

}  // namespace equisym::par
