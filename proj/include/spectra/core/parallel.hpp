#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spectra {

/// Serial is the reference path; OpenMP must produce bitwise-identical
/// results (same fixed chunking, partials combined in chunk order).
enum class Exec { Serial, OpenMP };

inline int max_threads() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
#else
  int n = 1;
#endif
  if (const char* env = std::getenv("SPECTRA_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0 && cap < n) n = cap;
  }
  return n;
}

/// Splits [0, n) into a fixed number of chunks (independent of thread
/// count), evaluates chunk_fn(begin, end) per chunk, and folds the partial
/// results in chunk order.
template <class T, class ChunkFn, class Combine>
T chunked_reduce(std::size_t n, T init, ChunkFn chunk_fn, Combine combine,
                 Exec exec = Exec::OpenMP, std::size_t n_chunks = 256) {
  if (n == 0) return init;
  if (n_chunks > n) n_chunks = n;
  std::vector<T> partial(n_chunks, init);
  auto body = [&](std::size_t c) {
    std::size_t begin = n * c / n_chunks;
    std::size_t end = n * (c + 1) / n_chunks;
    partial[c] = chunk_fn(begin, end);
  };
#ifdef _OPENMP
  if (exec == Exec::OpenMP) {
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
    for (long long c = 0; c < static_cast<long long>(n_chunks); ++c) body(static_cast<std::size_t>(c));
  } else {
    for (std::size_t c = 0; c < n_chunks; ++c) body(c);
  }
#else
  (void)exec;
  for (std::size_t c = 0; c < n_chunks; ++c) body(c);
#endif
  T acc = init;
  for (std::size_t c = 0; c < n_chunks; ++c) acc = combine(acc, partial[c]);
  return acc;
}

/// Parallel loop without a reduction (results written to disjoint slots).
template <class Body>
void parallel_for(std::size_t n, Body body, Exec exec = Exec::OpenMP) {
#ifdef _OPENMP
  if (exec == Exec::OpenMP) {
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
    for (long long i = 0; i < static_cast<long long>(n); ++i) body(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace spectra
