#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace coverlab {

// Every hot kernel ships in two variants: a plain serial loop, kept as the
// reference implementation, and an OpenMP version.  Exec::Auto picks the
// parallel path once the problem is large enough to pay for the fork/join.
// Parallel results are either bit-identical to the serial order (integer
// kernels, disjoint-write butterflies) or within the documented tolerance
// (fixed-block floating-point reductions).
enum class Exec { Auto, Serial, Parallel };

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline bool use_parallel(Exec e, unsigned long long work, unsigned long long threshold = 1u << 15) {
  switch (e) {
    case Exec::Serial: return false;
    case Exec::Parallel: return hardware_threads() > 1;
    default: return hardware_threads() > 1 && work >= threshold;
  }
}

}  // namespace coverlab
