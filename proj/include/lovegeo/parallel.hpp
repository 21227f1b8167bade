#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lovegeo {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Data-parallel loop over [0, count).  Each index must touch only its own
// output slots; reductions are done serially afterwards in index order so
// parallel results stay bit-identical to the serial reference.
template <class F>
void parallel_for(std::ptrdiff_t count, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) body(i);
#else
  for (std::ptrdiff_t i = 0; i < count; ++i) body(i);
#endif
}

}  // namespace lovegeo
