// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/norms/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <omp.h>

namespace parrom
{

int thread_limit()
{
  int n = omp_get_max_threads();
  if (const char *env = std::getenv("PARROM_THREADS"))
  {
    try
    {
      const int cap = std::stoi(env);
      if (cap >= 1)
      {
        n = std::min(n, cap);
      }
    }
    catch (const std::exception &)
    {
      // Malformed values are ignored.
    }
  }
  return std::max(n, 1);
}

}  // namespace parrom
