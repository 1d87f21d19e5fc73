// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_NORMS_PARALLEL_HPP
#define PARROM_NORMS_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <vector>

namespace parrom
{

// Serial is the reference path; Parallel distributes independent nodes over OpenMP threads.
enum class Execution
{
  Serial,
  Parallel
};

// Thread count for parallel sweeps: omp_get_max_threads(), capped by PARROM_THREADS if set.
int thread_limit();

//
// Calls fn(i) for i in [0, n). Each call must write only to its own slot of caller-owned
// storage, so the result does not depend on the schedule. If any calls throw, the exception
// of the smallest index is rethrown after the sweep.
//
template <typename Fn>
void node_sweep(std::size_t n, Execution ex, Fn &&fn)
{
  std::vector<std::exception_ptr> errors(n);
  if (ex == Execution::Serial)
  {
    for (std::size_t i = 0; i < n; i++)
    {
      try
      {
        fn(i);
      }
      catch (...)
      {
        errors[i] = std::current_exception();
      }
    }
  }
  else
  {
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(static) num_threads(thread_limit())
    for (long i = 0; i < count; i++)
    {
      try
      {
        fn(static_cast<std::size_t>(i));
      }
      catch (...)
      {
        errors[i] = std::current_exception();
      }
    }
  }
  for (const auto &e : errors)
  {
    if (e)
    {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace parrom

#endif  // PARROM_NORMS_PARALLEL_HPP
