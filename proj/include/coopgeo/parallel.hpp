// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace coopgeo {

//! Default worker count: hardware concurrency, at least one.
inline unsigned default_workers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

//! Runs fn(k) for k in [0, reps) on up to `workers` threads and returns the
//! results in index order. Callers derive per-replication randomness from k,
//! so results do not depend on the worker count.
template <class R, class Fn>
std::vector<R> replicate(std::size_t reps, unsigned workers, Fn&& fn) {
  std::vector<R> out(reps);
  const std::size_t nthreads =
      std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(reps, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= reps) return;
      try {
        out[k] = fn(k);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(reps);
        return;
      }
    }
  };
  if (nthreads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace coopgeo
