#pragma once

// Small thread helpers. Work is split into fixed-size blocks whose
// boundaries do not depend on the thread count, and block results are
// combined with a fixed pairwise tree, so floating reductions are
// bit-identical for any number of threads.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace crlab {

/// 0 means "machine parallelism".
unsigned resolve_threads(unsigned requested);

/// Calls body(i) for i in [0, count), distributing indices over threads.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  threads = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline constexpr std::size_t kReductionBlock = 4096;

/// Pairwise tree sum of values[0..n), left to right at every level.
double pairwise_sum(std::vector<double> values);

/// sum_{i = first}^{last - 1} term(i). Each block of kReductionBlock indices is
/// accumulated in increasing i; block sums are combined by pairwise_sum.
template <class Term>
double deterministic_sum(std::uint64_t first, std::uint64_t last, unsigned threads, Term&& term) {
  if (last <= first) return 0.0;
  const std::uint64_t count = last - first;
  const std::size_t blocks = static_cast<std::size_t>((count + kReductionBlock - 1) / kReductionBlock);
  std::vector<double> partial(blocks, 0.0);
  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::uint64_t lo = first + b * kReductionBlock;
    const std::uint64_t hi = std::min<std::uint64_t>(last, lo + kReductionBlock);
    double acc = 0.0;
    for (std::uint64_t i = lo; i < hi; ++i) acc += term(i);
    partial[b] = acc;
  });
  return pairwise_sum(std::move(partial));
}

}  // namespace crlab
