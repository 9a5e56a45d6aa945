#pragma once

// Deterministic parallel helpers.
//
// Every reduction splits the index range into fixed blocks of kBlockSize
// terms. Blocks are summed pairwise and the block partials are combined by
// a fixed pairwise tree, so the floating-point result depends only on the
// number of terms and never on how many workers took part.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kitaev {

/// Execution settings. workers == 0 means "use the hardware concurrency".
struct Exec {
  unsigned workers = 1;

  unsigned resolved() const {
    if (workers != 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
  }
};

/// Runs fn(i) for i in [0, n). Work is handed out through an atomic
/// counter; fn must only write to storage owned by index i.
template <class Fn>
void parallel_for(std::size_t n, Exec exec, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(exec.resolved(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    try {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = n;
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace detail {

inline constexpr std::size_t kPairwiseLeaf = 16;

template <class Term>
double pairwise_range(std::size_t lo, std::size_t hi, Term& term) {
  if (hi - lo <= kPairwiseLeaf) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_range(lo, mid, term) + pairwise_range(mid, hi, term);
}

inline double pairwise_values(const double* v, std::size_t n) {
  if (n <= kPairwiseLeaf) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = n / 2;
  return pairwise_values(v, mid) + pairwise_values(v + mid, n - mid);
}

}  // namespace detail

inline constexpr std::size_t kBlockSize = 4096;

/// Pairwise sum of term(0) + ... + term(n-1), bit-identical for any worker
/// count.
template <class Term>
double deterministic_sum(std::size_t n, Term&& term, Exec exec = {}) {
  if (n == 0) return 0.0;
  const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
  if (blocks == 1) return detail::pairwise_range(0, n, term);
  std::vector<double> partial(blocks, 0.0);
  parallel_for(blocks, exec, [&](std::size_t b) {
    const std::size_t lo = b * kBlockSize;
    const std::size_t hi = std::min(n, lo + kBlockSize);
    partial[b] = detail::pairwise_range(lo, hi, term);
  });
  return detail::pairwise_values(partial.data(), partial.size());
}

/// Several sums over the same index range sharing one pass; term(i, out)
/// must write K contributions into out[0..K).
template <std::size_t K, class Term>
std::array<double, K> deterministic_sums(std::size_t n, Term&& term,
                                         Exec exec = {}) {
  std::array<double, K> result{};
  if (n == 0) return result;
  const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<std::array<double, K>> partial(blocks);

  // Pairwise over the block, keeping K accumulators per tree node.
  struct Walker {
    Term& term;
    std::array<double, K> run(std::size_t lo, std::size_t hi) {
      std::array<double, K> acc{};
      if (hi - lo <= detail::kPairwiseLeaf) {
        std::array<double, K> t{};
        for (std::size_t i = lo; i < hi; ++i) {
          term(i, t);
          for (std::size_t k = 0; k < K; ++k) acc[k] += t[k];
        }
        return acc;
      }
      const std::size_t mid = lo + (hi - lo) / 2;
      auto a = run(lo, mid);
      auto b = run(mid, hi);
      for (std::size_t k = 0; k < K; ++k) acc[k] = a[k] + b[k];
      return acc;
    }
  };

  parallel_for(blocks, exec, [&](std::size_t b) {
    Walker w{term};
    const std::size_t lo = b * kBlockSize;
    partial[b] = w.run(lo, std::min(n, lo + kBlockSize));
  });
  if (blocks == 1) return partial[0];
  std::vector<double> column(blocks);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t b = 0; b < blocks; ++b) column[b] = partial[b][k];
    result[k] = detail::pairwise_values(column.data(), blocks);
  }
  return result;
}

}  // namespace kitaev
