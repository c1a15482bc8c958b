#pragma once

#include <atomic>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "popstack/permutation.hpp"

namespace popstack {

// Splits the lexicographic stream over S_n into contiguous chunks, one per
// worker, and merges results in worker order, so every jobs value produces
// identical output.

namespace detail {

// Runs fn(worker, begin_rank, end_rank) over a partition of [0, total).
inline void run_chunked(long long total, int jobs,
                        const std::function<void(int, long long, long long)>& fn) {
  if (jobs < 1) jobs = 1;
  if (jobs == 1 || total < 4096) {
    fn(0, 0, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    long long begin = total * w / jobs;
    long long end = total * (w + 1) / jobs;
    pool.emplace_back(fn, w, begin, end);
  }
  for (auto& t : pool) t.join();
}

// Iterates permutations of rank [begin, end) in lexicographic order.
template <typename Visit>
void for_ranks(int n, long long begin, long long end, Visit&& visit) {
  if (begin >= end) return;
  Permutation p = nth_permutation(n, begin);
  for (long long r = begin; r < end; ++r) {
    if (!visit(static_cast<const Permutation&>(p))) return;
    Permutation::advance(p);
  }
}

}  // namespace detail

inline long long count_permutations(int n, int jobs,
                                    const std::function<bool(const Permutation&)>& pred) {
  const long long total = factorial(n);
  if (jobs < 1) jobs = 1;
  std::vector<long long> local(std::max(jobs, 1), 0);
  detail::run_chunked(total, jobs, [&](int w, long long begin, long long end) {
    long long c = 0;
    detail::for_ranks(n, begin, end, [&](const Permutation& p) {
      if (pred(p)) ++c;
      return true;
    });
    local[w] = c;
  });
  long long sum = 0;
  for (long long c : local) sum += c;  // worker order
  return sum;
}

// Lexicographically first permutation satisfying pred, independent of jobs.
inline std::optional<Permutation> first_permutation_where(
    int n, int jobs, const std::function<bool(const Permutation&)>& pred) {
  const long long total = factorial(n);
  if (jobs < 1) jobs = 1;
  std::vector<std::optional<Permutation>> found(std::max(jobs, 1));
  std::atomic<int> best_worker{jobs};
  detail::run_chunked(total, jobs, [&](int w, long long begin, long long end) {
    detail::for_ranks(n, begin, end, [&](const Permutation& p) {
      if (best_worker.load(std::memory_order_relaxed) < w) return false;  // superseded
      if (pred(p)) {
        found[w] = p;
        int cur = best_worker.load();
        while (w < cur && !best_worker.compare_exchange_weak(cur, w)) {
        }
        return false;  // chunk is lex-ordered: first hit is the chunk minimum
      }
      return true;
    });
  });
  for (int w = 0; w < jobs; ++w)
    if (found[w]) return found[w];
  return std::nullopt;
}

}  // namespace popstack
