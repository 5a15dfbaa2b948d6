#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace polycap {

/// Worker count for data-parallel sums. Initialized from POLYCAP_THREADS
/// (default 1); values < 1 are clamped to 1.
int worker_count();
void set_worker_count(int workers);

namespace detail {

bool& inside_parallel_region();

template <class T, class Term>
T pairwise_sum(std::size_t begin, std::size_t end, const Term& term) {
  if (end - begin == 1) return term(begin);
  const std::size_t mid = begin + (end - begin) / 2;
  T left = pairwise_sum<T>(begin, mid, term);
  T right = pairwise_sum<T>(mid, end, term);
  return left + right;
}

}  // namespace detail

/// Sum of term(0) + ... + term(count - 1) with a fixed pairwise reduction
/// tree. Blocks of kLeafBlock terms are summed independently (possibly on
/// several threads) and then combined pairwise, so the floating-point result
/// does not depend on the worker count. Nested calls run serially.
template <class T, class Term>
T tree_sum(std::size_t count, const Term& term) {
  constexpr std::size_t kLeafBlock = 256;
  if (count == 0) return T(0);
  const std::size_t blocks = (count + kLeafBlock - 1) / kLeafBlock;
  std::vector<T> partial(blocks, T(0));
  auto run_block = [&](std::size_t b) {
    const std::size_t begin = b * kLeafBlock;
    const std::size_t end = std::min(count, begin + kLeafBlock);
    partial[b] = detail::pairwise_sum<T>(begin, end, term);
  };
  const int workers = std::min<int>(worker_count(), static_cast<int>(blocks));
  if (workers <= 1 || detail::inside_parallel_region()) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        detail::inside_parallel_region() = true;
        for (std::size_t b = w; b < blocks; b += workers) run_block(b);
      });
    }
    for (auto& t : threads) t.join();
  }
  return detail::pairwise_sum<T>(0, blocks, [&](std::size_t b) { return partial[b]; });
}

}  // namespace polycap
