#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace linnik::detail {

/// Runs fn(block) for every block in [0, blocks) on up to `threads` worker
/// threads. Blocks are handed out round-robin so the assignment is fixed;
/// callers write results into per-block slots and reduce in block order.
template <typename Fn>
void for_each_block(uint64_t blocks, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<uint64_t>(blocks, 1))));
  if (threads == 1) {
    for (uint64_t b = 0; b < blocks; ++b) fn(b);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (uint64_t b = t; b < blocks; b += threads) fn(b);
    });
  }
  for (auto& th : pool) th.join();
}

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace linnik::detail
