// SPDX-License-Identifier: Apache-2.0
//
// Seeded, block-partitioned random streams. A run of `count` draws is cut
// into fixed-size blocks; block b always uses the engine derived from
// (seed, b), so results do not depend on how many workers process the blocks.

#ifndef FABC_RANDOM_HPP
#define FABC_RANDOM_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace fabc::rng {

using Engine = std::mt19937_64;

inline constexpr std::int64_t kBlockSize = 1 << 16;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Engine for sub-stream `index` of `seed`.
Engine substream(std::uint64_t seed, std::uint64_t index);

/// Uniform on the open interval (0, 1).
inline double open_uniform(Engine& engine) {
  return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
}

inline double standard_exponential(Engine& engine) { return -std::log(open_uniform(engine)); }

/// 0 means "all hardware threads".
unsigned resolve_workers(unsigned requested);

inline std::int64_t block_count(std::int64_t count) { return (count + kBlockSize - 1) / kBlockSize; }

/// Calls fn(block, begin, end) for every block of [0, count). Blocks are
/// distributed over `workers` threads; fn must only touch data owned by its
/// block. The first exception thrown by any block is rethrown.
template <typename Fn>
void for_each_block(std::int64_t count, unsigned workers, Fn&& fn) {
  const std::int64_t blocks = block_count(count);
  auto run = [&](std::int64_t b) {
    const std::int64_t begin = b * kBlockSize;
    const std::int64_t end = std::min(count, begin + kBlockSize);
    fn(b, begin, end);
  };
  const unsigned threads = std::min<std::int64_t>(resolve_workers(workers), blocks);
  if (threads <= 1) {
    for (std::int64_t b = 0; b < blocks; ++b) run(b);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::int64_t b = next++; b < blocks; b = next++) {
        try {
          run(b);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = blocks;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace fabc::rng

#endif  // FABC_RANDOM_HPP
