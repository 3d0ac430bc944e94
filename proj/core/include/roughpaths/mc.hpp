#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <thread>
#include <vector>

namespace rp {

// splitmix64; used to derive independent per-sample streams from (seed, index).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x51ed2701a42dbf2bULL));
}

inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(stream_seed(seed, index));
}

// Runs fn(begin, end) over [0, count) split into contiguous blocks, one per
// worker. Results must be written to disjoint slots so the merge is
// order-independent.
inline void parallel_blocks(std::int64_t count,
                            const std::function<void(std::int64_t, std::int64_t)>& fn,
                            int workers = 0) {
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (count < 2 * workers) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  const std::int64_t block = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t b = w * block;
    const std::int64_t e = std::min<std::int64_t>(count, b + block);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace rp
