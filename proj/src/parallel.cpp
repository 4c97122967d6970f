#include "banachgeo/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace banachgeo {

int default_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BANACHGEO_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 8u));
}

void for_each_chunk(long long total, long long chunk_size, int threads,
                    const std::function<void(int, long long, long long)>& fn) {
  if (total <= 0) return;
  if (chunk_size <= 0) chunk_size = total;
  const int n_chunks = static_cast<int>((total + chunk_size - 1) / chunk_size);
  threads = std::min(default_thread_count(threads), n_chunks);

  auto run_chunk = [&](int c) {
    const long long begin = static_cast<long long>(c) * chunk_size;
    const long long end = std::min(total, begin + chunk_size);
    fn(c, begin, end);
  };

  if (threads <= 1) {
    for (int c = 0; c < n_chunks; ++c) run_chunk(c);
    return;
  }

  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) run_chunk(c);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace banachgeo
