#pragma once

#include <functional>

namespace banachgeo {

// Worker count: explicit request > BANACHGEO_THREADS env > min(hardware, 8).
int default_thread_count(int requested = 0);

// Splits [0, total) into chunks of chunk_size and runs fn(chunk_index, begin, end)
// on a small worker pool. Chunk boundaries depend only on (total, chunk_size);
// callers must reduce per-chunk results in chunk order so totals are bit-stable
// for any worker count.
void for_each_chunk(long long total, long long chunk_size, int threads,
                    const std::function<void(int, long long, long long)>& fn);

}  // namespace banachgeo
