#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace lacsum {

// Worker count from LACSUM_THREADS, else the hardware concurrency.
unsigned default_worker_count();

// 0 means default_worker_count().
unsigned resolve_workers(unsigned requested);

// Runs body(i) for i in [0, count) on up to `workers` threads. Chunks are
// claimed dynamically, so callers must write results by index.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

// Pairwise reduction in a fixed tree order, independent of how the parts
// were produced. `parts` must be nonempty.
template <class T, class Merge>
T tree_reduce(std::vector<T> parts, Merge merge) {
  while (parts.size() > 1) {
    std::vector<T> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
      next.push_back(merge(std::move(parts[i]), std::move(parts[i + 1])));
    }
    if (parts.size() % 2 == 1) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return std::move(parts.front());
}

// Evaluates one accumulator per chunk in parallel and reduces them in fixed
// order. The result is bit-identical for any worker count.
template <class Acc, class ChunkFn, class Merge>
Acc chunked_reduce(std::size_t num_chunks, unsigned workers, ChunkFn chunk_fn, Merge merge) {
  std::vector<Acc> parts(num_chunks);
  parallel_for(num_chunks, workers, [&](std::size_t c) { parts[c] = chunk_fn(c); });
  return tree_reduce(std::move(parts), merge);
}

}  // namespace lacsum
