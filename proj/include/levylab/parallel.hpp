#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "levylab/rng.hpp"

namespace levylab {

/// Thread count from LEVYLAB_THREADS, falling back to the hardware count.
inline unsigned default_thread_count() {
  if (const char* env = std::getenv("LEVYLAB_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(chunk, begin, end) over [0, total) split into fixed-size chunks.
/// The chunk layout does not depend on the thread count, so callers that
/// seed by chunk index and reduce in chunk order are schedule independent.
template <class Fn>
void for_each_chunk(std::int64_t total, std::int64_t chunk_size, Fn&& fn,
                    unsigned threads = default_thread_count()) {
  if (total <= 0) return;
  const std::int64_t chunks = (total + chunk_size - 1) / chunk_size;
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, chunks));

  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::int64_t c = next++; c < chunks; c = next++) {
      try {
        const std::int64_t begin = c * chunk_size;
        fn(c, begin, std::min(total, begin + chunk_size));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = chunks;
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

inline constexpr std::int64_t mc_chunk_size = 4096;

/// Draws `trials` scalars, chunk c using stream.engine(c). Output order is trial order.
template <class Draw>
std::vector<double> draw_many(std::int64_t trials, const RandomStream& stream, Draw&& draw) {
  std::vector<double> out(static_cast<std::size_t>(std::max<std::int64_t>(trials, 0)));
  for_each_chunk(trials, mc_chunk_size, [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
    Rng rng = stream.engine(static_cast<std::uint64_t>(c));
    for (std::int64_t t = begin; t < end; ++t) out[static_cast<std::size_t>(t)] = draw(rng);
  });
  return out;
}

}  // namespace levylab
