#pragma once

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <thread>
#include <vector>

namespace mcplab {

/// `requested` if positive, else $MCPLAB_THREADS, else the hardware count.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MCPLAB_THREADS")) {
    int v = 0;
    auto [p, ec] = std::from_chars(env, env + std::strlen(env), v);
    if (ec == std::errc() && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(chunk, begin, end) over `chunks` fixed contiguous chunks of
/// [0, count). Chunk boundaries do not depend on the thread count, so
/// per-chunk results combined in chunk order are reproducible.
template <class Fn>
void parallel_chunks(std::size_t count, std::size_t chunks, int threads, Fn&& fn) {
  chunks = std::max<std::size_t>(1, std::min(chunks, count));
  const std::size_t per = (count + chunks - 1) / std::max<std::size_t>(chunks, 1);
  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(chunks)));
  std::vector<std::exception_ptr> errors(nt);
  auto worker = [&](int w) {
    try {
      for (std::size_t c = w; c < chunks; c += nt) {
        const std::size_t b = c * per, e = std::min(count, b + per);
        if (b < e) fn(c, b, e);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (nt == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nt; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace mcplab
