#include "domlab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace domlab {

std::size_t default_thread_count() {
  if (const char* env = std::getenv("DOMLAB_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_chunks(std::size_t n, std::size_t chunks, std::size_t threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  chunks = std::clamp<std::size_t>(chunks, 1, n);
  auto range = [&](std::size_t c) {
    return std::pair{c * n / chunks, (c + 1) * n / chunks};
  };
  threads = std::clamp<std::size_t>(threads, 1, chunks);
  if (threads == 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      auto [b, e] = range(c);
      body(c, b, e);
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < chunks; c = next++) {
        try {
          auto [b, e] = range(c);
          body(c, b, e);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace domlab
