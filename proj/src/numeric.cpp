#include "gcdlab/numeric.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>

namespace gcdlab {

namespace {
std::atomic<unsigned> g_override{0};
}

unsigned default_parallelism() {
  if (unsigned w = g_override.load(); w > 0) return w;
  if (const char* env = std::getenv("GCDLAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

unsigned set_parallelism(unsigned workers) { return g_override.exchange(workers); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned workers) {
  if (workers == 0) workers = default_parallelism();
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < n; i += workers) body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace gcdlab
