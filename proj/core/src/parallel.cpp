#include "emohot/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace emohot {

unsigned worker_count() noexcept {
  if (const char* env = std::getenv("EMOHOT_THREADS")) {
    unsigned n = 0;
    const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), n);
    if (ec == std::errc{} && n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace emohot
