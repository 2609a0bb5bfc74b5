#include "netdiff/parallel.hpp"

#include <cstdlib>
#include <string>

namespace netdiff {

std::size_t worker_count() {
  if (const char* env = std::getenv("NETDIFF_THREADS")) {
    try {
      const long value = std::stol(env);
      if (value > 0) return static_cast<std::size_t>(value);
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace netdiff
