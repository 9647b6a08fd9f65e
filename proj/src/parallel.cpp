#include "biharm/parallel.hpp"

#include <cstdlib>
#include <string>

namespace biharm {

unsigned thread_count() {
  if (const char* env = std::getenv("BIHARM_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace biharm
