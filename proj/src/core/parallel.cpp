#include "ringlab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ringlab {

unsigned thread_cap() {
  if (const char* env = std::getenv("RINGLAB_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace ringlab
