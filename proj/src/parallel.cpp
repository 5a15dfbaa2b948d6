#include "polycap/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>

namespace polycap {
namespace {

int initial_workers() {
  if (const char* env = std::getenv("POLYCAP_THREADS")) {
    int value = std::atoi(env);
    if (value > 0) return value;
  }
  return 1;
}

std::atomic<int>& workers() {
  static std::atomic<int> value{initial_workers()};
  return value;
}

}  // namespace

int worker_count() { return workers().load(); }

void set_worker_count(int count) { workers().store(std::max(1, count)); }

namespace detail {

bool& inside_parallel_region() {
  thread_local bool inside = false;
  return inside;
}

}  // namespace detail
}  // namespace polycap
