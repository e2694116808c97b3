#include "pauligap/parallel.hpp"

#include <cstdlib>
#include <string>

namespace pauligap {

namespace {
std::atomic<int> g_override{0};
}

void set_thread_count(int n) { g_override = n < 0 ? 0 : n; }

int thread_count() {
  if (int n = g_override.load(); n > 0) return n;
  if (const char* env = std::getenv("PAULIGAP_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace pauligap
