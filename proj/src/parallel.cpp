#include "psipoint/parallel.hpp"

namespace psipoint {

namespace {
std::atomic<unsigned> g_parallelism{0};
}

void set_parallelism(unsigned workers) { g_parallelism = workers; }

unsigned parallelism() {
  const unsigned k = g_parallelism.load();
  if (k != 0) return k;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace psipoint
