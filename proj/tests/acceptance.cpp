#include <cstdio>
#include <functional>
#include <vector>

#include "psipoint/verify.hpp"

using namespace psipoint;

namespace {

struct Criterion {
  int id;
  const char* title;
  std::function<SuiteResult()> run;
  double limit_seconds;  // 0: no limit
};

}  // namespace

int main() {
  const std::vector<std::pair<std::size_t, int>> envelope{{3, 3}, {4, 2}};
  const std::vector<std::size_t> kernel_ns{2, 3, 4};
  const std::vector<std::pair<int, std::size_t>> dr_cases{{0, 3}, {1, 3}, {2, 3}, {1, 4}};
  const auto specs = default_forgotten_specs();

  const std::vector<Criterion> criteria{
      {1, "one-point function through x^13", [] { return one_point_suite(13); }, 1.0},
      {2, "two-point function through degree 12", [] { return two_point_suite(12); }, 0},
      {3, "oracle agreement n=3 g<=3, n=4 g<=2", [&] { return oracle_suite(envelope); }, 60.0},
      {4, "string equation n=2,3,4 through order 9", [] { return string_suite(4, 9); }, 0},
      {5, "kernel invariants n=2,3,4 on 3 random vectors", [&] { return kernel_suite(kernel_ns, 3, 6, 20240501); }, 0},
      {6, "DR route independence", [&] { return dr_route_suite(dr_cases); }, 0},
      {7, "forgotten points, 12 specs with m<=2, sum(d)<=6", [&] { return forgotten_suite(specs, 6); }, 0},
      {8, "DR polynomiality n<=3, sum(d)<=5", [] { return polynomiality_suite(3, 5); }, 0},
      {9, "C_n identity through k=20", [] { return cn_suite(20); }, 0},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const SuiteResult r = c.run();
    const bool in_time = c.limit_seconds == 0 || r.seconds < c.limit_seconds;
    const bool pass = r.ok() && r.checked > 0 && in_time;
    std::printf("%s criterion %d: %s (%d checks, %.2f s)\n", pass ? "PASS" : "FAIL", c.id, c.title,
                r.checked, r.seconds);
    if (!in_time) std::printf("    runtime limit %.0f s exceeded\n", c.limit_seconds);
    for (std::size_t i = 0; i < r.failures.size() && i < 5; ++i) std::printf("    %s\n", r.failures[i].c_str());
    failed += pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
