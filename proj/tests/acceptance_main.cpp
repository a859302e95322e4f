// Acceptance gate: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion.  Exit status 0 only when all pass.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "ramal/acceptance.hpp"

int main(int argc, char** argv) {
  ramal::u64 seed = 0;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--seed") == 0) seed = std::strtoull(argv[i + 1], nullptr, 10);

  auto results = ramal::run_acceptance(seed);
  std::fputs(ramal::acceptance_report_text(results).c_str(), stdout);
  int failures = 0;
  for (const auto& r : results)
    if (!r.pass) ++failures;
  if (failures) {
    std::fprintf(stdout, "%d criterion(s) failed\n", failures);
    return 1;
  }
  std::fprintf(stdout, "all %zu criteria passed\n", results.size());
  return 0;
}
