// One line per acceptance criterion; exits non-zero if any fails.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "suite.hpp"

int main(int argc, char** argv) {
  gpdact::cli::SuiteOptions opt;
  if (const char* env = std::getenv("GPDACT_SEED")) opt.seed = std::strtoull(env, nullptr, 10);
  bool verbose = false;
  for (int i = 1; i < argc; ++i) verbose = verbose || std::string(argv[i]) == "-v";

  int failed = 0;
  for (auto fn : gpdact::cli::criteria()) {
    const auto r = fn(opt);
    std::printf("%s criterion %d: %s (%zu checks, %.0f ms)\n", r.pass() ? "PASS" : "FAIL", r.id, r.title.c_str(),
                r.checks.size(), r.ms);
    for (const auto& c : r.checks)
      if (!c.pass || verbose)
        std::printf("    %s %s%s%s\n", c.pass ? "ok  " : "FAIL", c.name.c_str(), c.witness.empty() ? "" : ": ",
                    c.witness.c_str());
    std::fflush(stdout);
    failed += r.pass() ? 0 : 1;
  }
  std::printf("%d of %zu criteria failed\n", failed, gpdact::cli::criteria().size());
  return failed == 0 ? 0 : 1;
}
