// One line per criterion; exit status 0 only if every criterion passes.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "torsionlab/verify/acceptance.hpp"

int main(int argc, char** argv) {
  torsionlab::verify::AcceptanceOptions opts;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "-v") verbose = true;
    else if (a == "--seed" && i + 1 < argc) opts.seed = std::strtoull(argv[++i], nullptr, 10);
    else if (a == "--paths" && i + 1 < argc) opts.paths = std::strtoll(argv[++i], nullptr, 10);
  }
  int failed = 0;
  torsionlab::verify::run_acceptance(opts, [&](const torsionlab::verify::CriterionResult& r) {
    if (!r.pass()) ++failed;
    std::printf("criterion %2d %s  %-58s %s (%.1f s)\n", r.id, r.pass() ? "PASS" : "FAIL", r.title.c_str(),
                r.summary().c_str(), r.seconds);
    if (verbose)
      for (const auto& n : r.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
  });
  std::printf("%s: %d of 11 criteria failed\n", failed ? "FAIL" : "PASS", failed);
  return failed ? 1 : 0;
}
