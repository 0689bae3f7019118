// Acceptance suite runner: one line per criterion, nonzero exit on any
// failure. `--quick` shrinks sample counts for smoke runs; `--only C4`
// restricts to one criterion.

#include <cstring>
#include <iostream>
#include <string>

#include "rcpotts/acceptance.hpp"

int main(int argc, char** argv) {
  rcpotts::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--quick") {
      opts.quick = true;
    } else if (arg == "--inject-fault") {
      opts.inject_fault = true;
    } else if (arg == "--seed" && i + 1 < argc) {
      opts.seed = std::stoull(argv[++i]);
    } else if (arg == "--only" && i + 1 < argc) {
      opts.only = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--quick] [--inject-fault] [--seed N] [--only Ck]\n";
      return 2;
    }
  }

  std::vector<rcpotts::CheckResult> results = rcpotts::run_acceptance_suite(opts);
  bool all_pass = true;
  double total = 0.0;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    total += r.seconds;
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << " - "
              << r.detail << " (" << r.seconds << "s)" << std::endl;
  }
  std::cout << (all_pass ? "acceptance: all criteria passed" : "acceptance: FAILURES")
            << " (" << total << "s total)" << std::endl;
  return all_pass ? 0 : 1;
}
