// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Heavier than the unit suite; budgeted for a few minutes.

#include <bincyc/verify.hpp>

#include <cstdlib>
#include <cstring>
#include <iostream>

int main(int argc, char** argv) {
  bincyc::VerifyOptions opt;
  opt.workers = 8;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::strcmp(argv[i], "--workers") == 0)
      opt.workers = unsigned(std::atoi(argv[i + 1]));
    else if (std::strcmp(argv[i], "--seed") == 0)
      opt.seed = bincyc::u64(std::atoll(argv[i + 1]));
  }
  int failures = bincyc::run_acceptance(std::cout, opt);
  if (failures > 0)
    std::cout << failures << " criterion(s) failed" << std::endl;
  return failures == 0 ? 0 : 1;
}
