#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

#include "fplap/acceptance.hpp"

int main(int argc, char** argv) {
  fplap::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc) {
      opts.jobs = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      opts.only.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--jobs N] [--only ID]...\n";
      return 2;
    }
  }
  if (opts.jobs < 1) opts.jobs = 1;

  int failed = 0;
  for (const auto& r : fplap::run_acceptance(opts)) {
    std::cout << fplap::format_line(r) << std::endl;
    if (!r.detail.empty()) std::cout << "       " << r.detail << std::endl;
    if (!r.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
