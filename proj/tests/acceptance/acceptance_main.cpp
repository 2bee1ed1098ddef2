#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "symext/acceptance.hpp"

int main(int argc, char** argv) {
  symext::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--seed" && i + 1 < argc) {
      opts.seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (a == "--out-dir" && i + 1 < argc) {
      opts.out_dir = argv[++i];
    } else {
      std::cerr << "usage: symext_acceptance [--seed N] [--out-dir DIR]\n";
      return 1;
    }
  }
  int failed = 0;
  symext::run_acceptance(opts, [&](const symext::CriterionResult& r) {
    std::cout << symext::format_result(r) << std::endl;
    if (!r.passed) ++failed;
  });
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
