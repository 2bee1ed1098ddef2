// Writes the qutrit counterexample marginal and its fermionic extension.
#include <cmath>
#include <filesystem>
#include <iostream>

#include "symext/instances.hpp"
#include "symext/io.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures OUTPUT_DIR\n";
    return 1;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  const std::string origin = "a(|012>-|021>)+b(|120>-|102>)+c(|201>-|210>) with (a,b,c)=(1,2,3)/sqrt(28)";
  symext::save_state(symext::qutrit_marginal(1, 2, 3), dir / "qutrit_counterexample.state.json",
                     {std::nullopt, "Tr_B2 of " + origin});
  symext::save_state(symext::qutrit_fermionic_extension(1, 2, 3), dir / "qutrit_fermionic_extension.state.json",
                     {std::nullopt, origin});
  return 0;
}
