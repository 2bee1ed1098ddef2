#pragma once

// Planted extendible instances: random PSD blocks and their A (x) B marginal.

#include <cstdint>
#include <string>

#include "symext/block_state.hpp"

namespace symext {

enum class GeneratorProfile {
  AllDiagrams,       // every diagram of k
  ExcludeSymmetric,  // every diagram except [k, 0]
};

std::string to_string(GeneratorProfile p);
/// Accepts "all" and "exclude-bosonic". Throws std::invalid_argument otherwise.
GeneratorProfile parse_profile(const std::string& s);

struct PlantedInstance {
  DensityMatrix marginal;
  BlockState witness;
};

/// Blocks X = G G^dagger with complex Gaussian G, scaled so that
/// sum_lam d_lam tr X_lam = 1. Deterministic per seed.
/// Requires 1 <= k <= 12 (or SYMEXT_MAX_K) and 1 <= dA <= 4.
PlantedInstance gen_random_extendible(int k, std::size_t dA, std::uint64_t seed,
                                      GeneratorProfile profile = GeneratorProfile::AllDiagrams);

}  // namespace symext
