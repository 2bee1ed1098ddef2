#include "symext/generate.hpp"

#include <random>
#include <stdexcept>

#include "symext/limits.hpp"

namespace symext {

std::string to_string(GeneratorProfile p) {
  return p == GeneratorProfile::AllDiagrams ? "all" : "exclude-bosonic";
}

GeneratorProfile parse_profile(const std::string& s) {
  if (s == "all") return GeneratorProfile::AllDiagrams;
  if (s == "exclude-bosonic") return GeneratorProfile::ExcludeSymmetric;
  throw std::invalid_argument("unknown profile '" + s + "' (expected all or exclude-bosonic)");
}

PlantedInstance gen_random_extendible(int k, std::size_t dA, std::uint64_t seed, GeneratorProfile profile) {
  require_k_in_range(k, max_full_space_k(), "gen_random_extendible");
  if (dA < 1 || dA > 4) throw std::out_of_range("gen_random_extendible: dA must be in 1..4");
  if (k == 1 && profile == GeneratorProfile::ExcludeSymmetric)
    throw std::invalid_argument("gen_random_extendible: k = 1 has no non-symmetric diagram");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  BlockState::BlockMap blocks;
  double total = 0.0;
  for (const auto& lam : list_diagrams(k)) {
    if (profile == GeneratorProfile::ExcludeSymmetric && lam.is_symmetric()) continue;
    const auto n = static_cast<Eigen::Index>(BlockState::block_dim(dA, lam));
    ComplexMatrix G(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i) {
        const double re = g(rng);
        const double im = g(rng);
        G(i, j) = Complex(re, im);
      }
    ComplexMatrix X = G * G.adjoint();
    X = 0.5 * (X + X.adjoint()).eval();
    total += static_cast<double>(hook_dim(lam)) * X.trace().real();
    blocks.emplace(lam, std::move(X));
  }
  for (auto& [lam, X] : blocks) X /= total;
  BlockState witness(k, dA, std::move(blocks));
  DensityMatrix marginal = marginal_from_blocks(witness);
  return {std::move(marginal), std::move(witness)};
}

}  // namespace symext
