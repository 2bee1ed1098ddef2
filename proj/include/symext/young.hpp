#pragma once

// Two-row Young diagrams labelling the joint SU(2) x S_k sectors of k qubits.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace symext {

/// Partition [lambda1, lambda2] of k with lambda1 >= lambda2 >= 0.
/// Spin j = (lambda1 - lambda2) / 2.
struct YoungDiagram {
  int lambda1 = 0;
  int lambda2 = 0;

  YoungDiagram() = default;
  /// Throws std::invalid_argument for lambda1 < lambda2 or negative rows.
  YoungDiagram(int l1, int l2);

  int k() const { return lambda1 + lambda2; }
  /// 2j, an integer.
  int twice_spin() const { return lambda1 - lambda2; }
  /// 2j + 1 weights in the SU(2) multiplet.
  int weight_count() const { return lambda1 - lambda2 + 1; }
  bool is_symmetric() const { return lambda2 == 0; }

  std::string to_string() const;

  // Sorting by decreasing lambda1 is the canonical diagram order.
  friend std::strong_ordering operator<=>(const YoungDiagram& a, const YoungDiagram& b) {
    if (auto c = b.lambda1 <=> a.lambda1; c != 0) return c;
    return a.lambda2 <=> b.lambda2;
  }
  friend bool operator==(const YoungDiagram& a, const YoungDiagram& b) = default;
};

/// All two-row diagrams of k, by decreasing lambda1.
std::vector<YoungDiagram> list_diagrams(int k);

/// Dimension of the S_k irrep from the hook-length formula
/// d = (l1 + l2)! (l1 - l2 + 1) / (l2! (l1 + 1)!).
std::uint64_t hook_dim(const YoungDiagram& lam);

/// Multiplicity of the spin-j multiplet inside (C^2)^{(x) k}, computed by the
/// branching recursion C_{m+1}[l1, l2] = C_m[l1 - 1, l2] + C_m[l1, l2 - 1].
std::uint64_t multiplicity(int k, const YoungDiagram& lam);

}  // namespace symext
