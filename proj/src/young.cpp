#include "symext/young.hpp"

#include <stdexcept>

namespace symext {

YoungDiagram::YoungDiagram(int l1, int l2) : lambda1(l1), lambda2(l2) {
  if (l2 < 0 || l1 < l2) throw std::invalid_argument("YoungDiagram: need lambda1 >= lambda2 >= 0");
}

std::string YoungDiagram::to_string() const {
  return "[" + std::to_string(lambda1) + "," + std::to_string(lambda2) + "]";
}

std::vector<YoungDiagram> list_diagrams(int k) {
  if (k < 1) throw std::invalid_argument("list_diagrams: k must be >= 1");
  std::vector<YoungDiagram> out;
  for (int l2 = 0; 2 * l2 <= k; ++l2) out.emplace_back(k - l2, l2);
  return out;
}

std::uint64_t hook_dim(const YoungDiagram& lam) {
  // (l1+l2)! / (l2! l1!) * (l1-l2+1) / (l1+1), i.e. C(k, l2) (l1-l2+1) / (l1+1).
  unsigned __int128 binom = 1;
  const int k = lam.k();
  for (int i = 1; i <= lam.lambda2; ++i) binom = binom * static_cast<unsigned>(k - lam.lambda2 + i) / static_cast<unsigned>(i);
  const unsigned __int128 d = binom * static_cast<unsigned>(lam.weight_count()) / static_cast<unsigned>(lam.lambda1 + 1);
  return static_cast<std::uint64_t>(d);
}

std::uint64_t multiplicity(int k, const YoungDiagram& lam) {
  if (lam.k() != k) throw std::invalid_argument("multiplicity: diagram is not a partition of k");
  // table[l2] holds C_m[m - l2, l2] for the current m.
  std::vector<std::uint64_t> table{1};  // m = 1: [1, 0]
  for (int m = 1; m < k; ++m) {
    std::vector<std::uint64_t> next((m + 1) / 2 + 1, 0);
    for (int l2 = 0; 2 * l2 <= m + 1; ++l2) {
      const int l1 = m + 1 - l2;
      std::uint64_t c = 0;
      // [l1 - 1, l2] at level m (needs l1 - 1 >= l2)
      if (l1 - 1 >= l2) c += table[static_cast<std::size_t>(l2)];
      // [l1, l2 - 1] at level m
      if (l2 >= 1) c += table[static_cast<std::size_t>(l2 - 1)];
      next[static_cast<std::size_t>(l2)] = c;
    }
    table = std::move(next);
  }
  return table.at(static_cast<std::size_t>(lam.lambda2));
}

}  // namespace symext
