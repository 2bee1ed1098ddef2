#pragma once

// Joint SU(2) x S_k basis of (C^2)^{(x) k} built by coupling one spin-1/2 at a
// time (Condon-Shortley phases). A basis vector is labelled by its Young
// diagram, its coupling path (multiplicity label) and its J_z weight.
//
// Within a sector of fixed weight the transform is a real orthogonal matrix,
// so the basis is stored per weight sector: the computational indices with a
// given number of ones and the columns that span them.

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "symext/linalg.hpp"
#include "symext/young.hpp"

namespace symext {

/// J_z eigenvalue, stored doubled so half-integers stay exact.
/// |1> carries +1/2 and |0> carries -1/2.
struct Weight {
  int twice = 0;

  static Weight from_ones(int ones, int k) { return Weight{2 * ones - k}; }
  int ones(int k) const { return (k + twice) / 2; }
  double value() const { return 0.5 * twice; }
  std::string to_string() const;

  auto operator<=>(const Weight&) const = default;
};

/// Ascending weights -j, ..., j of a diagram's multiplet.
std::vector<Weight> weights_of(const YoungDiagram& lam);
/// Position of `w` in weights_of(lam); throws std::invalid_argument if absent.
std::size_t weight_position(const YoungDiagram& lam, Weight w);

/// Intermediate spins j_1 = 1/2, j_2, ..., j_k (stored doubled) of a sequential
/// coupling. In bijection with the standard tableaux of the final diagram.
struct CouplingPath {
  std::vector<int> twice_spins;

  int final_twice_spin() const { return twice_spins.back(); }
  std::string to_string() const;

  auto operator<=>(const CouplingPath&) const = default;
};

class SchurBasis {
 public:
  struct Label {
    YoungDiagram diagram;
    std::size_t path = 0;
    Weight weight;
  };

  /// Computational states with a fixed number of ones and the basis columns
  /// spanning them.
  struct Sector {
    int ones = 0;
    std::vector<std::size_t> indices;  // ascending computational indices
    RealMatrix columns;                // indices.size() x indices.size(), orthogonal
    std::vector<Label> labels;         // label of each column
  };

  int k() const { return k_; }
  std::size_t dim() const { return std::size_t{1} << k_; }
  const std::vector<YoungDiagram>& diagrams() const { return diagrams_; }
  const std::vector<CouplingPath>& paths(const YoungDiagram& lam) const;
  const std::vector<Sector>& sectors() const { return sectors_; }
  const Sector& sector(Weight w) const;

  /// Column of (lam, path, w) inside sector(w).
  std::size_t column(const YoungDiagram& lam, std::size_t path, Weight w) const;

  /// Dense vector in C^{2^k}.
  KetVector vector(const YoungDiagram& lam, std::size_t path, Weight w) const;

  /// Every label, ordered by diagram, then path, then ascending weight.
  std::vector<Label> labels() const;

 private:
  friend SchurBasis build_schur_basis(int k);

  int k_ = 0;
  std::vector<YoungDiagram> diagrams_;
  std::vector<std::vector<CouplingPath>> paths_;            // parallel to diagrams_
  std::vector<std::vector<std::size_t>> first_column_;      // [diagram][path] offset per sector
  std::vector<Sector> sectors_;                             // indexed by number of ones

  std::size_t diagram_index(const YoungDiagram& lam) const;
};

/// Throws std::out_of_range unless 1 <= k <= max_full_space_k().
SchurBasis build_schur_basis(int k);

/// Normalized uniform superposition of the k-qubit states with k/2 + w ones.
KetVector dicke(int k, Weight w);

/// Total raising operator J_+ = sum_i J_+^(i) on k qubits.
KetVector jplus_apply(const KetVector& v, int k);
/// Total lowering operator J_- = sum_i J_-^(i) on k qubits.
KetVector jminus_apply(const KetVector& v, int k);

/// Diagnostic text export, one line per basis vector:
///   l1,l2 | j_1,j_2,... | w | a_0 a_1 ...
/// with amplitudes printed as re+imi to 17 significant digits.
void write_basis(std::ostream& os, const SchurBasis& basis);

}  // namespace symext
