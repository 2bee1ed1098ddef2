#pragma once

// Block coordinates of S_k-invariant operators on A (x) (C^2)^{(x) k}.
//
// An invariant operator is determined by one matrix X_lam per Young diagram,
// acting on A (x) (weights of lam) with row index a * (2j + 1) + weight
// position. The operator itself is
//
//   rho = sum_lam sum X_lam[(a,w),(a',w')] |a><a'| (x) sum_mu |w_mu><w'_mu|,
//
// so every multiplicity copy mu carries the same X_lam, tr rho = sum_lam d_lam tr X_lam,
// and rho is PSD exactly when every X_lam is.

#include <cstddef>
#include <map>
#include <vector>

#include "symext/linalg.hpp"
#include "symext/schur_basis.hpp"
#include "symext/young.hpp"

namespace symext {

class BlockState {
 public:
  using BlockMap = std::map<YoungDiagram, ComplexMatrix>;

  /// Checks partition, shape and Hermiticity of every block. Diagrams that are
  /// absent are zero blocks.
  BlockState(int k, std::size_t dA, BlockMap blocks);

  int k() const { return k_; }
  std::size_t dA() const { return dA_; }
  const BlockMap& blocks() const { return blocks_; }
  /// Block of `lam`, or nullptr when it is zero.
  const ComplexMatrix* find(const YoungDiagram& lam) const;

  static std::size_t block_dim(std::size_t dA, const YoungDiagram& lam) {
    return dA * static_cast<std::size_t>(lam.weight_count());
  }

  /// sum_lam d_lam tr X_lam.
  double weighted_trace() const;

  /// Throws std::invalid_argument unless every block is PSD within tol and
  /// the weighted trace is 1 within tol.
  void validate(double tol = kPsdTol) const;

 private:
  int k_;
  std::size_t dA_;
  BlockMap blocks_;
};

/// Per-weight coefficients mapping one block onto the A (x) B_1 marginal.
struct MarginalStencil {
  std::vector<double> t0;     // |0><0| weight of each diagonal weight entry
  std::vector<double> t1;     // |1><1| weight
  std::vector<double> alpha;  // |0><1| weight of entry (w, w + 1); size 2j
};
MarginalStencil marginal_stencil(const YoungDiagram& lam, int k);

/// Embed into the full space A (x) (C^2)^{(x) k}.
DensityMatrix blocks_to_global(const BlockState& bs, const SchurBasis& basis);

/// Block coordinates of the S_k twirl of rho (exact commutant projection).
BlockState global_to_blocks(const DensityMatrix& rho, const SchurBasis& basis);

/// A (x) B_1 marginal from block coordinates, via the diagonal t0/t1 weights and
/// the raising coefficients alpha. Equal to the partial trace of
/// blocks_to_global(bs) onto (A, B_1).
DensityMatrix marginal_from_blocks(const BlockState& bs);

}  // namespace symext
