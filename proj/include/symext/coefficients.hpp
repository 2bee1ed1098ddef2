#pragma once

// Closed-form coefficient tables that connect each Schur sector to the
// single-qubit marginal, and the matrices that transplant a sector onto the
// symmetric subspace without changing that marginal.

#include <vector>

#include "symext/linalg.hpp"
#include "symext/schur_basis.hpp"
#include "symext/young.hpp"

namespace symext {

/// Diagonal of Tr_{(B_1)^c}[(1/d) sum_mu |w_mu><w_mu|] = t0 |0><0| + t1 |1><1|.
struct DiagonalWeights {
  double t0;
  double t1;
};
/// t0 = (k - 2w) / (2k), t1 = (k + 2w) / (2k).
DiagonalWeights diagonal_weights(int k, Weight w);

/// Raising coefficient of the single-qubit marginal:
/// (1/d) Tr_{(B_1)^c} sum_mu |w_mu><w'_mu| = alpha |0><1|, with
/// alpha = delta_{w+1,w'} / k * sqrt((j - w)(j + w + 1)).
/// Zero unless w' = w + 1.
double alpha_coeff(const YoungDiagram& lam, Weight w, Weight w_p, int k);

/// Entry (w, w') of the bosonic transplant matrix: 1 on the diagonal, the
/// alpha ratio alpha^lam / alpha^[k,0] for neighbouring weights, and
/// xi(w) xi(w') for weights two or more apart.
double p_coeff(const YoungDiagram& lam, Weight w, Weight w_p, int k);

/// Real nonnegative xi with xi(w) xi(w+1) = p(w, w+1) and |xi| <= 1, anchored
/// at the neighbouring pair of largest p. Indexed by weight position.
/// Throws std::logic_error if some |xi| exceeds 1.
std::vector<double> xi_vector(const YoungDiagram& lam, int k);

/// P = xi xi^T + diag(1 - xi^2): unit diagonal, P(w, w+1) = p(w, w+1), PSD.
RealMatrix coeff_matrix_P(const YoungDiagram& lam, int k);

}  // namespace symext
