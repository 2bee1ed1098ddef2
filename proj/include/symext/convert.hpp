#pragma once

// Symmetric-to-bosonic conversion for qubit B systems, extension checks and
// the tilde-state PPT screen.

#include <cstddef>
#include <optional>
#include <string>

#include "symext/block_state.hpp"
#include "symext/linalg.hpp"

namespace symext {

/// State on A (x) Sym^k(C^2). Row index a * (k + 1) + weight position, with
/// weights ascending from -k/2 (the Dicke state of weight w is slot k/2 + w).
class BosonicState {
 public:
  /// Checks shape, finiteness and Hermiticity.
  BosonicState(std::size_t dA, int k, ComplexMatrix m);

  std::size_t dA() const { return dA_; }
  int k() const { return k_; }
  const ComplexMatrix& matrix() const { return m_; }

  /// Full-space operator on A (x) (C^2)^{(x) k} through the Dicke vectors.
  DensityMatrix embed() const;
  /// The same state as a block state carrying only [k, 0].
  BlockState to_blocks() const;
  /// Inverse of to_blocks; throws if bs has weight outside [k, 0].
  static BosonicState from_blocks(const BlockState& bs);

 private:
  std::size_t dA_;
  int k_;
  ComplexMatrix m_;
};

/// sigma = sum_lam d_lam Embed_lam(X_lam o (J_A (x) P_lam)).
/// Validates bs (PSD, weighted trace 1) within tol first.
BosonicState sym_to_bos(const BlockState& bs, double tol = 1e-7);

struct ExtensionReport {
  double min_eigenvalue = 0.0;
  double trace_error = 0.0;
  double marginal_error = 0.0;     // max over i of ||Tr_{not A,B_i} sigma - rhoAB||_F
  double permutation_error = 0.0;  // max over adjacent transpositions
  double support_error = 0.0;      // ||sigma - Pi sigma Pi||_F, Pi the symmetric projector on B
  bool analytic = false;           // marginals from block formulas instead of the full space
  double tol = 0.0;

  bool psd_ok() const { return min_eigenvalue >= -tol; }
  bool trace_ok() const { return trace_error <= tol; }
  bool marginal_ok() const { return marginal_error <= tol; }
  bool permutation_ok() const { return permutation_error <= tol; }
  bool support_ok() const { return support_error <= tol; }
  /// Checks (a)-(d): a valid symmetric extension.
  bool symmetric_ok() const { return psd_ok() && trace_ok() && marginal_ok() && permutation_ok(); }
  /// All five checks: a valid bosonic extension.
  bool bosonic_ok() const { return symmetric_ok() && support_ok(); }
};

/// Largest k at which verification materializes the full space.
inline constexpr int kFullSpaceVerifyK = 8;

ExtensionReport verify_extension(const BosonicState& sigma, const DensityMatrix& rhoAB, int k, double tol);
/// Symmetric extension in block coordinates (qubit B).
ExtensionReport verify_extension(const BlockState& bs, const DensityMatrix& rhoAB, int k, double tol);
/// Full-space extension with layout [dA, dB, ..., dB] (k copies of B).
ExtensionReport verify_extension(const DensityMatrix& sigma, const DensityMatrix& rhoAB, int k, double tol);

/// Projector onto Sym^k(C^dB) inside (C^dB)^{(x) k}.
ComplexMatrix symmetric_projector(int k, std::size_t dB);

struct TildeResult {
  DensityMatrix state;
  double pt_min_eigenvalue;
  bool ppt;
};

/// (rho_A (x) I + k rho) / (k + 2) for a qubit B, otherwise
/// (dB rho_A (x) I + k rho) / (dB^2 + k). PPT within tol.
TildeResult tilde_state(const DensityMatrix& rhoAB, int k, double tol = kPsdTol);

}  // namespace symext
