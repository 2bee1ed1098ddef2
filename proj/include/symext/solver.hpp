#pragma once

// Extendibility as convex feasibility: find PSD blocks whose image under a
// linear marginal map equals a target state. Solved by projection splitting
// between the product of PSD cones and the affine constraint set, either
// Douglas-Rachford (default) or Dykstra's alternating projections.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "symext/block_state.hpp"
#include "symext/linalg.hpp"

namespace symext {

enum class SolverMethod { DouglasRachford, Dykstra };
std::string to_string(SolverMethod m);

struct SolverConfig {
  double tol_feasible = 1e-8;        // Frobenius marginal residual for FEASIBLE
  double tol_infeasible_gap = 1e-6;  // certified set distance for INFEASIBLE
  std::size_t max_iter = 20000;
  std::uint64_t seed = 0;            // 0 starts from the origin; otherwise a seeded random start
  SolverMethod method = SolverMethod::DouglasRachford;
};

enum class SolverStatus { Feasible, Infeasible, Undecided };
std::string to_string(SolverStatus s);

struct SolverReport {
  SolverStatus status = SolverStatus::Undecided;
  double residual = 0.0;      // marginal mismatch of the best PSD iterate
  double gap_estimate = 0.0;  // certified lower bound on the distance between the sets
  std::size_t iterations = 0;
  std::optional<BlockState> certificate;         // symmetric / bosonic qubit problems
  std::optional<DensityMatrix> extension;        // generic k = 2 problem, on A (x) B (x) B
};

/// k-symmetric extendibility of a state on A (x) C^2.
/// Throws std::invalid_argument when the B factor is not a qubit.
SolverReport solve_symmetric(const DensityMatrix& rhoAB, int k, const SolverConfig& cfg = {});

/// k-bosonic extendibility of a state on A (x) C^2 (only the [k,0] block).
SolverReport solve_bosonic(const DensityMatrix& rhoAB, int k, const SolverConfig& cfg = {});

/// 2-bosonic extendibility for any B dimension: states on A (x) Sym^2(C^dB)
/// whose A (x) B_1 marginal equals rhoAB.
SolverReport solve_bosonic_k2_generic(const DensityMatrix& rhoAB, std::size_t dB, const SolverConfig& cfg = {});

// ---------------------------------------------------------------------------
// Engine. Hermitian blocks are packed isometrically into real coordinates:
// the diagonal first, then sqrt(2) Re and sqrt(2) Im of each upper entry.

std::size_t packed_size(std::size_t n);
void pack_hermitian(const ComplexMatrix& h, Eigen::Ref<RealVector> out);
ComplexMatrix unpack_hermitian(const Eigen::Ref<const RealVector>& v, std::size_t n);

struct FeasibilityProblem {
  std::vector<std::size_t> block_dims;
  Eigen::SparseMatrix<double> map;  // rows: constraints; cols: packed block coordinates
  RealVector target;
  /// Constraint-space vector whose adjoint image is positive definite in every
  /// block (a trace functional). Used to certify infeasibility.
  RealVector trace_functional;
};

struct FeasibilityResult {
  SolverStatus status = SolverStatus::Undecided;
  double residual = 0.0;
  double gap = 0.0;
  std::size_t iterations = 0;
  RealVector point;  // PSD iterate
};

FeasibilityResult run_feasibility(const FeasibilityProblem& problem, const SolverConfig& cfg);

/// Lower bound on dist(PSD cones, {x : map x = target}) from a trial
/// direction, via the separating functional it induces. Zero if none.
double certified_gap(const FeasibilityProblem& problem, const RealVector& direction);

}  // namespace symext
