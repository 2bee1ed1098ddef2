#pragma once

// Serial reference kernels and independent oracles. Used by the tests, the
// acceptance suite and the benchmarks; not by the production paths.

#include <cstdint>
#include <span>

#include "symext/block_state.hpp"
#include "symext/linalg.hpp"
#include "symext/schur_basis.hpp"
#include "symext/young.hpp"

namespace symext::ref {

// Index-summation versions of the core kernels.
ComplexMatrix partial_trace(const ComplexMatrix& m, const SystemLayout& layout, std::span<const std::size_t> keep);
ComplexMatrix partial_transpose(const ComplexMatrix& m, const SystemLayout& layout, std::size_t subsystem);
/// Explicit 0/1 matrix of a permutation of k slots of dimension local_dim.
/// perm[t] is the destination slot of slot t.
ComplexMatrix permutation_matrix(int k, std::span<const int> perm, std::size_t local_dim);
/// P m P^dagger with P acting on subsystems first .. first + perm.size() - 1.
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const SystemLayout& layout, std::size_t first,
                                 std::span<const int> perm);

/// Dense sum over multiplicity copies using full basis vectors.
DensityMatrix blocks_to_global(const BlockState& bs, const SchurBasis& basis);
BlockState global_to_blocks(const DensityMatrix& rho, const SchurBasis& basis);

/// Average of P rho P^dagger over all k! permutations of the B legs.
ComplexMatrix twirl_bruteforce(const ComplexMatrix& rho, const SystemLayout& layout);

/// Cyclic complex Jacobi diagonalization; eigenvalues ascending.
EigenSystem jacobi_eigensystem(const ComplexMatrix& h, int max_sweeps = 100);
RealVector jacobi_eigenvalues(const ComplexMatrix& h);
ComplexMatrix psd_project(const ComplexMatrix& h);

/// Standard Young tableaux of lam, by exhaustive filling.
std::uint64_t count_standard_tableaux(const YoungDiagram& lam);

/// Total spin J^2 on k qubits as a dense matrix.
ComplexMatrix total_spin_squared(int k);
/// sum_mu |w_mu><w_mu| for diagram lam, from J^2 and J_z alone.
ComplexMatrix isotypic_projector(const YoungDiagram& lam, Weight w);
/// sum_mu |w_mu><w+1_mu| in the Condon-Shortley phase convention,
/// obtained as J_- applied to the isotypic projector of w + 1.
ComplexMatrix isotypic_transfer(const YoungDiagram& lam, Weight w);

/// Full-space alternating projections between the PSD cone and the Hermitian
/// operators on A (x) B^{(x) k} that are B-permutation invariant with
/// (A, B_1) marginal rhoAB. Returns the displacement ||P_psd(x) - x|| after
/// `iterations` rounds, which decreases to the distance between the sets.
double full_space_displacement(const DensityMatrix& rhoAB, int k, int iterations);

}  // namespace symext::ref
