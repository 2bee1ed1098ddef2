#pragma once

// Named states used by the fixtures, tests and the acceptance suite.

#include "symext/linalg.hpp"

namespace symext {

/// (|01> - |10>) / sqrt(2) projector on two qubits.
DensityMatrix singlet_state();

/// Pure state on A (x) B_1 (x) B_2, all qutrits:
///   a(|012> - |021>) + b(|120> - |102>) + c(|201> - |210>),
/// normalized. Antisymmetric in the B legs.
DensityMatrix qutrit_fermionic_extension(double a, double b, double c);

/// Its (A, B_1) marginal.
DensityMatrix qutrit_marginal(double a, double b, double c);

}  // namespace symext
