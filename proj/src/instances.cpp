#include "symext/instances.hpp"

#include <cmath>
#include <stdexcept>

namespace symext {

DensityMatrix singlet_state() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(1, 1) = m(2, 2) = 0.5;
  m(1, 2) = m(2, 1) = -0.5;
  return DensityMatrix(std::move(m), SystemLayout({2, 2}));
}

DensityMatrix qutrit_fermionic_extension(double a, double b, double c) {
  const double norm = std::sqrt(2.0 * (a * a + b * b + c * c));
  if (norm == 0.0) throw std::invalid_argument("qutrit_fermionic_extension: all coefficients are zero");
  KetVector psi = KetVector::Zero(27);
  auto at = [](int x, int y, int z) { return 9 * x + 3 * y + z; };
  psi(at(0, 1, 2)) += a;
  psi(at(0, 2, 1)) -= a;
  psi(at(1, 2, 0)) += b;
  psi(at(1, 0, 2)) -= b;
  psi(at(2, 0, 1)) += c;
  psi(at(2, 1, 0)) -= c;
  psi /= norm;
  return DensityMatrix(psi * psi.adjoint(), SystemLayout({3, 3, 3}));
}

DensityMatrix qutrit_marginal(double a, double b, double c) {
  const auto ext = qutrit_fermionic_extension(a, b, c);
  const std::size_t keep[] = {0, 1};
  return DensityMatrix(partial_trace(ext.matrix(), ext.layout(), keep), SystemLayout({3, 3}));
}

}  // namespace symext
