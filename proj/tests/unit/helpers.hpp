#pragma once

#include <cstdint>
#include <random>

#include "symext/linalg.hpp"

namespace symext::testing {

inline ComplexMatrix random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = Complex(n(rng), n(rng));
  return g;
}

inline ComplexMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_complex(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

inline ComplexMatrix random_density(Eigen::Index n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_complex(n, n, rng);
  ComplexMatrix r = g * g.adjoint();
  r /= r.trace().real();
  return 0.5 * (r + r.adjoint());
}

inline DensityMatrix random_state(const SystemLayout& layout, std::mt19937_64& rng) {
  return DensityMatrix(random_density(static_cast<Eigen::Index>(layout.total()), rng), layout);
}

inline ComplexMatrix projector(const KetVector& v) { return v * v.adjoint(); }

inline KetVector basis_ket(std::size_t dim, std::size_t i) {
  KetVector v = KetVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(i)) = 1.0;
  return v;
}

}  // namespace symext::testing
