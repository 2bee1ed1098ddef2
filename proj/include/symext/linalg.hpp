#pragma once

// Dense complex Hermitian linear algebra on multipartite systems.
//
// Index convention: subsystem 0 is the leftmost tensor factor and the most
// significant digit of a computational-basis index.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace symext {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using KetVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Absolute tolerance on the Frobenius norm of the anti-Hermitian part.
inline constexpr double kHermitianTol = 1e-10;
/// PSD checks accept min eigenvalue >= -kPsdTol.
inline constexpr double kPsdTol = 1e-10;

/// Ordered list of local dimensions, e.g. [d_A, 2, 2, ..., 2].
class SystemLayout {
 public:
  SystemLayout() = default;
  explicit SystemLayout(std::vector<std::size_t> dims);

  /// [d_A, 2, ..., 2] with `k` qubit factors.
  static SystemLayout with_qubits(std::size_t dA, int k);
  /// [d_A, d_B, ..., d_B] with `k` copies of the B factor.
  static SystemLayout with_copies(std::size_t dA, std::size_t dB, int k);

  std::size_t size() const { return dims_.size(); }
  std::size_t dim(std::size_t i) const { return dims_.at(i); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total() const;

  bool operator==(const SystemLayout&) const = default;

 private:
  std::vector<std::size_t> dims_;
};

/// Square matrix with an attached tensor layout.
///
/// Construction checks shape, finiteness and Hermiticity. Positivity and unit
/// trace are checked separately by `validate_state`, so candidate extensions
/// that fail those can still be represented and inspected.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, SystemLayout layout);

  const ComplexMatrix& matrix() const { return matrix_; }
  const SystemLayout& layout() const { return layout_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  /// Throws std::invalid_argument unless trace is 1 and the spectrum is
  /// bounded below by -tol.
  void validate_state(double tol = kPsdTol) const;

 private:
  ComplexMatrix matrix_;
  SystemLayout layout_;
};

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
KetVector tensor_product(const KetVector& a, const KetVector& b);

/// Trace out every subsystem not listed in `keep`. The kept factors appear in
/// increasing subsystem order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const SystemLayout& layout,
                            std::span<const std::size_t> keep);

/// Transpose a single subsystem.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const SystemLayout& layout,
                                std::size_t subsystem);

/// Permutation operator on `k` sites of dimension `local_dim`.
/// `perm[t]` is the slot that the content of slot t is moved to, so
/// P(perm) |i_0 ... i_{k-1}> = |i_{perm^-1(0)} ... i_{perm^-1(k-1)}>.
/// Composition: P(a) P(b) = P(a o b).
ComplexMatrix permutation_operator(int k, std::span<const int> perm, std::size_t local_dim);

/// (1 (x) P) m (1 (x) P)^dagger, with P acting on subsystems [first, first + perm.size()).
/// All permuted subsystems must share one dimension.
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const SystemLayout& layout,
                                 std::size_t first, std::span<const int> perm);

/// Frobenius norm of (h - h^dagger) / 2.
double hermitian_defect(const ComplexMatrix& h);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& h);

/// Ascending eigenvalues and matching eigenvectors of a Hermitian matrix.
struct EigenSystem {
  RealVector values;
  ComplexMatrix vectors;
};
EigenSystem hermitian_eigensystem(const ComplexMatrix& h);

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped).
/// Throws std::invalid_argument when `h` is not Hermitian within kHermitianTol.
ComplexMatrix psd_project(const ComplexMatrix& h);

/// Index helpers for mixed-radix computational-basis indices.
std::vector<std::size_t> digits_of(std::size_t index, const SystemLayout& layout);
std::size_t index_of(std::span<const std::size_t> digits, const SystemLayout& layout);

}  // namespace symext
