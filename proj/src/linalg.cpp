#include "symext/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace symext {

SystemLayout::SystemLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  for (auto d : dims_) {
    if (d < 1) throw std::invalid_argument("SystemLayout: subsystem dimension must be >= 1");
  }
}

SystemLayout SystemLayout::with_qubits(std::size_t dA, int k) { return with_copies(dA, 2, k); }

SystemLayout SystemLayout::with_copies(std::size_t dA, std::size_t dB, int k) {
  std::vector<std::size_t> dims{dA};
  dims.insert(dims.end(), static_cast<std::size_t>(k), dB);
  return SystemLayout(std::move(dims));
}

std::size_t SystemLayout::total() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, SystemLayout layout)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
  if (matrix_.rows() != matrix_.cols())
    throw std::invalid_argument("DensityMatrix: matrix is not square");
  if (static_cast<std::size_t>(matrix_.rows()) != layout_.total())
    throw std::invalid_argument("DensityMatrix: layout dimension " + std::to_string(layout_.total()) +
                                " does not match matrix dimension " + std::to_string(matrix_.rows()));
  if (!matrix_.allFinite()) throw std::invalid_argument("DensityMatrix: non-finite entry");
  if (hermitian_defect(matrix_) > kHermitianTol)
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
}

void DensityMatrix::validate_state(double tol) const {
  const double tr_err = std::abs(matrix_.trace() - Complex(1.0, 0.0));
  if (tr_err > tol) throw std::invalid_argument("DensityMatrix: trace differs from 1 by " + std::to_string(tr_err));
  const double lo = min_eigenvalue(matrix_);
  if (lo < -tol) throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(lo));
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

KetVector tensor_product(const KetVector& a, const KetVector& b) {
  KetVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

std::vector<std::size_t> digits_of(std::size_t index, const SystemLayout& layout) {
  std::vector<std::size_t> digits(layout.size());
  for (std::size_t s = layout.size(); s-- > 0;) {
    digits[s] = index % layout.dim(s);
    index /= layout.dim(s);
  }
  return digits;
}

std::size_t index_of(std::span<const std::size_t> digits, const SystemLayout& layout) {
  std::size_t index = 0;
  for (std::size_t s = 0; s < layout.size(); ++s) index = index * layout.dim(s) + digits[s];
  return index;
}

namespace {

void check_square(const ComplexMatrix& m, const SystemLayout& layout, const char* who) {
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != layout.total())
    throw std::invalid_argument(std::string(who) + ": matrix dimension does not match layout");
}

std::vector<std::size_t> strides_of(const SystemLayout& layout) {
  std::vector<std::size_t> strides(layout.size());
  std::size_t s = 1;
  for (std::size_t i = layout.size(); i-- > 0;) {
    strides[i] = s;
    s *= layout.dim(i);
  }
  return strides;
}

// Full-space offsets contributed by every joint value of the listed subsystems,
// enumerated with the first listed subsystem most significant.
std::vector<std::size_t> offsets_for(const SystemLayout& layout, const std::vector<std::size_t>& subsystems) {
  const auto strides = strides_of(layout);
  std::vector<std::size_t> offsets{0};
  for (auto s : subsystems) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * layout.dim(s));
    for (auto base : offsets)
      for (std::size_t d = 0; d < layout.dim(s); ++d) next.push_back(base + d * strides[s]);
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, const SystemLayout& layout,
                            std::span<const std::size_t> keep) {
  check_square(m, layout, "partial_trace");
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
    throw std::invalid_argument("partial_trace: repeated subsystem index");
  if (!kept.empty() && kept.back() >= layout.size())
    throw std::invalid_argument("partial_trace: subsystem index out of range");
  std::vector<std::size_t> traced;
  for (std::size_t s = 0; s < layout.size(); ++s)
    if (!std::binary_search(kept.begin(), kept.end(), s)) traced.push_back(s);

  const auto keep_off = offsets_for(layout, kept);
  const auto trace_off = offsets_for(layout, traced);
  const auto dk = static_cast<Eigen::Index>(keep_off.size());
  ComplexMatrix out(dk, dk);

#pragma omp parallel for schedule(static)
  for (Eigen::Index c = 0; c < dk; ++c) {
    for (Eigen::Index r = 0; r < dk; ++r) {
      Complex acc(0.0, 0.0);
      for (auto t : trace_off)
        acc += m(static_cast<Eigen::Index>(keep_off[r] + t), static_cast<Eigen::Index>(keep_off[c] + t));
      out(r, c) = acc;
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const SystemLayout& layout, std::size_t subsystem) {
  check_square(m, layout, "partial_transpose");
  if (subsystem >= layout.size()) throw std::invalid_argument("partial_transpose: subsystem out of range");
  const auto stride = strides_of(layout)[subsystem];
  const auto d = layout.dim(subsystem);
  const auto n = m.rows();
  ComplexMatrix out(n, n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index c = 0; c < n; ++c) {
    const std::size_t cd = (static_cast<std::size_t>(c) / stride) % d;
    for (Eigen::Index r = 0; r < n; ++r) {
      const std::size_t rd = (static_cast<std::size_t>(r) / stride) % d;
      const auto r2 = static_cast<Eigen::Index>(static_cast<std::size_t>(r) + (cd - rd) * stride);
      const auto c2 = static_cast<Eigen::Index>(static_cast<std::size_t>(c) + (rd - cd) * stride);
      out(r, c) = m(r2, c2);
    }
  }
  return out;
}

namespace {

void check_permutation(std::span<const int> perm) {
  std::vector<int> seen(perm.size(), 0);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= perm.size() || seen[p]++)
      throw std::invalid_argument("permutation: not a bijection");
  }
}

// Image of every computational index under the subsystem permutation.
std::vector<std::size_t> permuted_indices(const SystemLayout& layout, std::size_t first,
                                          std::span<const int> perm) {
  const std::size_t n = layout.total();
  std::vector<std::size_t> image(n);
  std::vector<std::size_t> digits, moved;
  for (std::size_t i = 0; i < n; ++i) {
    digits = digits_of(i, layout);
    moved = digits;
    for (std::size_t t = 0; t < perm.size(); ++t) moved[first + static_cast<std::size_t>(perm[t])] = digits[first + t];
    image[i] = index_of(moved, layout);
  }
  return image;
}

}  // namespace

ComplexMatrix permutation_operator(int k, std::span<const int> perm, std::size_t local_dim) {
  if (static_cast<int>(perm.size()) != k) throw std::invalid_argument("permutation_operator: size mismatch");
  check_permutation(perm);
  const SystemLayout layout(std::vector<std::size_t>(static_cast<std::size_t>(k), local_dim));
  const auto image = permuted_indices(layout, 0, perm);
  const auto n = static_cast<Eigen::Index>(image.size());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) out(static_cast<Eigen::Index>(image[i]), i) = 1.0;
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const SystemLayout& layout, std::size_t first,
                                 std::span<const int> perm) {
  check_square(m, layout, "permute_subsystems");
  check_permutation(perm);
  if (first + perm.size() > layout.size()) throw std::invalid_argument("permute_subsystems: range out of layout");
  for (std::size_t t = 1; t < perm.size(); ++t)
    if (layout.dim(first + t) != layout.dim(first))
      throw std::invalid_argument("permute_subsystems: permuted subsystems differ in dimension");
  const auto image = permuted_indices(layout, first, perm);
  const auto n = m.rows();
  ComplexMatrix out(n, n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r)
      out(static_cast<Eigen::Index>(image[r]), static_cast<Eigen::Index>(image[c])) = m(r, c);
  return out;
}

double hermitian_defect(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  return (0.5 * (h - h.adjoint())).norm();
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& h) {
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigensystem: no convergence");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const ComplexMatrix& h) {
  if (h.rows() == 0) return 0.0;
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("min_eigenvalue: no convergence");
  return solver.eigenvalues()(0);
}

ComplexMatrix psd_project(const ComplexMatrix& h) {
  if (hermitian_defect(h) > kHermitianTol) throw std::invalid_argument("psd_project: input is not Hermitian");
  if (h.rows() == 0) return h;
  const auto es = hermitian_eigensystem(h);
  if (es.values(0) >= 0.0) return 0.5 * (h + h.adjoint());
  const RealVector clipped = es.values.cwiseMax(0.0);
  ComplexMatrix out = es.vectors * clipped.asDiagonal() * es.vectors.adjoint();
  return 0.5 * (out + out.adjoint());
}

}  // namespace symext
