#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "symext/linalg.hpp"
#include "symext/reference.hpp"

using namespace symext;
using symext::testing::basis_ket;
using symext::testing::projector;
using symext::testing::random_complex;
using symext::testing::random_hermitian;

namespace {

std::vector<int> random_perm(int k, std::mt19937_64& rng) {
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(b.size());
  for (std::size_t t = 0; t < b.size(); ++t) out[t] = a[static_cast<std::size_t>(b[t])];
  return out;
}

}  // namespace

TEST_SUITE("core-linalg") {

TEST_CASE("tensor_product of identities and basis projectors") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  CHECK((tensor_product(i2, i2) - ComplexMatrix::Identity(4, 4)).norm() == 0.0);
  const ComplexMatrix p0 = projector(basis_ket(2, 0));
  const ComplexMatrix p1 = projector(basis_ket(2, 1));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(1, 1) = 1.0;
  CHECK((tensor_product(p0, p1) - expected).norm() == 0.0);
}

TEST_CASE("tensor_product matches the index formula") {
  std::mt19937_64 rng(3);
  const ComplexMatrix a = random_complex(3, 2, rng);
  const ComplexMatrix b = random_complex(2, 4, rng);
  const ComplexMatrix t = tensor_product(a, b);
  REQUIRE(t.rows() == 6);
  REQUIRE(t.cols() == 8);
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 2; ++j)
      for (Eigen::Index p = 0; p < 2; ++p)
        for (Eigen::Index q = 0; q < 4; ++q) CHECK(t(i * 2 + p, j * 4 + q) == a(i, j) * b(p, q));

  const KetVector u = KetVector::Random(2);
  const KetVector v = KetVector::Random(3);
  const KetVector uv = tensor_product(u, v);
  CHECK(uv(4) == u(1) * v(1));
}

TEST_CASE("partial_trace of a Bell state is maximally mixed") {
  KetVector bell = KetVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const std::array<std::size_t, 1> keep{0};
  const ComplexMatrix r = partial_trace(projector(bell), SystemLayout({2, 2}), keep);
  CHECK((r - 0.5 * ComplexMatrix::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("partial_trace of a product state returns the factor") {
  std::mt19937_64 rng(5);
  const ComplexMatrix ra = symext::testing::random_density(3, rng);
  const ComplexMatrix rb = symext::testing::random_density(2, rng);
  const std::array<std::size_t, 1> keepA{0};
  const std::array<std::size_t, 1> keepB{1};
  const SystemLayout lay({3, 2});
  CHECK((partial_trace(tensor_product(ra, rb), lay, keepA) - ra).norm() < 1e-14);
  CHECK((partial_trace(tensor_product(ra, rb), lay, keepB) - rb).norm() < 1e-14);
}

TEST_CASE("partial_trace of the Dicke cross term") {
  KetVector d1 = KetVector::Zero(4);
  d1(1) = d1(2) = 1.0 / std::sqrt(2.0);
  const KetVector top = basis_ket(4, 3);
  const ComplexMatrix cross = d1 * top.adjoint();
  const std::array<std::size_t, 1> keep{0};
  const ComplexMatrix r = partial_trace(cross, SystemLayout({2, 2}), keep);
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 1) = 1.0 / std::sqrt(2.0);
  CHECK((r - expected).norm() < 1e-15);
}

TEST_CASE("partial_trace agrees with index summation for small layouts") {
  std::mt19937_64 rng(11);
  for (int k = 1; k <= 4; ++k) {
    for (std::size_t d = 1; d <= 3; ++d) {
      std::vector<std::size_t> dims;
      for (int i = 0; i < k; ++i) dims.push_back(1 + (d + static_cast<std::size_t>(i)) % 3);
      const SystemLayout lay(dims);
      if (lay.total() > 64) continue;
      const ComplexMatrix m = random_complex(static_cast<Eigen::Index>(lay.total()), static_cast<Eigen::Index>(lay.total()), rng);
      for (unsigned mask = 0; mask < (1u << k); ++mask) {
        std::vector<std::size_t> keep;
        for (int i = 0; i < k; ++i)
          if (mask & (1u << i)) keep.push_back(static_cast<std::size_t>(i));
        const ComplexMatrix fast = partial_trace(m, lay, keep);
        const ComplexMatrix slow = ref::partial_trace(m, lay, keep);
        CHECK((fast - slow).norm() < 1e-12);
        CHECK(std::abs(fast.trace() - m.trace()) < 1e-12);
      }
    }
  }
}

TEST_CASE("partial_trace rejects bad arguments") {
  const ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  const std::array<std::size_t, 1> bad{2};
  CHECK_THROWS(partial_trace(m, SystemLayout({2, 2}), bad));
  const std::array<std::size_t, 1> keep{0};
  CHECK_THROWS(partial_trace(m, SystemLayout({2, 3}), keep));
}

TEST_CASE("partial_transpose agrees with the reference and keeps the trace") {
  std::mt19937_64 rng(13);
  const SystemLayout lay({3, 2, 2});
  const ComplexMatrix m = random_complex(12, 12, rng);
  for (std::size_t s = 0; s < 3; ++s) {
    const ComplexMatrix pt = partial_transpose(m, lay, s);
    CHECK((pt - ref::partial_transpose(m, lay, s)).norm() < 1e-14);
    CHECK((partial_transpose(pt, lay, s) - m).norm() == 0.0);
  }
}

TEST_CASE("permutation_operator moves slot contents") {
  const std::array<int, 3> swap01{1, 0, 2};
  const ComplexMatrix P = permutation_operator(3, swap01, 2);
  // |0,1,1> = 3 maps to |1,0,1> = 5.
  CHECK((P * basis_ket(8, 3) - basis_ket(8, 5)).norm() == 0.0);

  const std::array<int, 3> cyc{1, 2, 0};
  // Content of slot 0 goes to slot 1: |1,0,0> = 4 maps to |0,1,0> = 2.
  CHECK((permutation_operator(3, cyc, 2) * basis_ket(8, 4) - basis_ket(8, 2)).norm() == 0.0);
}

TEST_CASE("permutation_operator inverse and three-cycle decomposition") {
  const std::array<int, 3> cyc{1, 2, 0};
  const std::array<int, 3> inv{2, 0, 1};
  const ComplexMatrix P = permutation_operator(3, cyc, 3);
  CHECK((P * permutation_operator(3, inv, 3) - ComplexMatrix::Identity(27, 27)).norm() == 0.0);

  // (0 1 2) = (0 2)(0 1) as maps on slots.
  const std::array<int, 3> s01{1, 0, 2};
  const std::array<int, 3> s02{2, 1, 0};
  const ComplexMatrix prod = permutation_operator(3, s02, 3) * permutation_operator(3, s01, 3);
  CHECK((prod - P).norm() == 0.0);
}

TEST_CASE("permutation_operator is a homomorphism") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + trial % 3;
    const std::size_t d = trial % 2 == 0 ? 2 : 3;
    const auto a = random_perm(k, rng);
    const auto b = random_perm(k, rng);
    const auto ab = compose(a, b);
    const ComplexMatrix lhs = permutation_operator(k, a, d) * permutation_operator(k, b, d);
    CHECK((lhs - permutation_operator(k, ab, d)).norm() == 0.0);
    CHECK((permutation_operator(k, a, d) - ref::permutation_matrix(k, a, d)).norm() == 0.0);
  }
}

TEST_CASE("permutation_operator rejects non-permutations") {
  const std::array<int, 3> dup{0, 0, 1};
  CHECK_THROWS(permutation_operator(3, dup, 2));
  const std::array<int, 2> range{0, 2};
  CHECK_THROWS(permutation_operator(2, range, 2));
}

TEST_CASE("permute_subsystems agrees with the reference") {
  std::mt19937_64 rng(19);
  const SystemLayout lay({3, 2, 2, 2});
  const ComplexMatrix m = random_complex(24, 24, rng);
  for (int t = 0; t < 6; ++t) {
    const auto p = random_perm(3, rng);
    CHECK((permute_subsystems(m, lay, 1, p) - ref::permute_subsystems(m, lay, 1, p)).norm() < 1e-13);
  }
  const std::array<int, 2> swap{1, 0};
  CHECK_THROWS(permute_subsystems(m, lay, 0, swap));
}

TEST_CASE("psd_project examples") {
  std::mt19937_64 rng(23);
  const ComplexMatrix psd = symext::testing::random_density(5, rng);
  CHECK((psd_project(psd) - psd).norm() < 1e-12);

  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 0) = 1.0;
  h(1, 1) = -1.0;
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  CHECK((psd_project(h) - expected).norm() < 1e-15);
}

TEST_CASE("psd_project matches the spectral clip of the Jacobi oracle") {
  std::mt19937_64 rng(29);
  for (int n : {1, 2, 4, 7, 12}) {
    const ComplexMatrix h = random_hermitian(n, rng);
    const ComplexMatrix p = psd_project(h);
    CHECK((p - ref::psd_project(h)).norm() < 1e-10);
    CHECK((psd_project(p) - p).norm() < 1e-12);
    CHECK(min_eigenvalue(p) >= -1e-12);
    // Optimality: h - p is negative semidefinite and orthogonal to p.
    const ComplexMatrix r = h - p;
    CHECK(min_eigenvalue(-r) >= -1e-10);
    CHECK(std::abs((r.adjoint() * p).trace()) < 1e-10);
  }
}

TEST_CASE("psd_project rejects non-Hermitian input") {
  ComplexMatrix h = ComplexMatrix::Identity(2, 2);
  h(0, 1) = 1e-3;
  CHECK_THROWS_AS(psd_project(h), std::invalid_argument);
}

TEST_CASE("min_eigenvalue examples") {
  CHECK(min_eigenvalue(ComplexMatrix::Identity(2, 2)) == doctest::Approx(1.0).epsilon(1e-15));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -2.0;
  CHECK(min_eigenvalue(d) == doctest::Approx(-2.0).epsilon(1e-15));
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix b = random_complex(6, 6, rng);
    CHECK(min_eigenvalue(b.adjoint() * b) >= -1e-12);
  }
}

TEST_CASE("hermitian_eigensystem agrees with the Jacobi oracle") {
  std::mt19937_64 rng(37);
  const ComplexMatrix h = random_hermitian(9, rng);
  const auto es = hermitian_eigensystem(h);
  CHECK((es.values - ref::jacobi_eigenvalues(h)).norm() < 1e-10);
  const ComplexMatrix rebuilt = es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
  CHECK((rebuilt - h).norm() < 1e-10);
}

TEST_CASE("DensityMatrix construction and validation") {
  CHECK_THROWS(DensityMatrix(ComplexMatrix::Identity(4, 4), SystemLayout({2, 3})));
  ComplexMatrix nh = ComplexMatrix::Identity(2, 2) * 0.5;
  nh(0, 1) = 0.1;
  CHECK_THROWS(DensityMatrix(nh, SystemLayout({2})));
  ComplexMatrix nan = ComplexMatrix::Identity(2, 2);
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS(DensityMatrix(nan, SystemLayout({2})));

  const DensityMatrix unnormalized(ComplexMatrix::Identity(2, 2), SystemLayout({2}));
  CHECK_THROWS(unnormalized.validate_state());
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS(DensityMatrix(neg, SystemLayout({2})).validate_state());
  CHECK_NOTHROW(DensityMatrix(0.5 * ComplexMatrix::Identity(2, 2), SystemLayout({2})).validate_state());
  CHECK_THROWS(SystemLayout({2, 0}));
}

TEST_CASE("mixed-radix index helpers") {
  const SystemLayout lay({3, 2, 2});
  for (std::size_t i = 0; i < lay.total(); ++i) CHECK(index_of(digits_of(i, lay), lay) == i);
  CHECK(digits_of(7, lay) == std::vector<std::size_t>{1, 1, 1});
  CHECK(SystemLayout::with_qubits(3, 2).dims() == std::vector<std::size_t>{3, 2, 2});
  CHECK(SystemLayout::with_copies(2, 3, 2).total() == 18);
}

}
