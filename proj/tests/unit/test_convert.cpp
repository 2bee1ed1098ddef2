#include <array>
#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "symext/block_state.hpp"
#include "symext/coefficients.hpp"
#include "symext/convert.hpp"
#include "symext/generate.hpp"
#include "symext/instances.hpp"
#include "symext/schur_basis.hpp"

using namespace symext;
using symext::testing::projector;
using symext::testing::random_density;

namespace {

KetVector ket(std::initializer_list<Complex> xs) {
  KetVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

BlockState singlet_witness(const KetVector& xi) {
  BlockState::BlockMap m;
  m.emplace(YoungDiagram(1, 1), projector(xi));
  return BlockState(2, static_cast<std::size_t>(xi.size()), std::move(m));
}

ComplexMatrix schur_product_block(const ComplexMatrix& X, const YoungDiagram& lam, int k, std::size_t dA) {
  const auto n = static_cast<Eigen::Index>(dA);
  const ComplexMatrix JP = tensor_product(ComplexMatrix(ComplexMatrix::Ones(n, n)), ComplexMatrix(coeff_matrix_P(lam, k).cast<Complex>()));
  return X.cwiseProduct(JP);
}

}  // namespace

TEST_SUITE("convert") {

TEST_CASE("the singlet witness becomes the triplet") {
  const KetVector xi = ket({Complex(0.6, 0.0), Complex(0.0, 0.8)});
  const BosonicState sigma = sym_to_bos(singlet_witness(xi));
  const KetVector plus = ket({0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0});
  const ComplexMatrix expected = tensor_product(projector(xi), projector(plus));
  CHECK((sigma.embed().matrix() - expected).cwiseAbs().maxCoeff() <= 1e-12);
  // In Dicke coordinates: weight 0 is slot 1 of 3.
  CHECK(std::abs(sigma.matrix()(1, 1) - 0.36) < 1e-15);
  CHECK(std::abs(sigma.matrix()(4, 4) - 0.64) < 1e-15);
}

TEST_CASE("bosonic inputs are fixed points") {
  for (int k = 1; k <= 6; ++k) {
    const auto inst = gen_random_extendible(k, 2, 300 + static_cast<std::uint64_t>(k));
    BlockState::BlockMap only;
    ComplexMatrix X = *inst.witness.find(YoungDiagram(k, 0));
    X /= X.trace().real();
    only.emplace(YoungDiagram(k, 0), X);
    const BosonicState sigma = sym_to_bos(BlockState(k, 2, std::move(only)));
    CHECK((sigma.matrix() - X).cwiseAbs().maxCoeff() <= 1e-12);
    const BosonicState again = sym_to_bos(sigma.to_blocks());
    CHECK((again.matrix() - sigma.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("converted planted instances are bosonic extensions") {
  int count = 0;
  for (int k = 2; k <= 6; ++k)
    for (std::size_t dA = 2; dA <= 3; ++dA)
      for (auto profile : {GeneratorProfile::AllDiagrams, GeneratorProfile::ExcludeSymmetric})
        for (int rep = 0; rep < 3; ++rep) {
          const auto inst = gen_random_extendible(k, dA, 9000 + static_cast<std::uint64_t>(count++), profile);
          const BosonicState sigma = sym_to_bos(inst.witness);
          const auto r = verify_extension(sigma, inst.marginal, k, 1e-8);
          CHECK(r.bosonic_ok());
          CHECK_FALSE(r.analytic);
          CHECK(std::abs(sigma.matrix().trace().real() - inst.witness.weighted_trace()) <= 1e-12);
        }
}

TEST_CASE("the Schur product with J (x) P keeps blocks PSD") {
  std::mt19937_64 rng(83);
  for (int k = 2; k <= 8; ++k)
    for (const auto& lam : list_diagrams(k)) {
      const auto n = static_cast<Eigen::Index>(BlockState::block_dim(3, lam));
      const ComplexMatrix X = random_density(n, rng);
      CHECK(min_eigenvalue(schur_product_block(X, lam, k, 3)) >= -1e-10);
    }
}

TEST_CASE("sym_to_bos rejects invalid block states") {
  BlockState::BlockMap m;
  ComplexMatrix X = ComplexMatrix::Zero(3, 3);
  X(0, 0) = 2.0;
  X(2, 2) = -1.0;
  m.emplace(YoungDiagram(2, 0), X);
  CHECK_THROWS(sym_to_bos(BlockState(2, 1, std::move(m))));
}

TEST_CASE("BosonicState block conversions") {
  const auto inst = gen_random_extendible(3, 2, 4);
  const BosonicState sigma = sym_to_bos(inst.witness);
  const BlockState bs = sigma.to_blocks();
  CHECK(bs.blocks().size() == 1);
  CHECK((BosonicState::from_blocks(bs).matrix() - sigma.matrix()).norm() == 0.0);
  CHECK_THROWS(BosonicState::from_blocks(inst.witness));
  CHECK_THROWS(BosonicState(2, 3, ComplexMatrix::Identity(6, 6)));
  const ComplexMatrix embedded = sigma.embed().matrix();
  const ComplexMatrix direct = blocks_to_global(bs, build_schur_basis(3)).matrix();
  CHECK((embedded - direct).norm() < 1e-13);
}

TEST_CASE("verify_extension detects a perturbed off-diagonal entry") {
  const auto inst = gen_random_extendible(3, 2, 12);
  const BosonicState sigma = sym_to_bos(inst.witness);
  ComplexMatrix m = sigma.matrix();
  m(0, 1) += 1e-3;
  m(1, 0) += 1e-3;
  const auto r = verify_extension(BosonicState(2, 3, m), inst.marginal, 3, 1e-8);
  CHECK_FALSE(r.marginal_ok());
  CHECK(r.permutation_ok());
  CHECK(r.support_ok());
}

TEST_CASE("a fermionic extension is symmetric but not bosonic") {
  const KetVector xi = ket({Complex(1.0 / std::sqrt(3.0), 0.0), Complex(std::sqrt(2.0 / 3.0), 0.0)});
  const BlockState bs = singlet_witness(xi);
  const DensityMatrix rho = marginal_from_blocks(bs);
  const DensityMatrix full = blocks_to_global(bs, build_schur_basis(2));
  for (const auto& r : {verify_extension(full, rho, 2, 1e-8), verify_extension(bs, rho, 2, 1e-8)}) {
    CHECK(r.psd_ok());
    CHECK(r.trace_ok());
    CHECK(r.marginal_ok());
    CHECK(r.permutation_ok());
    CHECK(r.symmetric_ok());
    CHECK_FALSE(r.support_ok());
    CHECK_FALSE(r.bosonic_ok());
  }
}

TEST_CASE("a non-invariant extension fails the permutation check") {
  // |0><0| (x) |01><01|: marginals on B_1 and B_2 differ.
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  m(1, 1) = 1.0;
  const DensityMatrix sigma(m, SystemLayout({2, 2, 2}));
  ComplexMatrix r = ComplexMatrix::Zero(4, 4);
  r(0, 0) = 1.0;
  const auto rep = verify_extension(sigma, DensityMatrix(r, SystemLayout({2, 2})), 2, 1e-8);
  CHECK_FALSE(rep.permutation_ok());
  CHECK_FALSE(rep.marginal_ok());
  CHECK(rep.psd_ok());
}

TEST_CASE("large k verification uses the block formulas") {
  const int k = 10;
  const auto inst = gen_random_extendible(k, 2, 55);
  const auto r = verify_extension(sym_to_bos(inst.witness), inst.marginal, k, 1e-8);
  CHECK(r.analytic);
  CHECK(r.bosonic_ok());
  const auto rs = verify_extension(inst.witness, inst.marginal, k, 1e-8);
  CHECK(rs.analytic);
  CHECK(rs.symmetric_ok());
}

TEST_CASE("symmetric projector") {
  for (int k = 1; k <= 4; ++k)
    for (std::size_t d = 2; d <= 3; ++d) {
      const ComplexMatrix pi = symmetric_projector(k, d);
      CHECK((pi * pi - pi).norm() < 1e-12);
      double expected = 1.0;
      for (int i = 1; i <= k; ++i) expected = expected * static_cast<double>(d - 1 + static_cast<std::size_t>(i)) / i;
      CHECK(pi.trace().real() == doctest::Approx(expected));
    }
  CHECK_THROWS(symmetric_projector(0, 2));
}

TEST_CASE("tilde state examples") {
  const DensityMatrix mixed(ComplexMatrix::Identity(4, 4) / 4.0, SystemLayout({2, 2}));
  const auto t = tilde_state(mixed, 2);
  CHECK((t.state.matrix() - mixed.matrix()).norm() < 1e-15);
  CHECK(t.ppt);

  const auto s = tilde_state(singlet_state(), 2);
  const ComplexMatrix expected = ComplexMatrix::Identity(4, 4) / 8.0 + singlet_state().matrix() / 2.0;
  CHECK((s.state.matrix() - expected).norm() < 1e-15);
  CHECK(std::abs(s.pt_min_eigenvalue + 0.125) < 1e-10);
  CHECK_FALSE(s.ppt);

  const DensityMatrix q = qutrit_marginal(1.0, 2.0, 3.0);
  const auto tq = tilde_state(q, 2);
  CHECK(std::abs(tq.state.matrix().trace().real() - 1.0) < 1e-14);
  CHECK_THROWS(tilde_state(singlet_state(), 0));
}

TEST_CASE("tilde states of extendible inputs are PPT") {
  for (int i = 0; i < 40; ++i) {
    const int k = 2 + i % 5;
    const auto inst = gen_random_extendible(k, 2, 700 + static_cast<std::uint64_t>(i));
    const auto t = tilde_state(inst.marginal, k);
    CHECK(t.ppt);
    CHECK(std::abs(t.state.matrix().trace().real() - 1.0) < 1e-13);
  }
}

TEST_CASE("qutrit fermionic extension is a symmetric extension of its marginal") {
  const DensityMatrix ext = qutrit_fermionic_extension(1.0, 2.0, 3.0);
  const DensityMatrix rho = qutrit_marginal(1.0, 2.0, 3.0);
  const auto r = verify_extension(ext, rho, 2, 1e-8);
  CHECK(r.symmetric_ok());
  CHECK_FALSE(r.support_ok());
  CHECK(ext.layout().dims() == std::vector<std::size_t>{3, 3, 3});
}

}
