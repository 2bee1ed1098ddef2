#include "symext/convert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "symext/coefficients.hpp"
#include "symext/limits.hpp"

namespace symext {

BosonicState::BosonicState(std::size_t dA, int k, ComplexMatrix m) : dA_(dA), k_(k), m_(std::move(m)) {
  require_k_in_range(k, max_block_k(), "BosonicState");
  if (dA < 1) throw std::invalid_argument("BosonicState: dA must be >= 1");
  const auto n = static_cast<Eigen::Index>(dA * static_cast<std::size_t>(k + 1));
  if (m_.rows() != n || m_.cols() != n) throw std::invalid_argument("BosonicState: matrix must be dA(k+1) square");
  if (!m_.allFinite()) throw std::invalid_argument("BosonicState: non-finite entry");
  if (hermitian_defect(m_) > kHermitianTol) throw std::invalid_argument("BosonicState: matrix is not Hermitian");
}

DensityMatrix BosonicState::embed() const {
  require_k_in_range(k_, max_full_space_k(), "BosonicState::embed");
  const auto nB = static_cast<Eigen::Index>(std::size_t{1} << k_);
  const auto nw = static_cast<Eigen::Index>(k_ + 1);
  const auto dA = static_cast<Eigen::Index>(dA_);
  ComplexMatrix iso = ComplexMatrix::Zero(dA * nB, dA * nw);
  for (Eigen::Index i = 0; i < nw; ++i) {
    const KetVector d = dicke(k_, Weight::from_ones(static_cast<int>(i), k_));
    for (Eigen::Index a = 0; a < dA; ++a) iso.block(a * nB, a * nw + i, nB, 1) = d;
  }
  ComplexMatrix full = iso * m_ * iso.adjoint();
  full = 0.5 * (full + full.adjoint()).eval();
  return DensityMatrix(std::move(full), SystemLayout::with_qubits(dA_, k_));
}

BlockState BosonicState::to_blocks() const {
  BlockState::BlockMap blocks;
  blocks.emplace(YoungDiagram(k_, 0), m_);
  return BlockState(k_, dA_, std::move(blocks));
}

BosonicState BosonicState::from_blocks(const BlockState& bs) {
  const YoungDiagram top(bs.k(), 0);
  for (const auto& [lam, X] : bs.blocks())
    if (!(lam == top) && X.norm() != 0.0)
      throw std::invalid_argument("BosonicState::from_blocks: block " + lam.to_string() + " is nonzero");
  const ComplexMatrix* X = bs.find(top);
  const auto n = static_cast<Eigen::Index>(BlockState::block_dim(bs.dA(), top));
  return BosonicState(bs.dA(), bs.k(), X ? *X : ComplexMatrix::Zero(n, n));
}

BosonicState sym_to_bos(const BlockState& bs, double tol) {
  bs.validate(tol);
  const int k = bs.k();
  const std::size_t dA = bs.dA();
  const auto nw_top = static_cast<Eigen::Index>(k + 1);
  ComplexMatrix sigma = ComplexMatrix::Zero(static_cast<Eigen::Index>(dA) * nw_top, static_cast<Eigen::Index>(dA) * nw_top);
  for (const auto& [lam, X] : bs.blocks()) {
    const double d = static_cast<double>(hook_dim(lam));
    const RealMatrix P = coeff_matrix_P(lam, k);
    const auto nw = static_cast<Eigen::Index>(lam.weight_count());
    const Eigen::Index shift = (k - lam.twice_spin()) / 2;
    for (Eigen::Index a = 0; a < static_cast<Eigen::Index>(dA); ++a)
      for (Eigen::Index ap = 0; ap < static_cast<Eigen::Index>(dA); ++ap)
        for (Eigen::Index i = 0; i < nw; ++i)
          for (Eigen::Index ip = 0; ip < nw; ++ip)
            sigma(a * nw_top + shift + i, ap * nw_top + shift + ip) += d * P(i, ip) * X(a * nw + i, ap * nw + ip);
  }
  sigma = 0.5 * (sigma + sigma.adjoint()).eval();
  return BosonicState(dA, k, std::move(sigma));
}

namespace {

void require_marginal(const DensityMatrix& rhoAB, std::size_t dA, std::size_t dB) {
  const auto& dims = rhoAB.layout().dims();
  if (dims.size() != 2 || dims[0] != dA || dims[1] != dB)
    throw std::invalid_argument("verify_extension: marginal layout does not match the extension");
}

std::vector<int> adjacent_swap(int k, int i) {
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i + 1)]);
  return perm;
}

// Checks (a)-(e) on an explicit operator with layout [dA, dB x k].
ExtensionReport verify_full(const ComplexMatrix& sigma, const SystemLayout& layout, const DensityMatrix& rhoAB, int k,
                            double tol) {
  ExtensionReport rep;
  rep.tol = tol;
  rep.min_eigenvalue = min_eigenvalue(sigma);
  rep.trace_error = std::abs(sigma.trace() - Complex(1.0, 0.0));
  for (int i = 1; i <= k; ++i) {
    const std::size_t keep[] = {0, static_cast<std::size_t>(i)};
    rep.marginal_error = std::max(rep.marginal_error, (partial_trace(sigma, layout, keep) - rhoAB.matrix()).norm());
  }
  for (int i = 0; i + 1 < k; ++i) {
    const auto perm = adjacent_swap(k, i);
    rep.permutation_error = std::max(rep.permutation_error, (permute_subsystems(sigma, layout, 1, perm) - sigma).norm());
  }
  const ComplexMatrix proj = symmetric_projector(k, layout.dim(1));
  const auto dA = static_cast<Eigen::Index>(layout.dim(0));
  const Eigen::Index nB = proj.rows();
  ComplexMatrix projected = ComplexMatrix::Zero(sigma.rows(), sigma.cols());
  for (Eigen::Index a = 0; a < dA; ++a)
    for (Eigen::Index ap = 0; ap < dA; ++ap)
      projected.block(a * nB, ap * nB, nB, nB) = proj * sigma.block(a * nB, ap * nB, nB, nB) * proj;
  rep.support_error = (sigma - projected).norm();
  return rep;
}

}  // namespace

ComplexMatrix symmetric_projector(int k, std::size_t dB) {
  if (k < 1 || dB < 1) throw std::invalid_argument("symmetric_projector: k and dB must be positive");
  const SystemLayout layout(std::vector<std::size_t>(static_cast<std::size_t>(k), dB));
  const std::size_t n = layout.total();
  // Group computational states by occupation numbers; each group spans one Dicke vector.
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::vector<std::size_t>> keys;
  for (std::size_t idx = 0; idx < n; ++idx) {
    const auto digits = digits_of(idx, layout);
    std::vector<std::size_t> occ(dB, 0);
    for (auto d : digits) ++occ[d];
    auto it = std::find(keys.begin(), keys.end(), occ);
    if (it == keys.end()) {
      keys.push_back(occ);
      groups.push_back({idx});
    } else {
      groups[static_cast<std::size_t>(it - keys.begin())].push_back(idx);
    }
  }
  ComplexMatrix proj = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& g : groups) {
    const double w = 1.0 / static_cast<double>(g.size());
    for (auto r : g)
      for (auto c : g) proj(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = w;
  }
  return proj;
}

ExtensionReport verify_extension(const DensityMatrix& sigma, const DensityMatrix& rhoAB, int k, double tol) {
  const auto& dims = sigma.layout().dims();
  if (k < 1 || dims.size() != static_cast<std::size_t>(k) + 1)
    throw std::invalid_argument("verify_extension: extension layout must be [dA, dB x k]");
  for (std::size_t i = 2; i < dims.size(); ++i)
    if (dims[i] != dims[1]) throw std::invalid_argument("verify_extension: B copies differ in dimension");
  require_marginal(rhoAB, dims[0], dims[1]);
  return verify_full(sigma.matrix(), sigma.layout(), rhoAB, k, tol);
}

ExtensionReport verify_extension(const BosonicState& sigma, const DensityMatrix& rhoAB, int k, double tol) {
  if (sigma.k() != k) throw std::invalid_argument("verify_extension: k does not match the bosonic state");
  require_marginal(rhoAB, sigma.dA(), 2);
  if (k <= kFullSpaceVerifyK) {
    const DensityMatrix full = sigma.embed();
    return verify_full(full.matrix(), full.layout(), rhoAB, k, tol);
  }
  // Dicke embedding is an isometry into the symmetric subspace: spectrum,
  // trace, invariance and support carry over, and every marginal is the same.
  ExtensionReport rep;
  rep.tol = tol;
  rep.analytic = true;
  rep.min_eigenvalue = min_eigenvalue(sigma.matrix());
  rep.trace_error = std::abs(sigma.matrix().trace() - Complex(1.0, 0.0));
  rep.marginal_error = (marginal_from_blocks(sigma.to_blocks()).matrix() - rhoAB.matrix()).norm();
  return rep;
}

ExtensionReport verify_extension(const BlockState& bs, const DensityMatrix& rhoAB, int k, double tol) {
  if (bs.k() != k) throw std::invalid_argument("verify_extension: k does not match the block state");
  require_marginal(rhoAB, bs.dA(), 2);
  if (k <= kFullSpaceVerifyK) {
    const DensityMatrix full = blocks_to_global(bs, build_schur_basis(k));
    return verify_full(full.matrix(), full.layout(), rhoAB, k, tol);
  }
  ExtensionReport rep;
  rep.tol = tol;
  rep.analytic = true;
  rep.min_eigenvalue = 0.0;
  bool first = true;
  for (const auto& [lam, X] : bs.blocks()) {
    const double lo = min_eigenvalue(X);
    rep.min_eigenvalue = first ? lo : std::min(rep.min_eigenvalue, lo);
    first = false;
    if (!lam.is_symmetric() && X.norm() > 0.0) rep.support_error = std::hypot(rep.support_error, X.norm() * std::sqrt(static_cast<double>(hook_dim(lam))));
  }
  rep.trace_error = std::abs(bs.weighted_trace() - 1.0);
  rep.marginal_error = (marginal_from_blocks(bs).matrix() - rhoAB.matrix()).norm();
  return rep;
}

TildeResult tilde_state(const DensityMatrix& rhoAB, int k, double tol) {
  const auto& dims = rhoAB.layout().dims();
  if (dims.size() != 2) throw std::invalid_argument("tilde_state: expected a bipartite layout");
  if (k < 1) throw std::invalid_argument("tilde_state: k must be >= 1");
  const std::size_t dB = dims[1];
  const std::size_t keepA[] = {0};
  const ComplexMatrix rhoA = partial_trace(rhoAB.matrix(), rhoAB.layout(), keepA);
  const ComplexMatrix idB = ComplexMatrix::Identity(static_cast<Eigen::Index>(dB), static_cast<Eigen::Index>(dB));
  const double kk = k;
  ComplexMatrix t;
  if (dB == 2) {
    t = (tensor_product(rhoA, idB) + kk * rhoAB.matrix()) / (kk + 2.0);
  } else {
    const double d = static_cast<double>(dB);
    t = (d * tensor_product(rhoA, idB) + kk * rhoAB.matrix()) / (d * d + kk);
  }
  t = 0.5 * (t + t.adjoint()).eval();
  const double lo = min_eigenvalue(partial_transpose(t, rhoAB.layout(), 1));
  return {DensityMatrix(std::move(t), rhoAB.layout()), lo, lo >= -tol};
}

}  // namespace symext
