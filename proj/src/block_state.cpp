#include "symext/block_state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "symext/coefficients.hpp"
#include "symext/limits.hpp"

namespace symext {

BlockState::BlockState(int k, std::size_t dA, BlockMap blocks) : k_(k), dA_(dA), blocks_(std::move(blocks)) {
  require_k_in_range(k, max_block_k(), "BlockState");
  if (dA < 1) throw std::invalid_argument("BlockState: dA must be >= 1");
  for (const auto& [lam, X] : blocks_) {
    if (lam.k() != k) throw std::invalid_argument("BlockState: diagram " + lam.to_string() + " does not partition k");
    const auto n = static_cast<Eigen::Index>(block_dim(dA, lam));
    if (X.rows() != n || X.cols() != n)
      throw std::invalid_argument("BlockState: block " + lam.to_string() + " has wrong dimension");
    if (!X.allFinite()) throw std::invalid_argument("BlockState: non-finite entry");
    if (hermitian_defect(X) > kHermitianTol)
      throw std::invalid_argument("BlockState: block " + lam.to_string() + " is not Hermitian");
  }
}

const ComplexMatrix* BlockState::find(const YoungDiagram& lam) const {
  auto it = blocks_.find(lam);
  return it == blocks_.end() ? nullptr : &it->second;
}

double BlockState::weighted_trace() const {
  double total = 0.0;
  for (const auto& [lam, X] : blocks_) total += static_cast<double>(hook_dim(lam)) * X.trace().real();
  return total;
}

void BlockState::validate(double tol) const {
  for (const auto& [lam, X] : blocks_) {
    const double lo = min_eigenvalue(X);
    if (lo < -tol)
      throw std::invalid_argument("BlockState: block " + lam.to_string() + " has eigenvalue " + std::to_string(lo));
  }
  const double tr = weighted_trace();
  if (std::abs(tr - 1.0) > tol) throw std::invalid_argument("BlockState: weighted trace " + std::to_string(tr) + " != 1");
}

MarginalStencil marginal_stencil(const YoungDiagram& lam, int k) {
  MarginalStencil st;
  const auto weights = weights_of(lam);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const auto t = diagonal_weights(k, weights[i]);
    st.t0.push_back(t.t0);
    st.t1.push_back(t.t1);
    if (i + 1 < weights.size()) st.alpha.push_back(alpha_coeff(lam, weights[i], weights[i + 1], k));
  }
  return st;
}

DensityMatrix marginal_from_blocks(const BlockState& bs) {
  const auto dA = static_cast<Eigen::Index>(bs.dA());
  ComplexMatrix out = ComplexMatrix::Zero(2 * dA, 2 * dA);
  for (const auto& [lam, X] : bs.blocks()) {
    const double d = static_cast<double>(hook_dim(lam));
    const auto st = marginal_stencil(lam, bs.k());
    const auto nw = static_cast<Eigen::Index>(lam.weight_count());
    for (Eigen::Index a = 0; a < dA; ++a) {
      for (Eigen::Index ap = 0; ap < dA; ++ap) {
        for (Eigen::Index i = 0; i < nw; ++i) {
          const Complex diag = X(a * nw + i, ap * nw + i);
          out(2 * a, 2 * ap) += d * st.t0[static_cast<std::size_t>(i)] * diag;
          out(2 * a + 1, 2 * ap + 1) += d * st.t1[static_cast<std::size_t>(i)] * diag;
          if (i + 1 < nw) {
            const double al = d * st.alpha[static_cast<std::size_t>(i)];
            out(2 * a, 2 * ap + 1) += al * X(a * nw + i, ap * nw + i + 1);
            out(2 * a + 1, 2 * ap) += al * X(a * nw + i + 1, ap * nw + i);
          }
        }
      }
    }
  }
  return DensityMatrix(std::move(out), SystemLayout({bs.dA(), 2}));
}

namespace {

// Work item of the sector-pair kernels: A-indices (a, a') and sectors (s, s').
struct SectorTask {
  std::size_t a, ap, s, sp;
};

std::vector<SectorTask> sector_tasks(std::size_t dA, std::size_t sectors) {
  std::vector<SectorTask> tasks;
  tasks.reserve(dA * dA * sectors * sectors);
  for (std::size_t a = 0; a < dA; ++a)
    for (std::size_t ap = 0; ap < dA; ++ap)
      for (std::size_t s = 0; s < sectors; ++s)
        for (std::size_t sp = 0; sp < sectors; ++sp) tasks.push_back({a, ap, s, sp});
  return tasks;
}

// Number of leading columns whose multiplets reach both sectors.
std::size_t shared_columns(const SchurBasis::Sector& x, const SchurBasis::Sector& y) {
  return std::min(x.indices.size(), y.indices.size());
}

}  // namespace

DensityMatrix blocks_to_global(const BlockState& bs, const SchurBasis& basis) {
  if (bs.k() != basis.k()) throw std::invalid_argument("blocks_to_global: basis built for a different k");
  const std::size_t dA = bs.dA();
  const std::size_t nB = basis.dim();
  const auto& sectors = basis.sectors();
  const auto n = static_cast<Eigen::Index>(dA * nB);
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  const auto tasks = sector_tasks(dA, sectors.size());

#pragma omp parallel for schedule(dynamic)
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const auto& task = tasks[t];
    const auto& S = sectors[task.s];
    const auto& Sp = sectors[task.sp];
    const auto L = static_cast<Eigen::Index>(shared_columns(S, Sp));
    KetVector y = KetVector::Zero(L);
    bool any = false;
    for (Eigen::Index c = 0; c < L; ++c) {
      const auto& lab = S.labels[static_cast<std::size_t>(c)];
      const ComplexMatrix* X = bs.find(lab.diagram);
      if (!X) continue;
      const auto nw = static_cast<Eigen::Index>(lab.diagram.weight_count());
      const auto i = static_cast<Eigen::Index>(weight_position(lab.diagram, lab.weight));
      const auto ip = static_cast<Eigen::Index>(weight_position(lab.diagram, Sp.labels[static_cast<std::size_t>(c)].weight));
      y(c) = (*X)(static_cast<Eigen::Index>(task.a) * nw + i, static_cast<Eigen::Index>(task.ap) * nw + ip);
      any = any || y(c) != Complex(0.0, 0.0);
    }
    if (!any) continue;
    const ComplexMatrix left = S.columns.leftCols(L).cast<Complex>() * y.asDiagonal();
    const ComplexMatrix block = left * Sp.columns.leftCols(L).transpose().cast<Complex>();
    for (std::size_t j = 0; j < Sp.indices.size(); ++j) {
      const auto col = static_cast<Eigen::Index>(task.ap * nB + Sp.indices[j]);
      for (std::size_t i = 0; i < S.indices.size(); ++i)
        out(static_cast<Eigen::Index>(task.a * nB + S.indices[i]), col) = block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return DensityMatrix(std::move(out), SystemLayout::with_qubits(dA, basis.k()));
}

BlockState global_to_blocks(const DensityMatrix& rho, const SchurBasis& basis) {
  const int k = basis.k();
  const auto& dims = rho.layout().dims();
  if (dims.size() != static_cast<std::size_t>(k) + 1)
    throw std::invalid_argument("global_to_blocks: layout must be [dA, 2 x k]");
  for (std::size_t i = 1; i < dims.size(); ++i)
    if (dims[i] != 2) throw std::invalid_argument("global_to_blocks: B subsystems must be qubits");
  const std::size_t dA = dims[0];
  const std::size_t nB = basis.dim();
  const auto& sectors = basis.sectors();
  const auto tasks = sector_tasks(dA, sectors.size());
  const ComplexMatrix& m = rho.matrix();

  // z[t](c) = <a, col c of s| rho |a', col c of s'>.
  std::vector<KetVector> z(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const auto& task = tasks[t];
    const auto& S = sectors[task.s];
    const auto& Sp = sectors[task.sp];
    const auto L = static_cast<Eigen::Index>(shared_columns(S, Sp));
    ComplexMatrix sub(static_cast<Eigen::Index>(S.indices.size()), static_cast<Eigen::Index>(Sp.indices.size()));
    for (std::size_t j = 0; j < Sp.indices.size(); ++j)
      for (std::size_t i = 0; i < S.indices.size(); ++i)
        sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            m(static_cast<Eigen::Index>(task.a * nB + S.indices[i]), static_cast<Eigen::Index>(task.ap * nB + Sp.indices[j]));
    const ComplexMatrix right = sub * Sp.columns.leftCols(L).cast<Complex>();
    z[t] = (S.columns.leftCols(L).cast<Complex>().array() * right.array()).colwise().sum().transpose();
  }

  BlockState::BlockMap blocks;
  for (const auto& lam : basis.diagrams()) {
    const auto n = static_cast<Eigen::Index>(BlockState::block_dim(dA, lam));
    blocks.emplace(lam, ComplexMatrix::Zero(n, n));
  }
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const auto& task = tasks[t];
    const auto& S = sectors[task.s];
    const auto& Sp = sectors[task.sp];
    for (Eigen::Index c = 0; c < z[t].size(); ++c) {
      const auto& lab = S.labels[static_cast<std::size_t>(c)];
      const auto nw = static_cast<Eigen::Index>(lab.diagram.weight_count());
      const auto i = static_cast<Eigen::Index>(weight_position(lab.diagram, lab.weight));
      const auto ip = static_cast<Eigen::Index>(weight_position(lab.diagram, Sp.labels[static_cast<std::size_t>(c)].weight));
      blocks[lab.diagram](static_cast<Eigen::Index>(task.a) * nw + i, static_cast<Eigen::Index>(task.ap) * nw + ip) += z[t](c);
    }
  }
  for (auto& [lam, X] : blocks) {
    X /= static_cast<double>(hook_dim(lam));
    X = 0.5 * (X + X.adjoint()).eval();
  }
  return BlockState(k, dA, std::move(blocks));
}

}  // namespace symext
