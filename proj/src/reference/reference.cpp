#include "symext/reference.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/QR>

namespace symext::ref {

ComplexMatrix partial_trace(const ComplexMatrix& m, const SystemLayout& layout, std::span<const std::size_t> keep) {
  const std::size_t n = layout.total();
  std::vector<bool> kept(layout.size(), false);
  for (auto s : keep) kept.at(s) = true;
  std::vector<std::size_t> kdims;
  for (std::size_t s = 0; s < layout.size(); ++s)
    if (kept[s]) kdims.push_back(layout.dim(s));
  const SystemLayout out_layout(kdims);
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(out_layout.total()), static_cast<Eigen::Index>(out_layout.total()));
  for (std::size_t r = 0; r < n; ++r) {
    const auto dr = digits_of(r, layout);
    for (std::size_t c = 0; c < n; ++c) {
      const auto dc = digits_of(c, layout);
      bool diag = true;
      std::vector<std::size_t> kr, kc;
      for (std::size_t s = 0; s < layout.size(); ++s) {
        if (kept[s]) {
          kr.push_back(dr[s]);
          kc.push_back(dc[s]);
        } else if (dr[s] != dc[s]) {
          diag = false;
        }
      }
      if (!diag) continue;
      out(static_cast<Eigen::Index>(index_of(kr, out_layout)), static_cast<Eigen::Index>(index_of(kc, out_layout))) +=
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const SystemLayout& layout, std::size_t subsystem) {
  const std::size_t n = layout.total();
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      auto dr = digits_of(r, layout);
      auto dc = digits_of(c, layout);
      std::swap(dr[subsystem], dc[subsystem]);
      out(static_cast<Eigen::Index>(index_of(dr, layout)), static_cast<Eigen::Index>(index_of(dc, layout))) =
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  return out;
}

ComplexMatrix permutation_matrix(int k, std::span<const int> perm, std::size_t local_dim) {
  const SystemLayout layout(std::vector<std::size_t>(static_cast<std::size_t>(k), local_dim));
  const std::size_t n = layout.total();
  ComplexMatrix P = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t c = 0; c < n; ++c) {
    const auto d = digits_of(c, layout);
    std::vector<std::size_t> img(d.size());
    for (std::size_t t = 0; t < d.size(); ++t) img[static_cast<std::size_t>(perm[t])] = d[t];
    P(static_cast<Eigen::Index>(index_of(img, layout)), static_cast<Eigen::Index>(c)) = 1.0;
  }
  return P;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const SystemLayout& layout, std::size_t first,
                                 std::span<const int> perm) {
  std::size_t before = 1, after = 1;
  for (std::size_t s = 0; s < first; ++s) before *= layout.dim(s);
  for (std::size_t s = first + perm.size(); s < layout.size(); ++s) after *= layout.dim(s);
  const ComplexMatrix P = permutation_matrix(static_cast<int>(perm.size()), perm, layout.dim(first));
  const ComplexMatrix full = tensor_product(
      tensor_product(ComplexMatrix::Identity(static_cast<Eigen::Index>(before), static_cast<Eigen::Index>(before)), P),
      ComplexMatrix::Identity(static_cast<Eigen::Index>(after), static_cast<Eigen::Index>(after)));
  return full * m * full.adjoint();
}

DensityMatrix blocks_to_global(const BlockState& bs, const SchurBasis& basis) {
  const auto dA = static_cast<Eigen::Index>(bs.dA());
  const auto nB = static_cast<Eigen::Index>(basis.dim());
  ComplexMatrix out = ComplexMatrix::Zero(dA * nB, dA * nB);
  for (const auto& [lam, X] : bs.blocks()) {
    const auto weights = weights_of(lam);
    const auto nw = static_cast<Eigen::Index>(weights.size());
    for (std::size_t mu = 0; mu < basis.paths(lam).size(); ++mu) {
      ComplexMatrix V(nB, nw);
      for (Eigen::Index i = 0; i < nw; ++i) V.col(i) = basis.vector(lam, mu, weights[static_cast<std::size_t>(i)]);
      for (Eigen::Index a = 0; a < dA; ++a)
        for (Eigen::Index ap = 0; ap < dA; ++ap)
          out.block(a * nB, ap * nB, nB, nB) += V * X.block(a * nw, ap * nw, nw, nw) * V.adjoint();
    }
  }
  return DensityMatrix(std::move(out), SystemLayout::with_qubits(bs.dA(), basis.k()));
}

BlockState global_to_blocks(const DensityMatrix& rho, const SchurBasis& basis) {
  const std::size_t dAu = rho.layout().dim(0);
  const auto dA = static_cast<Eigen::Index>(dAu);
  const auto nB = static_cast<Eigen::Index>(basis.dim());
  const ComplexMatrix& m = rho.matrix();
  BlockState::BlockMap blocks;
  for (const auto& lam : basis.diagrams()) {
    const auto weights = weights_of(lam);
    const auto nw = static_cast<Eigen::Index>(weights.size());
    ComplexMatrix X = ComplexMatrix::Zero(dA * nw, dA * nw);
    const auto copies = basis.paths(lam).size();
    for (std::size_t mu = 0; mu < copies; ++mu) {
      ComplexMatrix V(nB, nw);
      for (Eigen::Index i = 0; i < nw; ++i) V.col(i) = basis.vector(lam, mu, weights[static_cast<std::size_t>(i)]);
      for (Eigen::Index a = 0; a < dA; ++a)
        for (Eigen::Index ap = 0; ap < dA; ++ap)
          X.block(a * nw, ap * nw, nw, nw) += V.adjoint() * m.block(a * nB, ap * nB, nB, nB) * V;
    }
    X /= static_cast<double>(copies);
    X = 0.5 * (X + X.adjoint()).eval();
    blocks.emplace(lam, std::move(X));
  }
  return BlockState(basis.k(), dAu, std::move(blocks));
}

ComplexMatrix twirl_bruteforce(const ComplexMatrix& rho, const SystemLayout& layout) {
  const int k = static_cast<int>(layout.size()) - 1;
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  ComplexMatrix acc = ComplexMatrix::Zero(rho.rows(), rho.cols());
  std::size_t count = 0;
  do {
    acc += ref::permute_subsystems(rho, layout, 1, perm);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc / static_cast<double>(count);
}

EigenSystem jacobi_eigensystem(const ComplexMatrix& h, int max_sweeps) {
  ComplexMatrix A = 0.5 * (h + h.adjoint());
  const Eigen::Index n = A.rows();
  ComplexMatrix V = ComplexMatrix::Identity(n, n);
  const double scale = std::max(A.norm(), 1e-300);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(A(p, q));
    if (std::sqrt(off) <= 1e-15 * scale) break;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double beta = std::abs(A(p, q));
        if (beta <= 1e-300) continue;
        const Complex phase = A(p, q) / beta;
        const double theta = 0.5 * std::atan2(2.0 * beta, A(q, q).real() - A(p, p).real());
        const double c = std::cos(theta), s = std::sin(theta);
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on (p, q).
        const Complex j_pp = c, j_pq = s, j_qp = -s * std::conj(phase), j_qq = c * std::conj(phase);
        for (Eigen::Index r = 0; r < n; ++r) {  // A <- A J
          const Complex ap = A(r, p), aq = A(r, q);
          A(r, p) = ap * j_pp + aq * j_qp;
          A(r, q) = ap * j_pq + aq * j_qq;
        }
        for (Eigen::Index r = 0; r < n; ++r) {  // A <- J^dagger A
          const Complex ap = A(p, r), aq = A(q, r);
          A(p, r) = std::conj(j_pp) * ap + std::conj(j_qp) * aq;
          A(q, r) = std::conj(j_pq) * ap + std::conj(j_qq) * aq;
        }
        A(p, q) = A(q, p) = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) {
          const Complex vp = V(r, p), vq = V(r, q);
          V(r, p) = vp * j_pp + vq * j_qp;
          V(r, q) = vp * j_pq + vq * j_qq;
        }
      }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return A(x, x).real() < A(y, y).real(); });
  EigenSystem es;
  es.values.resize(n);
  es.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    es.values(i) = A(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]).real();
    es.vectors.col(i) = V.col(order[static_cast<std::size_t>(i)]);
  }
  return es;
}

RealVector jacobi_eigenvalues(const ComplexMatrix& h) { return jacobi_eigensystem(h).values; }

ComplexMatrix psd_project(const ComplexMatrix& h) {
  const auto es = jacobi_eigensystem(h);
  return es.vectors * es.values.cwiseMax(0.0).asDiagonal() * es.vectors.adjoint();
}

std::uint64_t count_standard_tableaux(const YoungDiagram& lam) {
  std::function<std::uint64_t(int, int)> fill = [&](int row1, int row2) -> std::uint64_t {
    if (row1 == lam.lambda1 && row2 == lam.lambda2) return 1;
    std::uint64_t total = 0;
    if (row1 < lam.lambda1) total += fill(row1 + 1, row2);
    if (row2 < lam.lambda2 && row2 < row1) total += fill(row1, row2 + 1);
    return total;
  };
  return fill(0, 0);
}

namespace {

// Single-qubit operator `op` on qubit q (0 = most significant) of k.
ComplexMatrix on_qubit(const ComplexMatrix& op, int q, int k) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int t = 0; t < k; ++t) out = tensor_product(out, t == q ? op : ComplexMatrix::Identity(2, 2));
  return out;
}

// Total spin components; |1> has J_z = +1/2.
struct TotalSpin {
  ComplexMatrix jx, jy, jz, jminus;
};

TotalSpin total_spin(int k) {
  ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2), sm(2, 2);
  sx << 0, 0.5, 0.5, 0;
  sy << 0, Complex(0, 0.5), Complex(0, -0.5), 0;  // basis order |0>, |1> with |1> = spin up
  sz << -0.5, 0, 0, 0.5;
  sm << 0, 1, 0, 0;  // |1> -> |0>
  const auto n = static_cast<Eigen::Index>(std::size_t{1} << k);
  TotalSpin t{ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n)};
  for (int q = 0; q < k; ++q) {
    t.jx += on_qubit(sx, q, k);
    t.jy += on_qubit(sy, q, k);
    t.jz += on_qubit(sz, q, k);
    t.jminus += on_qubit(sm, q, k);
  }
  return t;
}

}  // namespace

ComplexMatrix total_spin_squared(int k) {
  const auto t = total_spin(k);
  return t.jx * t.jx + t.jy * t.jy + t.jz * t.jz;
}

ComplexMatrix isotypic_projector(const YoungDiagram& lam, Weight w) {
  const int k = lam.k();
  const ComplexMatrix J2 = total_spin_squared(k);
  const auto n = J2.rows();
  const double target = 0.25 * lam.twice_spin() * (lam.twice_spin() + 2);
  ComplexMatrix proj = ComplexMatrix::Identity(n, n);
  for (const auto& other : list_diagrams(k)) {
    if (other == lam) continue;
    const double e = 0.25 * other.twice_spin() * (other.twice_spin() + 2);
    proj = (proj * (J2 - e * ComplexMatrix::Identity(n, n)) / (target - e)).eval();
  }
  const int ones = w.ones(k);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int pc = std::popcount(static_cast<std::uint64_t>(i));
    if (pc != ones) {
      proj.row(i).setZero();
      proj.col(i).setZero();
    }
  }
  return proj;
}

ComplexMatrix isotypic_transfer(const YoungDiagram& lam, Weight w) {
  const Weight up{w.twice + 2};
  const double tj = lam.twice_spin();
  const double c = 0.5 * std::sqrt((tj + up.twice) * (tj - up.twice + 2.0));
  return total_spin(lam.k()).jminus * isotypic_projector(lam, up) / c;
}

double full_space_displacement(const DensityMatrix& rhoAB, int k, int iterations) {
  const std::size_t dA = rhoAB.layout().dim(0);
  const std::size_t dB = rhoAB.layout().dim(1);
  const SystemLayout layout = SystemLayout::with_copies(dA, dB, k);
  const auto n = static_cast<Eigen::Index>(layout.total());
  const Eigen::Index nvar = 2 * n * n;  // Re and Im of every entry, column-major

  auto to_vec = [&](const ComplexMatrix& m) {
    RealVector v(nvar);
    for (Eigen::Index i = 0; i < n * n; ++i) {
      v(2 * i) = m.data()[i].real();
      v(2 * i + 1) = m.data()[i].imag();
    }
    return v;
  };
  auto to_mat = [&](const RealVector& v) {
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n * n; ++i) m.data()[i] = Complex(v(2 * i), v(2 * i + 1));
    return m;
  };

  // Constraint rows from images of unit entries under linear maps.
  std::vector<std::function<ComplexMatrix(const ComplexMatrix&)>> maps;
  maps.push_back([](const ComplexMatrix& m) { return ComplexMatrix(m - m.adjoint()); });
  for (int i = 0; i + 1 < k; ++i) {
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i) + 1]);
    maps.push_back([=, &layout](const ComplexMatrix& m) { return ComplexMatrix(ref::permute_subsystems(m, layout, 1, perm) - m); });
  }
  const std::size_t keep[] = {0, 1};
  maps.push_back([&](const ComplexMatrix& m) { return ref::partial_trace(m, layout, keep); });

  std::vector<RealMatrix> parts;
  RealVector rhs_marginal = to_vec(rhoAB.matrix());
  Eigen::Index rows = 0;
  for (const auto& f : maps) {
    const Eigen::Index out = 2 * f(ComplexMatrix::Zero(n, n)).size();
    RealMatrix C(out, nvar);
    for (Eigen::Index j = 0; j < nvar; ++j) {
      RealVector e = RealVector::Zero(nvar);
      e(j) = 1.0;
      const ComplexMatrix img = f(to_mat(e));
      for (Eigen::Index i = 0; i < img.size(); ++i) {
        C(2 * i, j) = img.data()[i].real();
        C(2 * i + 1, j) = img.data()[i].imag();
      }
    }
    rows += out;
    parts.push_back(std::move(C));
  }
  RealMatrix C(rows, nvar);
  RealVector rhs = RealVector::Zero(rows);
  Eigen::Index r0 = 0;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    C.middleRows(r0, parts[p].rows()) = parts[p];
    if (p + 1 == parts.size()) rhs.segment(r0, parts[p].rows()) = rhs_marginal;
    r0 += parts[p].rows();
  }
  const Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod(C);
  const RealMatrix pinv = cod.pseudoInverse();
  auto project_affine = [&](const RealVector& x) -> RealVector { return x - pinv * (C * x - rhs); };

  RealVector x = project_affine(RealVector::Zero(nvar));
  double disp = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const RealVector y = to_vec(psd_project(to_mat(x)));
    disp = (y - x).norm();
    x = project_affine(y);
  }
  return disp;
}

}  // namespace symext::ref
