#include "symext/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>

#include "symext/coefficients.hpp"
#include "symext/limits.hpp"

namespace symext {

std::string to_string(SolverMethod m) { return m == SolverMethod::Dykstra ? "dykstra" : "douglas-rachford"; }

std::string to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Feasible: return "FEASIBLE";
    case SolverStatus::Infeasible: return "INFEASIBLE";
    case SolverStatus::Undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

std::size_t packed_size(std::size_t n) { return n * n; }

namespace {

// Position of the real part of upper entry (i, j), i < j, in the packed vector.
std::size_t pair_offset(std::size_t n, std::size_t i, std::size_t j) {
  // pairs before row i: sum_{r<i} (n - 1 - r)
  const std::size_t before = i * (n - 1) - i * (i - 1) / 2;
  return n + 2 * (before + (j - i - 1));
}

}  // namespace

void pack_hermitian(const ComplexMatrix& h, Eigen::Ref<RealVector> out) {
  const auto n = static_cast<std::size_t>(h.rows());
  const double r2 = std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i) out(static_cast<Eigen::Index>(i)) = h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto off = static_cast<Eigen::Index>(pair_offset(n, i, j));
      const Complex v = h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      out(off) = r2 * v.real();
      out(off + 1) = r2 * v.imag();
    }
}

ComplexMatrix unpack_hermitian(const Eigen::Ref<const RealVector>& v, std::size_t n) {
  ComplexMatrix h(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i) h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = v(static_cast<Eigen::Index>(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto off = static_cast<Eigen::Index>(pair_offset(n, i, j));
      const Complex c(s * v(off), s * v(off + 1));
      h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c;
      h(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = std::conj(c);
    }
  return h;
}

namespace {

// Sparse image of one unit entry E_pq of block b in the output matrix.
struct Contribution {
  std::size_t row, col;
  Complex coef;
};
using EntryImage = std::function<void(std::size_t block, std::size_t p, std::size_t q, std::vector<Contribution>&)>;

// Dense-free construction of the packed linear map from its action on unit
// entries. The output is Hermitian of size out_dim; a final row holds the
// trace functional of the output.
Eigen::SparseMatrix<double> build_map(const std::vector<std::size_t>& block_dims, std::size_t out_dim,
                                      const EntryImage& image) {
  const std::size_t m = packed_size(out_dim);
  std::size_t N = 0;
  for (auto n : block_dims) N += packed_size(n);
  std::vector<Eigen::Triplet<double>> triplets;
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<Contribution> buf;
  std::map<std::pair<std::size_t, std::size_t>, Complex> acc;

  auto emit_column = [&](std::size_t col) {
    for (const auto& [rc, v] : acc) {
      const auto [r, c] = rc;
      if (r == c) {
        if (v.real() != 0.0) {
          triplets.emplace_back(static_cast<int>(r), static_cast<int>(col), v.real());
          triplets.emplace_back(static_cast<int>(m), static_cast<int>(col), v.real());
        }
      } else if (r < c) {
        const auto off = pair_offset(out_dim, r, c);
        if (v.real() != 0.0) triplets.emplace_back(static_cast<int>(off), static_cast<int>(col), std::sqrt(2.0) * v.real());
        if (v.imag() != 0.0) triplets.emplace_back(static_cast<int>(off + 1), static_cast<int>(col), std::sqrt(2.0) * v.imag());
      }
    }
    acc.clear();
  };
  auto add = [&](std::size_t b, std::size_t p, std::size_t q, Complex w) {
    buf.clear();
    image(b, p, q, buf);
    for (const auto& c : buf) acc[{c.row, c.col}] += w * c.coef;
  };

  std::size_t col0 = 0;
  for (std::size_t b = 0; b < block_dims.size(); ++b) {
    const std::size_t n = block_dims[b];
    for (std::size_t i = 0; i < n; ++i) {
      add(b, i, i, 1.0);
      emit_column(col0 + i);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::size_t off = col0 + pair_offset(n, i, j);
        add(b, i, j, s);
        add(b, j, i, s);
        emit_column(off);
        add(b, i, j, Complex(0.0, s));
        add(b, j, i, Complex(0.0, -s));
        emit_column(off + 1);
      }
    col0 += packed_size(n);
  }
  Eigen::SparseMatrix<double> L(static_cast<Eigen::Index>(m + 1), static_cast<Eigen::Index>(N));
  L.setFromTriplets(triplets.begin(), triplets.end());
  L.makeCompressed();
  return L;
}

RealVector packed_target(const ComplexMatrix& rho) {
  const auto n = static_cast<std::size_t>(rho.rows());
  RealVector b(static_cast<Eigen::Index>(packed_size(n) + 1));
  pack_hermitian(rho, b.head(static_cast<Eigen::Index>(packed_size(n))));
  b(b.size() - 1) = rho.trace().real();
  return b;
}

RealVector last_unit(Eigen::Index m) {
  RealVector e = RealVector::Zero(m);
  e(m - 1) = 1.0;
  return e;
}

// Orthogonal projector onto {x : L x = b} via the pseudo-inverse of L L^T.
class AffineProjector {
 public:
  explicit AffineProjector(const FeasibilityProblem& pb) : pb_(pb) {
    const RealMatrix LLt = RealMatrix(pb.map * pb.map.transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(LLt);
    const RealVector& ev = es.eigenvalues();
    const double cut = 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff());
    RealVector inv = RealVector::Zero(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (ev(i) > cut) inv(i) = 1.0 / ev(i);
    gram_pinv_ = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
  }

  RealVector project(const RealVector& x) const {
    const RealVector r = pb_.map * x - pb_.target;
    return x - pb_.map.transpose() * (gram_pinv_ * r);
  }

  // Least-squares dual vector y with map^T y closest to `direction`.
  RealVector dual_of(const RealVector& direction) const { return gram_pinv_ * (pb_.map * direction); }

 private:
  const FeasibilityProblem& pb_;
  RealMatrix gram_pinv_;
};

std::vector<std::size_t> block_offsets(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> off{0};
  for (auto n : dims) off.push_back(off.back() + packed_size(n));
  return off;
}

void project_psd_blocks(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& off, RealVector& x) {
#pragma omp parallel for schedule(dynamic)
  for (std::size_t b = 0; b < dims.size(); ++b) {
    auto seg = x.segment(static_cast<Eigen::Index>(off[b]), static_cast<Eigen::Index>(packed_size(dims[b])));
    const ComplexMatrix h = unpack_hermitian(seg, dims[b]);
    const auto es = hermitian_eigensystem(h);
    if (es.values(0) >= 0.0) continue;
    const RealVector clipped = es.values.cwiseMax(0.0);
    const ComplexMatrix p = es.vectors * clipped.asDiagonal() * es.vectors.adjoint();
    pack_hermitian(p, seg);
  }
}

double block_min_eigenvalue(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& off,
                            const RealVector& x, std::size_t b) {
  return min_eigenvalue(unpack_hermitian(x.segment(static_cast<Eigen::Index>(off[b]),
                                                   static_cast<Eigen::Index>(packed_size(dims[b]))),
                                         dims[b]));
}

double gap_from(const FeasibilityProblem& pb, const AffineProjector& aff, const std::vector<std::size_t>& off,
                const RealVector& direction) {
  if (direction.norm() == 0.0) return 0.0;
  RealVector y = aff.dual_of(direction);
  RealVector w = pb.map.transpose() * y;
  const RealVector e_img = pb.map.transpose() * pb.trace_functional;
  // Shift y along the trace functional until map^T y is PSD in every block.
  double shift = 0.0;
  for (std::size_t b = 0; b < pb.block_dims.size(); ++b) {
    const double lo = block_min_eigenvalue(pb.block_dims, off, w, b);
    const double scale = block_min_eigenvalue(pb.block_dims, off, e_img, b);
    if (scale <= 0.0) return 0.0;
    if (lo < 0.0) shift = std::max(shift, -lo / scale);
  }
  y += shift * pb.trace_functional;
  w += shift * e_img;
  const double wn = w.norm();
  if (wn == 0.0) return 0.0;
  // <w, psd> >= 0 while <w, affine point> = <y, target>.
  return std::max(0.0, -y.dot(pb.target) / wn);
}

}  // namespace

double certified_gap(const FeasibilityProblem& problem, const RealVector& direction) {
  const AffineProjector aff(problem);
  return gap_from(problem, aff, block_offsets(problem.block_dims), direction);
}

FeasibilityResult run_feasibility(const FeasibilityProblem& pb, const SolverConfig& cfg) {
  if (!(cfg.tol_feasible > 0.0) || !(cfg.tol_infeasible_gap > 0.0))
    throw std::invalid_argument("SolverConfig: tolerances must be positive");
  const auto off = block_offsets(pb.block_dims);
  const auto N = static_cast<Eigen::Index>(off.back());
  if (pb.map.cols() != N || pb.map.rows() != pb.target.size())
    throw std::invalid_argument("run_feasibility: map dimensions do not match blocks and target");
  const AffineProjector aff(pb);

  RealVector start = RealVector::Zero(N);
  if (cfg.seed != 0) {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> g;
    for (Eigen::Index i = 0; i < N; ++i) start(i) = g(rng);
    start /= std::max(1.0, start.norm());
  }

  constexpr std::size_t kCheckEvery = 10;
  constexpr std::size_t kGapEvery = 50;
  constexpr std::size_t kStallWindow = 500;

  const bool dykstra = cfg.method == SolverMethod::Dykstra;
  RealVector x = aff.project(start);
  RealVector z = start;                  // Douglas-Rachford governing sequence
  RealVector p = RealVector::Zero(N);    // Dykstra correction
  RealVector y(N);
  FeasibilityResult res;
  res.residual = std::numeric_limits<double>::infinity();
  double best_gap = 0.0;
  std::size_t best_gap_iter = 0;
  bool separated = false;

  for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
    if (dykstra) {
      const RealVector w = x + p;
      y = w;
      project_psd_blocks(pb.block_dims, off, y);
      p = w - y;
      x = aff.project(y);
    } else {
      y = z;
      project_psd_blocks(pb.block_dims, off, y);
      x = aff.project(2.0 * y - z);
      z += x - y;
    }
    res.iterations = it;

    if (it % kCheckEvery == 0 || it == cfg.max_iter) {
      const double r = (pb.map * y - pb.target).norm();
      if (r < res.residual) {
        res.residual = r;
        res.point = y;
      }
      if (r <= cfg.tol_feasible) {
        res.status = SolverStatus::Feasible;
        res.residual = r;
        res.point = y;
        return res;
      }
    }
    if (it % kGapEvery == 0) {
      const double g = gap_from(pb, aff, off, y - x);
      if (g > best_gap * (1.0 + 1e-4)) best_gap_iter = it;
      best_gap = std::max(best_gap, g);
      if (best_gap > cfg.tol_infeasible_gap) separated = true;
      if (separated && it - best_gap_iter >= kStallWindow) break;
    }
  }
  res.gap = best_gap;
  res.status = separated ? SolverStatus::Infeasible : SolverStatus::Undecided;
  return res;
}

namespace {

void require_qubit_b(const DensityMatrix& rhoAB, const char* who) {
  const auto& dims = rhoAB.layout().dims();
  if (dims.size() != 2) throw std::invalid_argument(std::string(who) + ": expected a bipartite layout [dA, dB]");
  if (dims[1] != 2) throw std::invalid_argument(std::string(who) + ": B must be a qubit (use solve_bosonic_k2_generic)");
}

// Problem in scaled block coordinates y_lam = sqrt(d_lam) X_lam, so that the
// packed norm equals the Hilbert-Schmidt norm of the global operator.
struct BlockProblem {
  FeasibilityProblem problem;
  std::vector<YoungDiagram> diagrams;
  std::vector<double> scale;  // sqrt(d_lam)
};

BlockProblem block_problem(const DensityMatrix& rhoAB, int k, const std::vector<YoungDiagram>& diagrams) {
  BlockProblem bp;
  bp.diagrams = diagrams;
  const std::size_t dA = rhoAB.layout().dim(0);
  std::vector<MarginalStencil> stencils;
  for (const auto& lam : diagrams) {
    bp.problem.block_dims.push_back(BlockState::block_dim(dA, lam));
    bp.scale.push_back(std::sqrt(static_cast<double>(hook_dim(lam))));
    stencils.push_back(marginal_stencil(lam, k));
  }
  const EntryImage image = [&](std::size_t b, std::size_t p, std::size_t q, std::vector<Contribution>& out) {
    const auto nw = static_cast<std::size_t>(diagrams[b].weight_count());
    const std::size_t a = p / nw, i = p % nw, ap = q / nw, ip = q % nw;
    const double w = bp.scale[b];  // d / sqrt(d)
    const auto& st = stencils[b];
    if (i == ip) {
      out.push_back({2 * a, 2 * ap, w * st.t0[i]});
      out.push_back({2 * a + 1, 2 * ap + 1, w * st.t1[i]});
    } else if (ip == i + 1) {
      out.push_back({2 * a, 2 * ap + 1, w * st.alpha[i]});
    } else if (i == ip + 1) {
      out.push_back({2 * a + 1, 2 * ap, w * st.alpha[ip]});
    }
  };
  bp.problem.map = build_map(bp.problem.block_dims, 2 * dA, image);
  bp.problem.target = packed_target(rhoAB.matrix());
  bp.problem.trace_functional = last_unit(bp.problem.target.size());
  return bp;
}

SolverReport finish_block_report(const BlockProblem& bp, const FeasibilityResult& fr, const DensityMatrix& rhoAB,
                                 int k) {
  SolverReport rep;
  rep.status = fr.status;
  rep.residual = fr.residual;
  rep.gap_estimate = fr.gap;
  rep.iterations = fr.iterations;
  if (fr.status == SolverStatus::Feasible) {
    BlockState::BlockMap blocks;
    std::size_t offset = 0;
    for (std::size_t b = 0; b < bp.diagrams.size(); ++b) {
      const std::size_t n = bp.problem.block_dims[b];
      const auto seg = fr.point.segment(static_cast<Eigen::Index>(offset), static_cast<Eigen::Index>(packed_size(n)));
      blocks.emplace(bp.diagrams[b], unpack_hermitian(seg, n) / bp.scale[b]);
      offset += packed_size(n);
    }
    BlockState cert(k, rhoAB.layout().dim(0), std::move(blocks));
    rep.residual = (marginal_from_blocks(cert).matrix() - rhoAB.matrix()).norm();
    rep.certificate = std::move(cert);
  }
  return rep;
}

}  // namespace

SolverReport solve_symmetric(const DensityMatrix& rhoAB, int k, const SolverConfig& cfg) {
  require_qubit_b(rhoAB, "solve_symmetric");
  require_k_in_range(k, max_block_k(), "solve_symmetric");
  rhoAB.validate_state();
  const auto bp = block_problem(rhoAB, k, list_diagrams(k));
  return finish_block_report(bp, run_feasibility(bp.problem, cfg), rhoAB, k);
}

SolverReport solve_bosonic(const DensityMatrix& rhoAB, int k, const SolverConfig& cfg) {
  require_qubit_b(rhoAB, "solve_bosonic");
  require_k_in_range(k, max_block_k(), "solve_bosonic");
  rhoAB.validate_state();
  const auto bp = block_problem(rhoAB, k, {YoungDiagram(k, 0)});
  return finish_block_report(bp, run_feasibility(bp.problem, cfg), rhoAB, k);
}

namespace {

// Isometry Sym^2(C^d) -> C^d (x) C^d: |ii> and (|ij> + |ji>)/sqrt(2) for i < j.
RealMatrix symmetric_square_isometry(std::size_t d) {
  const std::size_t s = d * (d + 1) / 2;
  RealMatrix V = RealMatrix::Zero(static_cast<Eigen::Index>(d * d), static_cast<Eigen::Index>(s));
  std::size_t col = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j, ++col) {
      const auto c = static_cast<Eigen::Index>(col);
      if (i == j) {
        V(static_cast<Eigen::Index>(i * d + i), c) = 1.0;
      } else {
        V(static_cast<Eigen::Index>(i * d + j), c) = 1.0 / std::sqrt(2.0);
        V(static_cast<Eigen::Index>(j * d + i), c) = 1.0 / std::sqrt(2.0);
      }
    }
  return V;
}

}  // namespace

SolverReport solve_bosonic_k2_generic(const DensityMatrix& rhoAB, std::size_t dB, const SolverConfig& cfg) {
  const auto& dims = rhoAB.layout().dims();
  if (dims.size() != 2 || dims[1] != dB || dB < 2)
    throw std::invalid_argument("solve_bosonic_k2_generic: layout must be [dA, dB] with dB >= 2");
  rhoAB.validate_state();
  const std::size_t dA = dims[0];
  const RealMatrix V = symmetric_square_isometry(dB);
  const std::size_t s = static_cast<std::size_t>(V.cols());
  const std::size_t n = dA * s;

  // Unit entry E_pq on A (x) Sym maps to Tr_{B_2} (1 (x) V) E_pq (1 (x) V)^T.
  const EntryImage image = [&](std::size_t, std::size_t p, std::size_t q, std::vector<Contribution>& out) {
    const std::size_t a = p / s, u = p % s, ap = q / s, v = q % s;
    for (std::size_t b1 = 0; b1 < dB; ++b1)
      for (std::size_t b1p = 0; b1p < dB; ++b1p) {
        double c = 0.0;
        for (std::size_t b2 = 0; b2 < dB; ++b2)
          c += V(static_cast<Eigen::Index>(b1 * dB + b2), static_cast<Eigen::Index>(u)) *
               V(static_cast<Eigen::Index>(b1p * dB + b2), static_cast<Eigen::Index>(v));
        if (c != 0.0) out.push_back({a * dB + b1, ap * dB + b1p, c});
      }
  };
  FeasibilityProblem pb;
  pb.block_dims = {n};
  pb.map = build_map(pb.block_dims, dA * dB, image);
  pb.target = packed_target(rhoAB.matrix());
  pb.trace_functional = last_unit(pb.target.size());
  const auto fr = run_feasibility(pb, cfg);

  SolverReport rep;
  rep.status = fr.status;
  rep.residual = fr.residual;
  rep.gap_estimate = fr.gap;
  rep.iterations = fr.iterations;
  if (fr.status == SolverStatus::Feasible) {
    const ComplexMatrix X = unpack_hermitian(fr.point, n);
    ComplexMatrix iso = ComplexMatrix::Zero(static_cast<Eigen::Index>(dA * dB * dB), static_cast<Eigen::Index>(n));
    for (std::size_t a = 0; a < dA; ++a)
      iso.block(static_cast<Eigen::Index>(a * dB * dB), static_cast<Eigen::Index>(a * s), V.rows(), V.cols()) = V.cast<Complex>();
    ComplexMatrix full = iso * X * iso.adjoint();
    full = 0.5 * (full + full.adjoint()).eval();
    DensityMatrix ext(std::move(full), SystemLayout::with_copies(dA, dB, 2));
    const std::size_t keep[] = {0, 1};
    rep.residual = (partial_trace(ext.matrix(), ext.layout(), keep) - rhoAB.matrix()).norm();
    rep.extension = std::move(ext);
  }
  return rep;
}

}  // namespace symext
