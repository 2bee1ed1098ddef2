#include "symext/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "symext/coefficients.hpp"
#include "symext/convert.hpp"
#include "symext/generate.hpp"
#include "symext/instances.hpp"
#include "symext/io.hpp"
#include "symext/reference.hpp"
#include "symext/solver.hpp"

namespace symext {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Collects failed requirements and the worst observed errors of a criterion.
class Probe {
 public:
  void require(bool cond, const std::string& what) {
    if (!cond && failures_ < 5) msgs_ << (failures_ ? "; " : "") << what;
    if (!cond) ++failures_;
  }
  void track(const std::string& key, double v, double limit = std::numeric_limits<double>::infinity()) {
    require(v <= limit, key + " above " + fmt("%g", limit));
    for (auto& [k, x] : worst_)
      if (k == key) {
        x = std::max(x, v);
        return;
      }
    worst_.emplace_back(key, v);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failures_ == 0; }
  std::string detail() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : worst_) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.2e", v);
      os << (first ? "" : ", ") << k << "=" << buf;
      first = false;
    }
    for (const auto& n : notes_) {
      os << (first ? "" : ", ") << n;
      first = false;
    }
    if (failures_) os << (first ? "" : " | ") << failures_ << " failed: " << msgs_.str();
    return os.str();
  }

 private:
  int failures_ = 0;
  std::ostringstream msgs_;
  std::vector<std::pair<std::string, double>> worst_;
  std::vector<std::string> notes_;
};

double max_abs(const ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

ComplexMatrix random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const auto m = static_cast<Eigen::Index>(n);
  ComplexMatrix G(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < m; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      G(i, j) = Complex(re, im);
    }
  ComplexMatrix r = G * G.adjoint();
  r /= r.trace().real();
  return 0.5 * (r + r.adjoint());
}

KetVector basis_ket(const std::string& bits) {
  KetVector v = KetVector::Zero(std::size_t{1} << bits.size());
  v(static_cast<Eigen::Index>(std::stoul(bits, nullptr, 2))) = 1.0;
  return v;
}

ComplexMatrix outer(const KetVector& a, const KetVector& b) { return a * b.adjoint(); }

// ---------------------------------------------------------------------------

void dimension_bookkeeping(Probe& pr) {
  for (int k = 1; k <= 10; ++k) {
    std::uint64_t total = 0;
    for (const auto& lam : list_diagrams(k)) {
      total += hook_dim(lam) * static_cast<std::uint64_t>(lam.weight_count());
      pr.require(multiplicity(k, lam) == hook_dim(lam), "multiplicity != hook_dim at " + lam.to_string());
      pr.require(ref::count_standard_tableaux(lam) == hook_dim(lam), "tableaux count != hook_dim at " + lam.to_string());
    }
    pr.require(total == (std::uint64_t{1} << k), "dimension sum != 2^k at k=" + std::to_string(k));
  }
  pr.note("k=1..10");
}

void basis_validity(Probe& pr) {
  for (int k = 1; k <= 10; ++k) {
    const auto basis = build_schur_basis(k);
    std::size_t count = 0;
    for (const auto& S : basis.sectors()) {
      const auto n = static_cast<Eigen::Index>(S.indices.size());
      count += S.indices.size();
      pr.track("gram", (S.columns.transpose() * S.columns - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
    }
    pr.require(count == basis.dim(), "basis size != 2^k");

    for (int t = 0; t + 1 < k; ++t) {
      const int b1 = k - 1 - t, b2 = k - 2 - t;
      std::vector<std::vector<RealMatrix>> per_lambda(basis.diagrams().size());
      for (const auto& S : basis.sectors()) {
        std::vector<std::size_t> pos(basis.dim(), 0);
        for (std::size_t i = 0; i < S.indices.size(); ++i) pos[S.indices[i]] = i;
        RealMatrix PU(S.columns.rows(), S.columns.cols());
        for (std::size_t i = 0; i < S.indices.size(); ++i) {
          std::size_t idx = S.indices[i];
          const std::size_t x = (idx >> b1) & 1U, y = (idx >> b2) & 1U;
          if (x != y) idx ^= (std::size_t{1} << b1) | (std::size_t{1} << b2);
          PU.row(static_cast<Eigen::Index>(pos[idx])) = S.columns.row(static_cast<Eigen::Index>(i));
        }
        const RealMatrix M = S.columns.transpose() * PU;
        for (Eigen::Index r = 0; r < M.rows(); ++r)
          for (Eigen::Index c = 0; c < M.cols(); ++c)
            if (!(S.labels[static_cast<std::size_t>(r)].diagram == S.labels[static_cast<std::size_t>(c)].diagram))
              pr.track("cross_block", std::abs(M(r, c)), 1e-12);
        const Weight w = Weight::from_ones(S.ones, k);
        for (std::size_t li = 0; li < basis.diagrams().size(); ++li) {
          const auto& lam = basis.diagrams()[li];
          if (std::abs(w.twice) > lam.twice_spin()) continue;
          const auto copies = basis.paths(lam).size();
          const auto c0 = static_cast<Eigen::Index>(basis.column(lam, 0, w));
          const auto d = static_cast<Eigen::Index>(copies);
          per_lambda[li].push_back(M.block(c0, c0, d, d));
        }
      }
      for (const auto& mats : per_lambda) {
        const auto d = mats.front().rows();
        pr.track("orthogonal", (mats.front().transpose() * mats.front() - RealMatrix::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-10);
        for (const auto& m : mats) pr.track("weight_dependence", (m - mats.front()).cwiseAbs().maxCoeff(), 1e-10);
      }
    }

    for (const auto& lam : basis.diagrams())
      for (std::size_t p = 0; p < basis.paths(lam).size(); ++p)
        pr.track("jplus_top", jplus_apply(basis.vector(lam, p, Weight{lam.twice_spin()}), k).norm(), 1e-12);
  }
}

void coefficient_oracles(Probe& pr) {
  for (int k = 1; k <= 8; ++k) {
    const auto basis = build_schur_basis(k);
    const SystemLayout layout(std::vector<std::size_t>(static_cast<std::size_t>(k), 2));
    const std::size_t keep[] = {0};
    for (const auto& lam : basis.diagrams()) {
      const double d = static_cast<double>(hook_dim(lam));
      const auto weights = weights_of(lam);
      const auto copies = basis.paths(lam).size();
      for (std::size_t i = 0; i < weights.size(); ++i) {
        const Weight w = weights[i];
        ComplexMatrix S = ComplexMatrix::Zero(static_cast<Eigen::Index>(basis.dim()), static_cast<Eigen::Index>(basis.dim()));
        for (std::size_t mu = 0; mu < copies; ++mu) {
          const KetVector v = basis.vector(lam, mu, w);
          S += v * v.adjoint();
        }
        const auto tw = diagonal_weights(k, w);
        ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
        expect(0, 0) = tw.t0;
        expect(1, 1) = tw.t1;
        const ComplexMatrix m_basis = ref::partial_trace(S / d, layout, keep);
        const ComplexMatrix m_oracle = ref::partial_trace(ref::isotypic_projector(lam, w) / d, layout, keep);
        pr.track("diag_basis", max_abs(m_basis - expect), 1e-10);
        pr.track("diag_oracle", max_abs(m_oracle - expect), 1e-10);
        if (tw.t1 > 0.0) {
          const double ratio = m_oracle(0, 0).real() / m_oracle(1, 1).real();
          pr.track("ratio", std::abs(ratio - (k - w.twice) / static_cast<double>(k + w.twice)), 1e-10);
        }
        pr.track("t0+t1", std::abs(tw.t0 + tw.t1 - 1.0), 1e-12);
        if (i + 1 == weights.size()) continue;

        const Weight wp = weights[i + 1];
        ComplexMatrix T = ComplexMatrix::Zero(S.rows(), S.cols());
        for (std::size_t mu = 0; mu < copies; ++mu) T += outer(basis.vector(lam, mu, w), basis.vector(lam, mu, wp));
        const double alpha = alpha_coeff(lam, w, wp, k);
        ComplexMatrix expect_off = ComplexMatrix::Zero(2, 2);
        expect_off(0, 1) = alpha;
        pr.track("alpha_basis", max_abs(ref::partial_trace(T / d, layout, keep) - expect_off), 1e-10);
        pr.track("alpha_oracle", max_abs(ref::partial_trace(ref::isotypic_transfer(lam, w) / d, layout, keep) - expect_off), 1e-10);
      }
    }
  }
}

struct K3Vectors {
  KetVector a1, a2, b1, b2, phi1, phi2;
};

K3Vectors k3_vectors() {
  K3Vectors v;
  v.a1 = (2.0 * basis_ket("001") - basis_ket("010") - basis_ket("100")) / std::sqrt(6.0);
  v.a2 = (basis_ket("010") - basis_ket("100")) / std::sqrt(2.0);
  // Bit-flip partner of a1; orthogonal to b2 and inside the [2,1] sector.
  v.b1 = (2.0 * basis_ket("110") - basis_ket("101") - basis_ket("011")) / std::sqrt(6.0);
  v.b2 = (basis_ket("101") - basis_ket("011")) / std::sqrt(2.0);
  v.phi1 = (basis_ket("001") + basis_ket("010") + basis_ket("100")) / std::sqrt(3.0);
  v.phi2 = (basis_ket("110") + basis_ket("101") + basis_ket("011")) / std::sqrt(3.0);
  return v;
}

void k3_golden(Probe& pr, std::uint64_t seed) {
  const auto basis = build_schur_basis(3);
  const YoungDiagram lam(2, 1);
  const auto v = k3_vectors();
  ComplexMatrix pa = ComplexMatrix::Zero(8, 8), pb = ComplexMatrix::Zero(8, 8);
  for (std::size_t mu = 0; mu < 2; ++mu) {
    const KetVector x = basis.vector(lam, mu, Weight{-1});
    const KetVector y = basis.vector(lam, mu, Weight{1});
    pa += x * x.adjoint();
    pb += y * y.adjoint();
  }
  pr.track("span_a", max_abs(pa - (outer(v.a1, v.a1) + outer(v.a2, v.a2))));
  pr.track("span_b", max_abs(pb - (outer(v.b1, v.b1) + outer(v.b2, v.b2))));
  pr.require(max_abs(pa - (outer(v.a1, v.a1) + outer(v.a2, v.a2))) <= 1e-12, "span a");
  pr.require(max_abs(pb - (outer(v.b1, v.b1) + outer(v.b2, v.b2))) <= 1e-12, "span b");

  const std::size_t dA = 2;
  const SystemLayout layout = SystemLayout::with_qubits(dA, 3);
  const ComplexMatrix proj_phi = outer(v.phi1, v.phi1) + outer(v.phi2, v.phi2);
  const ComplexMatrix support = tensor_product(ComplexMatrix::Identity(2, 2), proj_phi);
  const std::size_t keep[] = {0, 1};
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix M = random_state(2 * dA, rng);
    const auto n = static_cast<Eigen::Index>(dA);
    const ComplexMatrix r_tilde = M.topLeftCorner(n, n), r_bar = M.bottomRightCorner(n, n), r_hat = M.topRightCorner(n, n);
    const ComplexMatrix b_tilde = 0.5 * (outer(v.a1, v.a1) + outer(v.a2, v.a2));
    const ComplexMatrix b_bar = 0.5 * (outer(v.b1, v.b1) + outer(v.b2, v.b2));
    const ComplexMatrix b_hat = 0.5 * (outer(v.a1, v.b1) + outer(v.a2, v.b2));
    ComplexMatrix rho = tensor_product(r_tilde, b_tilde) + tensor_product(r_bar, b_bar) + tensor_product(r_hat, b_hat);
    rho += tensor_product(r_hat, b_hat).adjoint().eval();
    const DensityMatrix state(rho, layout);
    state.validate_state(1e-12);

    const BlockState bs = global_to_blocks(state, basis);
    const ComplexMatrix* top = bs.find(YoungDiagram(3, 0));
    pr.track("bosonic_block", top ? max_abs(*top) : 0.0, 1e-12);
    const BosonicState sigma = sym_to_bos(bs);
    const ComplexMatrix full = sigma.embed().matrix();
    const double supp = max_abs(full - support * full * support);
    const double marg = max_abs(ref::partial_trace(full, layout, keep) - ref::partial_trace(rho, layout, keep));
    pr.track("support", supp);
    pr.track("marginal", marg);
    pr.require(supp <= 1e-10, "support outside span{phi1, phi2}");
    pr.require(marg <= 1e-10, "marginal mismatch");
    // The replacement rule: tilde -> phi1 phi1, bar -> phi2 phi2, hat -> -1/2 phi1 phi2.
    ComplexMatrix replaced = tensor_product(r_tilde, outer(v.phi1, v.phi1)) + tensor_product(r_bar, outer(v.phi2, v.phi2));
    const ComplexMatrix cross = tensor_product(r_hat, outer(v.phi1, v.phi2));
    replaced -= 0.5 * (cross + cross.adjoint());
    pr.track("replacement", max_abs(full - replaced));
    pr.require(max_abs(full - replaced) <= 1e-10, "replacement rule");
  }
}

void conversion_suite(Probe& pr, std::uint64_t seed) {
  int count = 0;
  for (int k = 2; k <= 6; ++k)
    for (std::size_t dA = 2; dA <= 3; ++dA)
      for (auto profile : {GeneratorProfile::AllDiagrams, GeneratorProfile::ExcludeSymmetric})
        for (int rep = 0; rep < 10; ++rep) {
          const auto inst = gen_random_extendible(k, dA, seed * 100003 + static_cast<std::uint64_t>(count), profile);
          const BosonicState sigma = sym_to_bos(inst.witness);
          const auto r = verify_extension(sigma, inst.marginal, k, 1e-8);
          pr.track("marginal", r.marginal_error);
          pr.track("support", r.support_error);
          pr.track("perm", r.permutation_error);
          pr.track("neg_eig", std::max(0.0, -r.min_eigenvalue));
          pr.track("trace_preservation", std::abs(sigma.matrix().trace().real() - inst.witness.weighted_trace()), 1e-12);
          pr.require(r.bosonic_ok(), "instance " + std::to_string(count) + " fails verification");
          ++count;
        }
  pr.note("instances=" + std::to_string(count));
}

void fermionic_regression(Probe& pr, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  for (std::size_t dA : {1, 2, 3}) {
    KetVector xi(static_cast<Eigen::Index>(dA));
    for (Eigen::Index i = 0; i < xi.size(); ++i) {
      const double re = g(rng);
      const double im = g(rng);
      xi(i) = Complex(re, im);
    }
    xi.normalize();
    BlockState::BlockMap blocks;
    blocks.emplace(YoungDiagram(1, 1), xi * xi.adjoint());
    const BlockState bs(2, dA, std::move(blocks));
    const KetVector minus = (basis_ket("01") - basis_ket("10")) / std::sqrt(2.0);
    const KetVector plus = (basis_ket("01") + basis_ket("10")) / std::sqrt(2.0);
    const ComplexMatrix ferm = blocks_to_global(bs, build_schur_basis(2)).matrix();
    const ComplexMatrix bos = sym_to_bos(bs).embed().matrix();
    pr.track("fermionic", max_abs(ferm - tensor_product(ComplexMatrix(xi * xi.adjoint()), outer(minus, minus))), 1e-12);
    pr.track("bosonic", max_abs(bos - tensor_product(ComplexMatrix(xi * xi.adjoint()), outer(plus, plus))), 1e-12);
  }
}

void solver_calibration(Probe& pr, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SolverConfig cfg;
  for (int k = 1; k <= 10; ++k) {
    const DensityMatrix prod(tensor_product(random_state(2, rng), random_state(2, rng)), SystemLayout({2, 2}));
    const auto r = solve_symmetric(prod, k, cfg);
    pr.require(r.status == SolverStatus::Feasible, "product k=" + std::to_string(k) + " " + to_string(r.status));
    pr.track("product_residual", r.residual);
    pr.require(r.residual <= 1e-8, "product residual k=" + std::to_string(k));
    if (r.certificate) {
      const auto v = verify_extension(*r.certificate, prod, k, 1e-7);
      pr.require(v.symmetric_ok(), "product certificate k=" + std::to_string(k));
    }
  }
  const auto singlet = singlet_state();
  const auto rs = solve_symmetric(singlet, 2, cfg);
  const double disp = ref::full_space_displacement(singlet, 2, 300);
  pr.track("singlet_gap", rs.gap_estimate);
  pr.track("full_space_distance", disp);
  pr.require(rs.status == SolverStatus::Infeasible, "singlet " + to_string(rs.status));
  pr.require(rs.gap_estimate >= 1e-3, "singlet gap below 1e-3");
  pr.require(rs.gap_estimate <= disp + 1e-9, "certified gap exceeds the full-space distance");

  int count = 0;
  for (int k = 2; k <= 6; ++k)
    for (std::size_t dA = 2; dA <= 3; ++dA)
      for (auto profile : {GeneratorProfile::AllDiagrams, GeneratorProfile::ExcludeSymmetric}) {
        const auto inst = gen_random_extendible(k, dA, seed * 7919 + static_cast<std::uint64_t>(count++), profile);
        for (bool bosonic : {false, true}) {
          const auto r = bosonic ? solve_bosonic(inst.marginal, k, cfg) : solve_symmetric(inst.marginal, k, cfg);
          pr.require(r.status == SolverStatus::Feasible && r.certificate.has_value(), "planted instance not feasible");
          if (!r.certificate) continue;
          const double err = (marginal_from_blocks(*r.certificate).matrix() - inst.marginal.matrix()).norm();
          pr.track(bosonic ? "planted_bos_error" : "planted_error", err);
          pr.require(err <= 1e-8, "recovered marginal error");
          pr.require(verify_extension(*r.certificate, inst.marginal, k, 1e-7).symmetric_ok(), "planted certificate");
        }
      }
}

void qutrit_counterexample(Probe& pr) {
  const double a = 1.0 / std::sqrt(28.0), b = 2.0 / std::sqrt(28.0), c = 3.0 / std::sqrt(28.0);
  const DensityMatrix rho = qutrit_marginal(1, 2, 3);
  const auto r = solve_bosonic_k2_generic(rho, 3);
  pr.track("gap", r.gap_estimate);
  pr.require(r.status == SolverStatus::Infeasible, "solver status " + to_string(r.status));
  pr.require(r.gap_estimate >= 1e-4, "gap below 1e-4");

  const DensityMatrix ext = qutrit_fermionic_extension(1, 2, 3);
  const auto v = verify_extension(ext, rho, 2, 1e-10);
  pr.require(v.symmetric_ok(), "fermionic extension fails checks (a)-(d)");
  pr.require(!v.support_ok(), "fermionic extension unexpectedly bosonic");
  pr.track("fermionic_marginal", v.marginal_error);

  // Residual diagonal after matching each off-diagonal pair with |p| = |q|.
  const double balanced = a * a + b * b + c * c - 2.0 * (a * b + a * c + b * c);
  pr.track("balanced_residual", balanced);
  pr.require(balanced < 0.0, "residual inequality");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.05, 5.0);
  double worst = -1.0;
  for (int t = 0; t < 1000; ++t) {
    const double p = u(rng) * std::sqrt(a * b), s = u(rng) * std::sqrt(a * c), uu = u(rng) * std::sqrt(b * c);
    const double q = a * b / p, tt = a * c / s, vv = b * c / uu;
    worst = std::max(worst, a * a - p * p - s * s + b * b - q * q - uu * uu + c * c - tt * tt - vv * vv);
  }
  pr.require(worst < 0.0, "residual inequality for some matching");
  const auto eq = solve_bosonic_k2_generic(qutrit_marginal(1, 1, 1), 3);
  pr.note("equal-coefficient verdict=" + to_string(eq.status) + " gap=" + fmt("%.3e", eq.gap_estimate));
}

void tilde_screen(Probe& pr, std::uint64_t seed) {
  for (int i = 0; i < 100; ++i) {
    const int k = 2 + i % 5;
    const std::size_t dA = 2 + static_cast<std::size_t>((i / 5) % 2);
    const auto profile = (i / 10) % 2 ? GeneratorProfile::ExcludeSymmetric : GeneratorProfile::AllDiagrams;
    const auto inst = gen_random_extendible(k, dA, seed * 31337 + static_cast<std::uint64_t>(i), profile);
    const auto t = tilde_state(inst.marginal, k);
    pr.track("neg_pt_eig", std::max(0.0, -t.pt_min_eigenvalue));
    pr.require(t.ppt, "planted instance " + std::to_string(i) + " tilde is NPT");
  }
  const auto t = tilde_state(singlet_state(), 2);
  pr.track("singlet_pt_eig_error", std::abs(t.pt_min_eigenvalue + 0.125));
  pr.require(!t.ppt, "singlet tilde is PPT");
  pr.require(std::abs(t.pt_min_eigenvalue + 0.125) <= 1e-10, "singlet partial-transpose eigenvalue");
  const ComplexMatrix expect = ComplexMatrix::Identity(4, 4) / 8.0 + singlet_state().matrix() / 2.0;
  pr.track("singlet_tilde", max_abs(t.state.matrix() - expect), 1e-12);
}

std::vector<char> read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void determinism(Probe& pr, std::uint64_t seed, const std::optional<std::filesystem::path>& out_dir) {
  namespace fs = std::filesystem;
  const fs::path scratch = fs::temp_directory_path() / ("symext-determinism-" + std::to_string(seed) + "-" +
                                                        std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
  const fs::path first = out_dir ? *out_dir : scratch / "first";
  const fs::path second = scratch / "second";
  fs::create_directories(first);
  fs::create_directories(second);
  const auto files_a = write_certificates(first, seed);
  const auto files_b = write_certificates(second, seed);
  pr.require(files_a == files_b, "file lists differ");
  for (const auto& f : files_a) pr.require(read_bytes(first / f) == read_bytes(second / f), f + " differs");
  pr.note("files=" + std::to_string(files_a.size()));
  std::error_code ec;
  fs::remove_all(scratch, ec);
}

struct Criterion {
  int id;
  const char* name;
  double limit;
};

constexpr Criterion kCriteria[] = {
    {1, "dimension bookkeeping", 1.0},  {2, "basis validity", 30.0},      {3, "coefficient oracles", 60.0},
    {4, "k=3 golden test", 1.0},        {5, "conversion property suite", 300.0}, {6, "fermionic regression", 1.0},
    {7, "solver calibration", 120.0},   {8, "qutrit counterexample", 30.0}, {9, "tilde PPT screen", 60.0},
    {10, "determinism", 300.0},
};

}  // namespace

std::vector<std::string> write_certificates(const std::filesystem::path& dir, std::uint64_t seed) {
  struct Case {
    int k;
    std::size_t dA;
    GeneratorProfile profile;
  };
  const Case cases[] = {{2, 2, GeneratorProfile::AllDiagrams},
                        {3, 2, GeneratorProfile::ExcludeSymmetric},
                        {4, 3, GeneratorProfile::AllDiagrams},
                        {5, 2, GeneratorProfile::AllDiagrams},
                        {6, 2, GeneratorProfile::ExcludeSymmetric}};
  std::vector<std::string> files;
  std::ostringstream summary;
  SolverConfig cfg;
  cfg.seed = seed;
  for (std::size_t i = 0; i < std::size(cases); ++i) {
    const auto& c = cases[i];
    const auto inst = gen_random_extendible(c.k, c.dA, seed * 1000 + i, c.profile);
    const FileMetadata meta{seed, "selftest planted instance " + std::to_string(i) + " (k=" + std::to_string(c.k) +
                                      ", dA=" + std::to_string(c.dA) + ", profile=" + to_string(c.profile) + ")"};
    const std::string tag = "case" + std::to_string(i);
    save_state(inst.marginal, dir / (tag + ".state.json"), meta);
    files.push_back(tag + ".state.json");
    const auto rep = solve_symmetric(inst.marginal, c.k, cfg);
    summary << tag << " status: " << to_string(rep.status) << "\n"
            << tag << " residual: " << format_number(rep.residual) << "\n"
            << tag << " iterations: " << rep.iterations << "\n";
    if (!rep.certificate) continue;
    save_blocks(*rep.certificate, dir / (tag + ".blocks.json"), meta);
    files.push_back(tag + ".blocks.json");
    const BosonicState sigma = sym_to_bos(*rep.certificate);
    save_bosonic(sigma, dir / (tag + ".bosonic.json"), meta);
    files.push_back(tag + ".bosonic.json");
  }
  const auto s = solve_symmetric(singlet_state(), 2, cfg);
  summary << "singlet status: " << to_string(s.status) << "\nsinglet gap: " << format_number(s.gap_estimate) << "\n";
  const auto q = solve_bosonic_k2_generic(qutrit_marginal(1, 2, 3), 3, cfg);
  summary << "qutrit status: " << to_string(q.status) << "\nqutrit gap: " << format_number(q.gap_estimate) << "\n";
  write_text(dir / "summary.txt", summary.str());
  files.push_back("summary.txt");
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (const auto& c : kCriteria) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), c.id) == opts.only.end()) continue;
    CriterionResult r{c.id, c.name, false, "", 0.0, c.limit};
    Probe pr;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      switch (c.id) {
        case 1: dimension_bookkeeping(pr); break;
        case 2: basis_validity(pr); break;
        case 3: coefficient_oracles(pr); break;
        case 4: k3_golden(pr, opts.seed); break;
        case 5: conversion_suite(pr, opts.seed); break;
        case 6: fermionic_regression(pr, opts.seed); break;
        case 7: solver_calibration(pr, opts.seed); break;
        case 8: qutrit_counterexample(pr); break;
        case 9: tilde_screen(pr, opts.seed); break;
        case 10: determinism(pr, opts.seed, opts.out_dir); break;
        default: break;
      }
    } catch (const std::exception& e) {
      pr.require(false, std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    pr.require(r.seconds <= c.limit, "runtime limit exceeded");
    r.passed = pr.ok();
    r.detail = pr.detail();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << "  (" << fmt("%.2f", r.seconds) << " s, limit "
     << fmt("%g", r.limit_seconds) << " s)  " << r.detail;
  return os.str();
}

}  // namespace symext
