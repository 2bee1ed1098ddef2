#include "symext/schur_basis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "symext/limits.hpp"

namespace symext {

namespace {

std::string half_integer(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

// One SU(2) multiplet during the coupling recursion. amps[m] holds the vector
// of weight index m (0 = lowest) over the positions of its sector.
struct Multiplet {
  CouplingPath path;
  std::vector<std::vector<double>> amps;
};

// Computational indices of t bits, grouped by number of ones.
struct LevelIndex {
  std::vector<std::vector<std::size_t>> by_ones;  // ascending within each group
  std::vector<std::size_t> position;              // index -> position in its group

  explicit LevelIndex(int t) : by_ones(static_cast<std::size_t>(t) + 1), position(std::size_t{1} << t) {
    for (std::size_t i = 0; i < position.size(); ++i) {
      auto& group = by_ones[static_cast<std::size_t>(std::popcount(i))];
      position[i] = group.size();
      group.push_back(i);
    }
  }
};

}  // namespace

std::string Weight::to_string() const { return half_integer(twice); }

std::string CouplingPath::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < twice_spins.size(); ++i) {
    if (i) out += ',';
    out += half_integer(twice_spins[i]);
  }
  return out;
}

std::vector<Weight> weights_of(const YoungDiagram& lam) {
  std::vector<Weight> out;
  for (int tw = -lam.twice_spin(); tw <= lam.twice_spin(); tw += 2) out.push_back(Weight{tw});
  return out;
}

std::size_t weight_position(const YoungDiagram& lam, Weight w) {
  const int tj = lam.twice_spin();
  if (w.twice < -tj || w.twice > tj || (w.twice + tj) % 2 != 0)
    throw std::invalid_argument("weight " + w.to_string() + " is not a weight of " + lam.to_string());
  return static_cast<std::size_t>((w.twice + tj) / 2);
}

SchurBasis build_schur_basis(int k) {
  require_k_in_range(k, max_full_space_k(), "build_schur_basis");

  // Level 1: a single spin-1/2 with |0> at weight -1/2 and |1> at +1/2.
  std::vector<Multiplet> level{{CouplingPath{{1}}, {{1.0}, {1.0}}}};

  for (int t = 1; t < k; ++t) {
    const LevelIndex next_index(t + 1);
    const LevelIndex cur_index(t);
    std::vector<Multiplet> next;
    next.reserve(level.size() * 2);
    for (const auto& mult : level) {
      const int tj = mult.path.final_twice_spin();
      // Lower total spin first keeps paths lexicographically ordered.
      for (int tJ : {tj - 1, tj + 1}) {
        if (tJ < 0) continue;
        Multiplet child;
        child.path = mult.path;
        child.path.twice_spins.push_back(tJ);
        const double denom = 2.0 * (tj + 1);
        for (int tM = -tJ; tM <= tJ; tM += 2) {
          const int ones = (t + 1 + tM) / 2;
          std::vector<double> vec(next_index.by_ones[static_cast<std::size_t>(ones)].size(), 0.0);
          double c_up, c_down;
          if (tJ == tj + 1) {
            c_up = std::sqrt((tj + tM + 1) / denom);
            c_down = std::sqrt((tj - tM + 1) / denom);
          } else {
            c_up = -std::sqrt((tj - tM + 1) / denom);
            c_down = std::sqrt((tj + tM + 1) / denom);
          }
          // |j, M - 1/2> (x) |1>
          if (tM - 1 >= -tj && tM - 1 <= tj && c_up != 0.0) {
            const auto& src = mult.amps[static_cast<std::size_t>((tM - 1 + tj) / 2)];
            const auto& idx = cur_index.by_ones[static_cast<std::size_t>(ones - 1)];
            for (std::size_t p = 0; p < src.size(); ++p)
              vec[next_index.position[idx[p] * 2 + 1]] += c_up * src[p];
          }
          // |j, M + 1/2> (x) |0>
          if (tM + 1 >= -tj && tM + 1 <= tj && c_down != 0.0) {
            const auto& src = mult.amps[static_cast<std::size_t>((tM + 1 + tj) / 2)];
            const auto& idx = cur_index.by_ones[static_cast<std::size_t>(ones)];
            for (std::size_t p = 0; p < src.size(); ++p)
              vec[next_index.position[idx[p] * 2]] += c_down * src[p];
          }
          child.amps.push_back(std::move(vec));
        }
        next.push_back(std::move(child));
      }
    }
    level = std::move(next);
  }

  SchurBasis basis;
  basis.k_ = k;
  basis.diagrams_ = list_diagrams(k);
  basis.paths_.resize(basis.diagrams_.size());
  std::vector<std::vector<const Multiplet*>> grouped(basis.diagrams_.size());
  for (const auto& mult : level) {
    const int tj = mult.path.final_twice_spin();
    const auto d = static_cast<std::size_t>((k - tj) / 2);  // diagram index by lambda2
    basis.paths_[d].push_back(mult.path);
    grouped[d].push_back(&mult);
  }

  const LevelIndex final_index(k);
  basis.sectors_.resize(static_cast<std::size_t>(k) + 1);
  basis.first_column_.assign(basis.diagrams_.size(), {});
  for (int ones = 0; ones <= k; ++ones) {
    auto& sector = basis.sectors_[static_cast<std::size_t>(ones)];
    sector.ones = ones;
    sector.indices = final_index.by_ones[static_cast<std::size_t>(ones)];
    const auto n = static_cast<Eigen::Index>(sector.indices.size());
    sector.columns = RealMatrix::Zero(n, n);
  }
  // Column offsets: within each sector, diagrams in canonical order, then paths.
  std::vector<std::size_t> filled(static_cast<std::size_t>(k) + 1, 0);
  for (std::size_t d = 0; d < basis.diagrams_.size(); ++d) {
    const auto& lam = basis.diagrams_[d];
    const int tj = lam.twice_spin();
    // Offsets coincide across the sectors the multiplet reaches, since every
    // diagram with a larger spin reaches at least the same sectors.
    for (std::size_t p = 0; p < grouped[d].size(); ++p) {
      const auto& mult = *grouped[d][p];
      for (int tM = -tj; tM <= tj; tM += 2) {
        const Weight w{tM};
        auto& sector = basis.sectors_[static_cast<std::size_t>(w.ones(k))];
        const auto col = filled[static_cast<std::size_t>(w.ones(k))]++;
        if (tM == -tj) basis.first_column_[d].push_back(col);
        const auto& src = mult.amps[static_cast<std::size_t>((tM + tj) / 2)];
        for (std::size_t i = 0; i < src.size(); ++i) sector.columns(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) = src[i];
        sector.labels.push_back({lam, p, w});
      }
    }
  }
  return basis;
}

std::size_t SchurBasis::diagram_index(const YoungDiagram& lam) const {
  if (lam.k() != k_) throw std::invalid_argument("SchurBasis: diagram " + lam.to_string() + " does not partition k");
  return static_cast<std::size_t>(lam.lambda2);
}

const std::vector<CouplingPath>& SchurBasis::paths(const YoungDiagram& lam) const {
  return paths_.at(diagram_index(lam));
}

const SchurBasis::Sector& SchurBasis::sector(Weight w) const {
  if (w.twice < -k_ || w.twice > k_ || (w.twice + k_) % 2 != 0)
    throw std::invalid_argument("SchurBasis: invalid weight " + w.to_string());
  return sectors_[static_cast<std::size_t>(w.ones(k_))];
}

std::size_t SchurBasis::column(const YoungDiagram& lam, std::size_t path, Weight w) const {
  const auto d = diagram_index(lam);
  weight_position(lam, w);
  if (path >= paths_[d].size()) throw std::out_of_range("SchurBasis: path index out of range");
  return first_column_[d][path];
}

KetVector SchurBasis::vector(const YoungDiagram& lam, std::size_t path, Weight w) const {
  const auto col = static_cast<Eigen::Index>(column(lam, path, w));
  const auto& sec = sector(w);
  KetVector out = KetVector::Zero(static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < sec.indices.size(); ++i)
    out(static_cast<Eigen::Index>(sec.indices[i])) = sec.columns(static_cast<Eigen::Index>(i), col);
  return out;
}

std::vector<SchurBasis::Label> SchurBasis::labels() const {
  std::vector<Label> out;
  for (std::size_t d = 0; d < diagrams_.size(); ++d)
    for (std::size_t p = 0; p < paths_[d].size(); ++p)
      for (auto w : weights_of(diagrams_[d])) out.push_back({diagrams_[d], p, w});
  return out;
}

KetVector dicke(int k, Weight w) {
  require_k_in_range(k, max_full_space_k(), "dicke");
  if (w.twice < -k || w.twice > k || (w.twice + k) % 2 != 0)
    throw std::invalid_argument("dicke: weight " + w.to_string() + " out of range for k=" + std::to_string(k));
  const int ones = w.ones(k);
  const std::size_t n = std::size_t{1} << k;
  double count = 1.0;
  for (int i = 1; i <= ones; ++i) count = count * (k - ones + i) / i;
  const double amp = 1.0 / std::sqrt(count);
  KetVector out = KetVector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    if (std::popcount(i) == ones) out(static_cast<Eigen::Index>(i)) = amp;
  return out;
}

namespace {

KetVector ladder_apply(const KetVector& v, int k, bool raise) {
  const std::size_t n = std::size_t{1} << k;
  if (static_cast<std::size_t>(v.size()) != n) throw std::invalid_argument("ladder operator: vector dimension is not 2^k");
  KetVector out = KetVector::Zero(v.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a = v(static_cast<Eigen::Index>(i));
    if (a == Complex(0.0, 0.0)) continue;
    for (int b = 0; b < k; ++b) {
      const std::size_t bit = std::size_t{1} << b;
      const bool is_one = (i & bit) != 0;
      if (raise && !is_one) out(static_cast<Eigen::Index>(i | bit)) += a;
      if (!raise && is_one) out(static_cast<Eigen::Index>(i & ~bit)) += a;
    }
  }
  return out;
}

}  // namespace

KetVector jplus_apply(const KetVector& v, int k) { return ladder_apply(v, k, true); }
KetVector jminus_apply(const KetVector& v, int k) { return ladder_apply(v, k, false); }

void write_basis(std::ostream& os, const SchurBasis& basis) {
  char buf[96];
  for (const auto& label : basis.labels()) {
    const auto& path = basis.paths(label.diagram)[label.path];
    os << label.diagram.lambda1 << ',' << label.diagram.lambda2 << " | " << path.to_string() << " | "
       << label.weight.to_string() << " |";
    const KetVector v = basis.vector(label.diagram, label.path, label.weight);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      std::snprintf(buf, sizeof buf, " %.17g%+.17gi", v(i).real(), v(i).imag());
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace symext
