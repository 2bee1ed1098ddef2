#include "symext/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace symext {

namespace {

void require_partition(const YoungDiagram& lam, int k) {
  if (lam.k() != k) throw std::invalid_argument("diagram " + lam.to_string() + " is not a partition of k=" + std::to_string(k));
}

// (j - w)(j + w + 1) with doubled arguments.
double ladder_squared(int twice_j, int twice_w) {
  return 0.25 * static_cast<double>(twice_j - twice_w) * static_cast<double>(twice_j + twice_w + 2);
}

// p(w, w + 1) for the lower weight w.
double adjacent_p(const YoungDiagram& lam, int twice_w, int k) {
  return std::sqrt(ladder_squared(lam.twice_spin(), twice_w) / ladder_squared(k, twice_w));
}

}  // namespace

DiagonalWeights diagonal_weights(int k, Weight w) {
  if (k < 1 || std::abs(w.twice) > k) throw std::invalid_argument("diagonal_weights: weight out of range");
  const double kk = k;
  return {(kk - w.twice) / (2.0 * kk), (kk + w.twice) / (2.0 * kk)};
}

double alpha_coeff(const YoungDiagram& lam, Weight w, Weight w_p, int k) {
  require_partition(lam, k);
  weight_position(lam, w);
  weight_position(lam, w_p);
  if (w_p.twice != w.twice + 2) return 0.0;
  return std::sqrt(ladder_squared(lam.twice_spin(), w.twice)) / k;
}

double p_coeff(const YoungDiagram& lam, Weight w, Weight w_p, int k) {
  require_partition(lam, k);
  const auto i = weight_position(lam, w);
  const auto ip = weight_position(lam, w_p);
  if (i == ip) return 1.0;
  if (i + 1 == ip) return adjacent_p(lam, w.twice, k);
  if (ip + 1 == i) return adjacent_p(lam, w_p.twice, k);
  const auto xi = xi_vector(lam, k);
  return xi[i] * xi[ip];
}

std::vector<double> xi_vector(const YoungDiagram& lam, int k) {
  require_partition(lam, k);
  const auto weights = weights_of(lam);
  const std::size_t n = weights.size();
  if (n == 1) return {1.0};

  std::vector<double> p(n - 1);
  std::size_t anchor = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    p[i] = adjacent_p(lam, weights[i].twice, k);
    if (p[i] > p[anchor]) anchor = i;
  }
  std::vector<double> xi(n, 0.0);
  xi[anchor] = xi[anchor + 1] = std::sqrt(p[anchor]);
  for (std::size_t i = anchor; i-- > 0;) xi[i] = p[i] / xi[i + 1];
  for (std::size_t i = anchor + 1; i + 1 < n; ++i) xi[i + 1] = p[i] / xi[i];

  for (std::size_t i = 0; i < n; ++i) {
    if (!(xi[i] <= 1.0 + 1e-12))
      throw std::logic_error("xi_vector: |xi| > 1 at weight " + weights[i].to_string() + " of " + lam.to_string());
    xi[i] = std::min(xi[i], 1.0);
  }
  return xi;
}

RealMatrix coeff_matrix_P(const YoungDiagram& lam, int k) {
  const auto xi = xi_vector(lam, k);
  const auto n = static_cast<Eigen::Index>(xi.size());
  const Eigen::Map<const RealVector> v(xi.data(), n);
  RealMatrix P = v * v.transpose();
  for (Eigen::Index i = 0; i < n; ++i) P(i, i) = 1.0;
  return P;
}

}  // namespace symext
