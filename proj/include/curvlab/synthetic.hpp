#ifndef CURVLAB_SYNTHETIC_HPP
#define CURVLAB_SYNTHETIC_HPP

#include "curvlab/geometry.hpp"
#include "curvlab/rng.hpp"

namespace curvlab {

// Random Hermitian matrix with N(0,1) entries.
inline MatrixXcd random_hermitian(int n, Rng& rng) {
  MatrixXcd A(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = rng.normal();
    for (int j = i + 1; j < n; ++j) {
      A(i, j) = rng.cnormal();
      A(j, i) = std::conj(A(i, j));
    }
  }
  return A;
}

// Random tensor with the full Kahler-type symmetries:
// R_{i jbar k lbar} = R_{k jbar i lbar} = R_{i lbar k jbar} = conj(R_{j ibar l kbar}).
// Built as a Hermitian form on the symmetric square of C^n.
inline CurvatureTensor random_kahler_symmetric_tensor(int n, Rng& rng) {
  const int m = n * (n + 1) / 2;
  const MatrixXcd B = random_hermitian(m, rng);
  auto sym = [n](int i, int k) {
    if (i > k) std::swap(i, k);
    return i * n - i * (i - 1) / 2 + (k - i);
  };
  CurvatureTensor R(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) R.at(i, j, k, l) = B(sym(i, k), sym(j, l));
  return R;
}

// Random tensor with only the Hermitian (conjugation) symmetry
// R_{i jbar k lbar} = conj(R_{j ibar l kbar}).
inline CurvatureTensor random_hermitian_tensor(int n, Rng& rng) {
  const MatrixXcd B = random_hermitian(n * n, rng);
  CurvatureTensor R(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) R.at(i, j, k, l) = B(i * n + k, j * n + l);
  return R;
}

// MetricJet of the flat identity metric (synthetic-tensor companion).
inline MetricJet identity_metric_jet(int n) {
  MetricJet jet;
  jet.n = n;
  jet.g = MatrixXcd::Identity(n, n);
  jet.g_inv = MatrixXcd::Identity(n, n);
  jet.dg.assign(n, MatrixXcd::Zero(n, n));
  jet.d2g.assign(static_cast<std::size_t>(n) * n, MatrixXcd::Zero(n, n));
  jet.dg_zero = true;
  return jet;
}

}  // namespace curvlab

#endif
