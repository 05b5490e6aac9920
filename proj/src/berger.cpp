#include "curvlab/berger.hpp"

#include <cmath>

namespace curvlab {

namespace {

// Restricted frame components T(a,b,c,d) = R(e_a, ebar_b, e_c, ebar_d).
std::vector<cdouble> restricted_components(const CurvatureTensor& R, const MatrixXcd& V) {
  const int k = static_cast<int>(V.cols());
  const int n = R.n();
  std::vector<cdouble> T(static_cast<std::size_t>(k) * k * k * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      const MatrixXcd M = R.contract_first_pair(V.col(a), V.col(b));
      for (int c = 0; c < k; ++c)
        for (int d = 0; d < k; ++d) {
          cdouble s = 0.0;
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) s += M(p, q) * V(p, c) * std::conj(V(q, d));
          T[((static_cast<std::size_t>(a) * k + b) * k + c) * k + d] = s;
        }
    }
  return T;
}

MonteCarloEstimate estimate(const std::vector<double>& vals, std::uint64_t seed) {
  MonteCarloEstimate e;
  e.samples = static_cast<long long>(vals.size());
  e.seed = seed;
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= e.samples;
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  var /= (e.samples > 1 ? e.samples - 1 : 1);
  e.mean = mean;
  e.standard_error = std::sqrt(var / e.samples);
  return e;
}

double mixed_denominator(int n, const MixedParams& p) {
  const double den = (n + 1.0) * p.a + 2.0 * p.b;
  if (std::abs(den) < 1e-12 * (1.0 + std::abs(p.a) + std::abs(p.b)))
    throw DegenerateDenominator("mixed_average_identity: (n+1)a + 2b = 0");
  return den;
}

}  // namespace

VectorXcd sphere_sample(const SubspaceBasis& sigma, Rng& rng) {
  const int k = sigma.k();
  VectorXcd w(k);
  for (int i = 0; i < k; ++i) w(i) = rng.cnormal();
  w /= w.norm();
  return sigma.vectors * w;
}

double average_h_closed_form(const CurvatureTensor& R, const SubspaceBasis& sigma) {
  const int k = sigma.k();
  const auto T = restricted_components(R, sigma.vectors);
  auto at = [&](int a, int b, int c, int d) {
    return T[((static_cast<std::size_t>(a) * k + b) * k + c) * k + d];
  };
  cdouble s = 0.0;
  for (int a = 0; a < k; ++a)
    for (int c = 0; c < k; ++c) s += at(a, a, c, c) + at(a, c, c, a);
  // E[H] = s / (k(k+1)); reported scaled by k(k+1)/2.
  return 0.5 * s.real();
}

MonteCarloEstimate average_h_monte_carlo(const CurvatureTensor& R, const SubspaceBasis& sigma,
                                         long long samples, std::uint64_t seed) {
  Rng rng(seed);
  const int k = sigma.k();
  const double scale = 0.5 * k * (k + 1.0);
  std::vector<double> vals(samples);
  for (long long s = 0; s < samples; ++s) {
    const VectorXcd Z = sphere_sample(sigma, rng);
    vals[s] = scale * R.eval(Z, Z, Z, Z).real();
  }
  return estimate(vals, seed);
}

double average_ricci_closed_form(const CurvatureTensor& R, const MetricJet& jet) {
  // Second-moment rule in a g-unitary frame: n * (1/n) sum_i Ric(e_i, ebar_i).
  const MatrixXcd E = gram_schmidt_frame(jet.g, MatrixXcd::Identity(jet.n, jet.n));
  const MatrixXcd ricf = to_frame(R.ricci(jet), E);
  cdouble s = 0.0;
  for (int i = 0; i < jet.n; ++i) s += ricf(i, i);
  return s.real();
}

MonteCarloEstimate average_ricci_monte_carlo(const CurvatureTensor& R, const MetricJet& jet,
                                             long long samples, std::uint64_t seed) {
  Rng rng(seed);
  SubspaceBasis full;
  full.vectors = gram_schmidt_frame(jet.g, MatrixXcd::Identity(jet.n, jet.n));
  const MatrixXcd ric = R.ricci(jet);
  std::vector<double> vals(samples);
  for (long long s = 0; s < samples; ++s) {
    const VectorXcd Z = sphere_sample(full, rng);
    cdouble v = 0.0;
    for (int i = 0; i < jet.n; ++i)
      for (int j = 0; j < jet.n; ++j) v += ric(i, j) * Z(i) * std::conj(Z(j));
    vals[s] = jet.n * v.real();
  }
  return estimate(vals, seed);
}

MixedAverageIdentity mixed_average_identity_closed(const CurvatureTensor& R,
                                                   const MetricJet& jet,
                                                   const MixedParams& params) {
  const int n = jet.n;
  const double den = mixed_denominator(n, params);
  MixedAverageIdentity out;
  out.lhs = R.scalar(jet);

  SubspaceBasis full;
  full.vectors = gram_schmidt_frame(jet.g, MatrixXcd::Identity(n, n));
  const MatrixXcd ricf = to_frame(R.ricci(jet), full.vectors);
  cdouble tr = 0.0;
  for (int i = 0; i < n; ++i) tr += ricf(i, i);
  const double ric_avg = tr.real() / n;
  const double h_avg = average_h_closed_form(R, full) * 2.0 / (n * (n + 1.0));
  out.rhs = n * (n + 1.0) / den * (params.a * ric_avg + params.b * h_avg);
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

MixedAverageIdentity mixed_average_identity_monte_carlo(const CurvatureTensor& R,
                                                        const MetricJet& jet,
                                                        const MixedParams& params,
                                                        long long samples, std::uint64_t seed) {
  const int n = jet.n;
  const double den = mixed_denominator(n, params);
  MixedAverageIdentity out;
  out.lhs = R.scalar(jet);

  Rng rng(seed);
  SubspaceBasis full;
  full.vectors = gram_schmidt_frame(jet.g, MatrixXcd::Identity(n, n));
  std::vector<double> vals(samples);
  for (long long s = 0; s < samples; ++s) {
    const VectorXcd Z = sphere_sample(full, rng);
    vals[s] = mixed_curvature(R, jet, Z, params);
  }
  out.mc = estimate(vals, seed);
  const double factor = n * (n + 1.0) / den;
  out.mc.mean *= factor;
  out.mc.standard_error *= std::abs(factor);
  out.rhs = out.mc.mean;
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

SubspaceAverage subspace_average_vs_min(const CurvatureTensor& R, const MetricJet& jet,
                                        const SubspaceBasis& sigma_2k,
                                        const MixedParams& params, Rng& rng) {
  const int dim = sigma_2k.k();
  if (dim % 2 != 0 || dim < 2) throw Error("subspace_average_vs_min: dimension must be even");
  const MatrixXcd ric = R.ricci(jet);

  // full Ricci evaluated on the frame vectors (trace over all n directions)
  double ric_sum = 0.0;
  for (int i = 0; i < dim; ++i) {
    const VectorXcd e = sigma_2k.vectors.col(i);
    cdouble v = 0.0;
    for (int p = 0; p < jet.n; ++p)
      for (int q = 0; q < jet.n; ++q) v += ric(p, q) * e(p) * std::conj(e(q));
    ric_sum += v.real();
  }

  const Eigen::MatrixXd M = frame_quadratic_form(R, sigma_2k.vectors);
  const double rr_sum = M.sum();

  SubspaceAverage out;
  out.average = params.a / dim * ric_sum + 2.0 * params.b / (dim * (dim + 1.0)) * rr_sum;
  out.global_min = min_over_directions(R, jet, params, rng).value;
  out.gap = out.average - out.global_min;
  return out;
}

}  // namespace curvlab
