#ifndef CURVLAB_BERGER_HPP
#define CURVLAB_BERGER_HPP

#include "curvlab/functionals.hpp"
#include "curvlab/positivity.hpp"

namespace curvlab {

// Closed-form moments of the uniform measure on the unit sphere S^{2k-1} of
// C^k:  E[Z_i Zbar_j] = delta_ij / k,
//       E[Z_i Zbar_j Z_k Zbar_l] = (delta_ij delta_kl + delta_il delta_kj) / (k(k+1)).
struct SphereMoments {
  static double volume(int k) {  // Vol(S^{2k-1}) = 2 pi^k / (k-1)!
    double v = 2.0;
    for (int i = 1; i <= k; ++i) v *= 3.14159265358979323846264338328;
    for (int i = 2; i <= k - 1; ++i) v /= i;
    return v;
  }
};

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
};

// k(k+1)/2 * average of H(Z) over the unit sphere of Sigma, by the
// fourth-moment rule.  Equals S_k(Sigma) for tensors with the Kahler
// symmetries (Berger's lemma).
double average_h_closed_form(const CurvatureTensor& R, const SubspaceBasis& sigma);
MonteCarloEstimate average_h_monte_carlo(const CurvatureTensor& R, const SubspaceBasis& sigma,
                                         long long samples, std::uint64_t seed);

// n * average of Ric(Z,Zbar) over the unit sphere of T^{1,0}_p, by the
// second-moment rule; equals the scalar curvature.
double average_ricci_closed_form(const CurvatureTensor& R, const MetricJet& jet);
MonteCarloEstimate average_ricci_monte_carlo(const CurvatureTensor& R, const MetricJet& jet,
                                             long long samples, std::uint64_t seed);

// S = n(n+1)/((n+1)a+2b) * average of C_{a,b} over the unit sphere.
struct MixedAverageIdentity {
  double lhs = 0.0;  // scalar curvature by contraction
  double rhs = 0.0;  // scaled sphere average
  double residual = 0.0;
  MonteCarloEstimate mc;  // populated in Monte Carlo mode
};
MixedAverageIdentity mixed_average_identity_closed(const CurvatureTensor& R,
                                                   const MetricJet& jet,
                                                   const MixedParams& params);
MixedAverageIdentity mixed_average_identity_monte_carlo(const CurvatureTensor& R,
                                                        const MetricJet& jet,
                                                        const MixedParams& params,
                                                        long long samples, std::uint64_t seed);

// Frame-subspace average of C_{a,b} over an even-dimensional subspace
// (dimension 2k), compared against the global direction minimum:
//   average = (a/2k) sum_{i<=2k} Ric(e_i, ebar_i)
//           + (2b/(2k(2k+1))) sum_{i,j<=2k} Re R(e_i,ebar_i,e_j,ebar_j)
struct SubspaceAverage {
  double average = 0.0;
  double global_min = 0.0;
  double gap = 0.0;  // average - global_min, >= -tol in the paper's regime
};
SubspaceAverage subspace_average_vs_min(const CurvatureTensor& R, const MetricJet& jet,
                                        const SubspaceBasis& sigma_2k,
                                        const MixedParams& params, Rng& rng);

// Uniform unit vector in span(sigma) via normalized complex Gaussians.
VectorXcd sphere_sample(const SubspaceBasis& sigma, Rng& rng);

}  // namespace curvlab

#endif
