#ifndef CURVLAB_FUNCTIONALS_HPP
#define CURVLAB_FUNCTIONALS_HPP

#include "curvlab/geometry.hpp"

namespace curvlab {

// Mixed curvature parameters C_{a,b} with the regime flags of the paper's
// projectivity (a >= 0, 3a + 2b >= 0) and rational-connectedness
// (a, b >= 0) hypotheses.
struct MixedParams {
  double a = 0.0;
  double b = 0.0;
  bool projectivity_regime() const { return a >= 0.0 && 3.0 * a + 2.0 * b >= 0.0; }
  bool rc_regime() const { return a >= 0.0 && b >= 0.0; }
};

// g-orthonormal basis of a k-dimensional subspace of T^{1,0}_p M.
struct SubspaceBasis {
  MatrixXcd vectors;  // n x k, columns g-orthonormal

  int k() const { return static_cast<int>(vectors.cols()); }
  int n() const { return static_cast<int>(vectors.rows()); }

  // Gram-Schmidt a spanning set into a basis.
  static SubspaceBasis orthonormalize(const MatrixXcd& g, const MatrixXcd& span);
  double gram_error(const MatrixXcd& g) const;
};

// Holomorphic sectional curvature H(X) = R(X,Xbar,X,Xbar)/|X|^4.
double holo_sectional(const CurvatureTensor& R, const MatrixXcd& g, const VectorXcd& X);

// Chern Ricci R_{i jbar} = g^{k lbar} R_{i jbar k lbar}.
MatrixXcd chern_ricci(const CurvatureTensor& R, const MetricJet& jet);

// Ric(X, Xbar) / |X|^2 for a direction X.
double ricci_direction(const CurvatureTensor& R, const MetricJet& jet, const VectorXcd& X);

// C_{a,b}(X) = a Ric(X,Xbar)/|X|^2 + b H(X).
double mixed_curvature(const CurvatureTensor& R, const MetricJet& jet, const VectorXcd& X,
                       const MixedParams& params);

// Ric_k(X) = sum_{i<=k} R(X,Xbar,e_i,ebar_i) over a g-unitary basis of Sigma.
// X must lie in span(Sigma).
double k_ricci(const CurvatureTensor& R, const MatrixXcd& g, const SubspaceBasis& sigma,
               const VectorXcd& X);

// S_k = sum_{i,j<=k} R(e_i,ebar_i,e_j,ebar_j).
double k_scalar(const CurvatureTensor& R, const SubspaceBasis& sigma);

// Real bisectional curvature B_g(e, a) over a g-unitary frame E and
// nonnegative weights a.
double real_bisectional(const CurvatureTensor& R, const MatrixXcd& g, const MatrixXcd& E,
                        const Eigen::VectorXd& a);

// M(i,j) = Re R(e_i, ebar_i, e_j, ebar_j) for the columns of E: the quadratic
// form behind B_g, S_k and the scalar curvature in a frame.
Eigen::MatrixXd frame_quadratic_form(const CurvatureTensor& R, const MatrixXcd& E);

}  // namespace curvlab

#endif
