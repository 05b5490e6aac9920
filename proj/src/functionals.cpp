#include "curvlab/functionals.hpp"

namespace curvlab {

SubspaceBasis SubspaceBasis::orthonormalize(const MatrixXcd& g, const MatrixXcd& span) {
  const int k = static_cast<int>(span.cols());
  SubspaceBasis s;
  s.vectors.resize(span.rows(), k);
  const double scale = span.norm();
  for (int a = 0; a < k; ++a) {
    VectorXcd v = span.col(a);
    for (int b = 0; b < a; ++b)
      v -= hermitian_inner(g, v, s.vectors.col(b)) * s.vectors.col(b);
    const double nrm2 = hermitian_norm2(g, v);
    if (!(nrm2 > 1e-24 * scale * scale))
      throw RankDeficientSeed("SubspaceBasis: spanning set is rank deficient");
    s.vectors.col(a) = v / std::sqrt(nrm2);
  }
  return s;
}

double SubspaceBasis::gram_error(const MatrixXcd& g) const {
  MatrixXcd gram(k(), k());
  for (int a = 0; a < k(); ++a)
    for (int b = 0; b < k(); ++b)
      gram(a, b) = hermitian_inner(g, vectors.col(a), vectors.col(b));
  return (gram - MatrixXcd::Identity(k(), k())).cwiseAbs().maxCoeff();
}

namespace {

// sum_{kl} T(k,l) e^k conj(e^l)
cdouble second_pair_eval(const MatrixXcd& T, const VectorXcd& e) {
  cdouble v = 0.0;
  const int n = static_cast<int>(T.rows());
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) v += T(k, l) * e(k) * std::conj(e(l));
  return v;
}

// sum_{kl} g^{k lbar} T(k,l)
cdouble second_pair_trace(const MatrixXcd& T, const MetricJet& jet) {
  cdouble v = 0.0;
  const int n = static_cast<int>(T.rows());
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) v += jet.ginv_up(k, l) * T(k, l);
  return v;
}

}  // namespace

double holo_sectional(const CurvatureTensor& R, const MatrixXcd& g, const VectorXcd& X) {
  const double m = hermitian_norm2(g, X);
  if (!(m > 0.0)) throw ZeroVector("holo_sectional: zero direction");
  return R.eval(X, X, X, X).real() / (m * m);
}

MatrixXcd chern_ricci(const CurvatureTensor& R, const MetricJet& jet) {
  return R.ricci(jet);
}

double ricci_direction(const CurvatureTensor& R, const MetricJet& jet, const VectorXcd& X) {
  const double m = hermitian_norm2(jet.g, X);
  if (!(m > 0.0)) throw ZeroVector("ricci_direction: zero direction");
  const MatrixXcd T = R.contract_first_pair(X, X);
  return second_pair_trace(T, jet).real() / m;
}

double mixed_curvature(const CurvatureTensor& R, const MetricJet& jet, const VectorXcd& X,
                       const MixedParams& params) {
  const double m = hermitian_norm2(jet.g, X);
  if (!(m > 0.0)) throw ZeroVector("mixed_curvature: zero direction");
  const MatrixXcd T = R.contract_first_pair(X, X);
  const double ric = second_pair_trace(T, jet).real();
  const double h = second_pair_eval(T, X).real();
  return params.a * ric / m + params.b * h / (m * m);
}

double k_ricci(const CurvatureTensor& R, const MatrixXcd& g, const SubspaceBasis& sigma,
               const VectorXcd& X) {
  const double m = hermitian_norm2(g, X);
  if (!(m > 0.0)) throw ZeroVector("k_ricci: zero direction");
  VectorXcd proj = VectorXcd::Zero(X.size());
  for (int a = 0; a < sigma.k(); ++a)
    proj += hermitian_inner(g, X, sigma.vectors.col(a)) * sigma.vectors.col(a);
  const double resid = std::sqrt(hermitian_norm2(g, VectorXcd(X - proj)) / m);
  if (resid > 1e-8) throw VectorNotInSubspace("k_ricci: X not in span(Sigma)");

  const MatrixXcd T = R.contract_first_pair(X, X);
  cdouble s = 0.0;
  for (int a = 0; a < sigma.k(); ++a) s += second_pair_eval(T, sigma.vectors.col(a));
  return s.real();
}

double k_scalar(const CurvatureTensor& R, const SubspaceBasis& sigma) {
  double s = 0.0;
  for (int a = 0; a < sigma.k(); ++a) {
    const MatrixXcd T = R.contract_first_pair(sigma.vectors.col(a), sigma.vectors.col(a));
    for (int b = 0; b < sigma.k(); ++b) s += second_pair_eval(T, sigma.vectors.col(b)).real();
  }
  return s;
}

Eigen::MatrixXd frame_quadratic_form(const CurvatureTensor& R, const MatrixXcd& E) {
  const int n = static_cast<int>(E.cols());
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i) {
    const MatrixXcd T = R.contract_first_pair(E.col(i), E.col(i));
    for (int j = 0; j < n; ++j) M(i, j) = second_pair_eval(T, E.col(j)).real();
  }
  return M;
}

double real_bisectional(const CurvatureTensor& R, const MatrixXcd& g, const MatrixXcd& E,
                        const Eigen::VectorXd& a) {
  (void)g;
  const int n = static_cast<int>(a.size());
  double norm2 = 0.0;
  for (int i = 0; i < n; ++i) {
    if (a(i) < 0.0) throw InvalidWeights("real_bisectional: negative weight");
    norm2 += a(i) * a(i);
  }
  if (!(norm2 > 0.0)) throw InvalidWeights("real_bisectional: zero weights");
  const Eigen::MatrixXd M = frame_quadratic_form(R, E);
  return a.dot(M * a) / norm2;
}

}  // namespace curvlab
