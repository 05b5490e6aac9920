#ifndef CURVLAB_GEOMETRY_HPP
#define CURVLAB_GEOMETRY_HPP

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "curvlab/errors.hpp"
#include "curvlab/jets.hpp"
#include "curvlab/rng.hpp"

namespace curvlab {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// A point in chart coordinates z^j = x^j + i y^j.
struct Point {
  std::vector<cdouble> z;
  int n() const { return static_cast<int>(z.size()); }
};

enum class ChartKind { Box, PeriodicCell, Annulus };

// Chart domain of complex dimension n.  Boxes and periodic cells are given
// per real coordinate in the order (x_1, y_1, ..., x_n, y_n).
struct Chart {
  int n = 0;
  ChartKind kind = ChartKind::Box;
  std::vector<double> lo, hi;       // size 2n (Box and PeriodicCell)
  double inner = 0.0, outer = 0.0;  // Annulus radii, inner <= |z| < outer

  static Chart box(int n, double half_width);
  static Chart periodic_cell(int n);  // unit periods per real axis
  static Chart annulus(int n, double inner, double outer);

  bool contains(const Point& p) const;
  Point random_point(Rng& rng) const;
  double real_coord(const Point& p, int axis) const {
    return axis % 2 == 0 ? p.z[axis / 2].real() : p.z[axis / 2].imag();
  }
};

// Coordinate seed jets at a point: the raw material for metric laws.
struct ChartJets {
  std::shared_ptr<const JetBasis> basis;
  int n = 0;
  std::vector<Jet> z, zb;

  ChartJets(const Point& p, int order);
  Jet constant(cdouble v) const { return Jet::constant(basis, v); }
  Jet x(int j) const { return (z[j] + zb[j]) * cdouble(0.5); }
  Jet y(int j) const { return (z[j] - zb[j]) * cdouble(0.0, -0.5); }
  Jet abs2(int j) const;  // |z_j|^2 as a jet
  Jet r2() const;         // sum_j |z_j|^2
};

enum class MetricKind { KahlerPotential, ExplicitHermitian };

// Metric law on a chart: either a real Kahler potential phi with
// g_{i jbar} = d^2 phi / dz^i dzbar^j, or an explicit Hermitian matrix
// field given by its upper-triangular entry functions.
struct MetricLaw {
  MetricKind kind = MetricKind::ExplicitHermitian;
  bool is_kahler_claimed = false;

  std::function<Jet(const ChartJets&)> potential;
  // entries[i*n+j] for i <= j; the lower triangle is the conjugate.
  std::function<Jet(const ChartJets&, int i, int j)> entry;
  MatrixXcd constant_matrix;  // used when `constant` is set
  bool constant = false;
};

// Metric value, first and second Wirtinger derivatives at a point.
struct MetricJet {
  int n = 0;
  MatrixXcd g;                // g(i,j) = g_{i jbar}
  MatrixXcd g_inv;            // matrix inverse of g
  std::vector<MatrixXcd> dg;  // dg[k](i,j) = d g_{i jbar} / d z^k
  std::vector<MatrixXcd> d2g; // d2g[k*n+l](i,j) = d^2 g_{i jbar} / dz^k dzbar^l
  bool dg_zero = false;       // all first derivatives identically zero

  // g^{k lbar}: the inverse metric with raised indices.
  cdouble ginv_up(int k, int l) const { return g_inv(l, k); }
  // d g_{i jbar} / d zbar^l, derived from Hermitian symmetry.
  cdouble dbar_g(int l, int i, int j) const { return std::conj(dg[l](j, i)); }
  const MatrixXcd& d2(int k, int l) const { return d2g[k * n + l]; }
};

// Chern curvature components R_{i jbar k lbar} at a point.
class CurvatureTensor {
public:
  CurvatureTensor() = default;
  explicit CurvatureTensor(int n) : n_(n), a_(static_cast<std::size_t>(n) * n * n * n) {}

  int n() const { return n_; }
  cdouble& at(int i, int j, int k, int l) { return a_[idx(i, j, k, l)]; }
  cdouble at(int i, int j, int k, int l) const { return a_[idx(i, j, k, l)]; }

  // R(X, Ybar, Z, Wbar)
  cdouble eval(const VectorXcd& X, const VectorXcd& Y, const VectorXcd& Z,
               const VectorXcd& W) const;
  // T(k,l) = sum_{ij} R_{i jbar k lbar} X^i conj(Y^j); the staged contraction
  // behind most functionals.
  MatrixXcd contract_first_pair(const VectorXcd& X, const VectorXcd& Y) const;
  // B(i,j) = sum_{kl} R_{i jbar k lbar} Z^k conj(W^l)
  MatrixXcd contract_second_pair(const VectorXcd& Z, const VectorXcd& W) const;
  MatrixXcd ricci(const MetricJet& jet) const;  // R_{i jbar} = g^{k lbar} R_{i jbar k lbar}
  double scalar(const MetricJet& jet) const;

  CurvatureTensor frame_transform(const MatrixXcd& E) const;

  double conjugation_symmetry_error() const;
  double kahler_symmetry_error() const;

  std::vector<cdouble>& data() { return a_; }
  const std::vector<cdouble>& data() const { return a_; }

private:
  std::size_t idx(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }
  int n_ = 0;
  std::vector<cdouble> a_;
};

// Model manifold: a chart with a metric law and optional global quadrature
// (torus models only).  Immutable after construction; evaluations are pure.
class ManifoldModel {
public:
  std::string name;
  int n = 0;
  Chart chart;
  MetricLaw law;
  bool supports_quadrature = false;
  std::vector<ManifoldModel> factors;  // nonempty for product models

  static ManifoldModel flat_torus(int n);
  static ManifoldModel perturbed_torus(int n, double epsilon);
  static ManifoldModel fubini_study(int n);
  static ManifoldModel hopf(int n);
  static ManifoldModel product(std::vector<ManifoldModel> factors);

  // Flat torus built from its Kahler potential rather than the constant
  // matrix law; same metric, used to cross-check the differentiation path.
  static ManifoldModel flat_torus_potential(int n);

  bool is_product() const { return !factors.empty(); }
};

// --- operations ---

MetricJet metric_jet(const ManifoldModel& model, const Point& p);

// Metric value only (cheaper jet order); used by finite-difference probes.
MatrixXcd metric_value(const ManifoldModel& model, const Point& p);

CurvatureTensor chern_curvature(const MetricJet& jet);

struct KahlerCheckResult {
  bool kahler = false;
  double worst_deviation = 0.0;
};
KahlerCheckResult kahler_check(const ManifoldModel& model, const std::vector<Point>& sample,
                               double tol = 1e-9);

// Columns g-orthonormal, first column parallel to the seed's first column.
MatrixXcd gram_schmidt_frame(const MetricJet& jet, const MatrixXcd& seed);
MatrixXcd gram_schmidt_frame(const MatrixXcd& g, const MatrixXcd& seed);

// Hermitian inner product <X, Y>_g = sum g_{i jbar} X^i conj(Y^j).
inline cdouble hermitian_inner(const MatrixXcd& g, const VectorXcd& X, const VectorXcd& Y) {
  return (Y.adjoint() * g.transpose() * X)(0, 0);
}
inline double hermitian_norm2(const MatrixXcd& g, const VectorXcd& X) {
  return hermitian_inner(g, X, X).real();
}

// (1,1)-form coefficient matrix A (A(i,j) = alpha_{i jbar}) expressed in the
// frame E: alpha(e_a, ebar_b).
inline MatrixXcd to_frame(const MatrixXcd& A, const MatrixXcd& E) {
  return E.transpose() * A * E.conjugate();
}
inline MatrixXcd from_frame(const MatrixXcd& Af, const MatrixXcd& E) {
  const MatrixXcd Einv = E.inverse();
  return Einv.transpose() * Af * Einv.conjugate();
}

}  // namespace curvlab

#endif
