#ifndef CURVLAB_POSITIVITY_HPP
#define CURVLAB_POSITIVITY_HPP

#include <optional>
#include <string>

#include "curvlab/functionals.hpp"
#include "curvlab/rng.hpp"

namespace curvlab {

// Point set for scans, with quadrature weights on models that support
// global integration (torus grids; weights sum to the cell volume 1).
struct ScanGrid {
  std::vector<Point> points;
  std::vector<double> weights;  // empty on sampled grids

  static ScanGrid torus_grid(const ManifoldModel& model, int per_axis);
  static ScanGrid sampled(const ManifoldModel& model, int count, std::uint64_t seed);
};

enum class PositivityClass { Positive, QuasiPositive, NonnegativeFlat, Indefinite };
std::string to_string(PositivityClass c);

// Functional selector for scans and reports.
struct FunctionalSpec {
  enum Kind { H, Mixed, RicciDirection, RicciK, RealBisectional, Scalar } kind = H;
  MixedParams params;  // Mixed
  int k = 1;           // RicciK
  std::string name() const;
};

struct DirectionMin {
  double value = 0.0;
  VectorXcd direction;
  bool converged = true;
};

struct KRicciMin {
  double value = 0.0;
  VectorXcd direction;
  MatrixXcd sigma;  // n x k, g-orthonormal, first column = direction
  bool converged = true;
};

struct BisectionalMin {
  double value = 0.0;
  MatrixXcd frame;
  Eigen::VectorXd weights;
  bool converged = true;
  bool exact_inner = true;
};

// Exact inner solve of min_{a >= 0, |a| = 1} a^T M a by KKT support
// enumeration (2^n - 1 supports).  M is symmetrized.
struct CopositiveMin {
  double value = 0.0;
  Eigen::VectorXd weights;
};
CopositiveMin copositive_min(const Eigen::MatrixXd& M);

// Heuristic minimum of C_{a,b} over the g-unit sphere by multi-start
// projected gradient descent (analytic gradient, backtracking line search).
DirectionMin min_over_directions(const CurvatureTensor& R, const MetricJet& jet,
                                 const MixedParams& params, Rng& rng, int starts = 32);

// Minimum of Ric_k over (X, Sigma) with an exact inner reduction: for fixed
// unit X the minimum over Sigma containing X is H(X) plus the sum of the
// k-1 smallest eigenvalues of Y -> R(X,Xbar,Y,Ybar) on the g-orthogonal
// complement of X.
KRicciMin min_k_ricci(const CurvatureTensor& R, const MetricJet& jet, int k, Rng& rng,
                      int starts = 32);

// Exact inner reduction at a fixed unit direction.
double k_ricci_min_over_subspaces(const CurvatureTensor& R, const MetricJet& jet,
                                  const VectorXcd& X_unit, int k,
                                  MatrixXcd* sigma_out = nullptr);

// Minimum of B_g over (E, a): exact copositive inner solve (n <= 8), outer
// multi-start descent over frames parametrized by exp(skew-Hermitian).
BisectionalMin min_real_bisectional(const CurvatureTensor& R, const MetricJet& jet, Rng& rng,
                                    int restarts = 16);

struct Witness {
  Point point;
  double value = 0.0;
  VectorXcd direction;            // argmin direction when applicable
  std::optional<MatrixXcd> frame; // B_g witnesses
  std::optional<Eigen::VectorXd> weights;
  std::optional<MatrixXcd> sigma; // Ric_k witnesses
};

// Classification of a functional over a sample set.  Verdicts are sampled
// statements, never proofs.
struct PositivityVerdict {
  PositivityClass cls = PositivityClass::Indefinite;
  double min_value = 0.0;         // global minimum found
  double max_pointwise_min = 0.0; // largest per-point minimum
  Witness min_witness;
  std::optional<Witness> positive_witness;  // strictly positive sample
  bool all_converged = true;
  double tol = 1e-7;
};

PositivityVerdict classify(const ManifoldModel& model, const FunctionalSpec& f,
                           const ScanGrid& grid, double tol, std::uint64_t seed);

// Per-point pointwise minimum of the functional (the classify kernel).
Witness pointwise_minimum(const CurvatureTensor& R, const MetricJet& jet,
                          const FunctionalSpec& f, Rng& rng, bool* converged);

// Lemma 2.3 inequality at a point:
// (k-1)|X|^2 Ric(X,Xbar) + (n-k) R(X,Xbar,X,Xbar) >= (n-1)(k+1) sigma |X|^4
// with sigma = min over sampled (X, Sigma) of Ric_k / (k+1).
struct Lemma23Result {
  double sigma = 0.0;
  double max_violation = 0.0;  // max of rhs - lhs over the sample
};
Lemma23Result lemma23_check(const CurvatureTensor& R, const MetricJet& jet, int k,
                            int sample_count, Rng& rng);

}  // namespace curvlab

#endif
