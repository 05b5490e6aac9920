#ifndef CURVLAB_FORMS_HPP
#define CURVLAB_FORMS_HPP

#include <functional>
#include <unordered_map>

#include "curvlab/geometry.hpp"
#include "curvlab/quadrature.hpp"

namespace curvlab {

// --- pointwise exterior algebra over dz^1..dz^n, dzbar^1..dzbar^n ---

// Multi-indices are bitmasks over n <= 8 slots; a basis form is
// dz^{I} wedge dzbar^{J} with both masks increasing by construction.
class FormValue {
public:
  explicit FormValue(int n) : n_(n) {}

  int n() const { return n_; }
  const std::unordered_map<std::uint32_t, cdouble>& coeffs() const { return c_; }

  static std::uint32_t key(unsigned mz, unsigned mb) { return mz | (mb << 8); }

  void add(unsigned mz, unsigned mb, cdouble v) {
    if (v == 0.0) return;
    c_[key(mz, mb)] += v;
  }
  cdouble coeff(unsigned mz, unsigned mb) const {
    auto it = c_.find(key(mz, mb));
    return it == c_.end() ? cdouble(0.0) : it->second;
  }

  FormValue wedge(const FormValue& o) const;
  FormValue operator+(const FormValue& o) const;
  FormValue operator-(const FormValue& o) const;
  FormValue operator*(cdouble s) const;
  FormValue conjugate() const;
  FormValue wedge_power(int k) const;

  // Coefficient of dz^{1..n} wedge dzbar^{1..n}.
  cdouble top_coefficient() const {
    const unsigned full = (1u << n_) - 1;
    return coeff(full, full);
  }
  // The same coefficient expressed against the Lebesgue volume dV of the
  // underlying real coordinates: dz^{1..n} ^ dzbar^{1..n}
  //   = (-1)^{n(n-1)/2} (-2i)^n dV.
  cdouble lebesgue_density() const;

  double max_abs() const {
    double m = 0.0;
    for (const auto& [k, v] : c_) m = std::max(m, std::abs(v));
    return m;
  }

  // sign of merging dz^{m2} to the right of dz^{m1} into sorted order
  static int merge_sign(unsigned m1, unsigned m2);

private:
  int n_;
  std::unordered_map<std::uint32_t, cdouble> c_;
};

// omega = i g_{i jbar} dz^i ^ dzbar^j
FormValue fundamental_form(const MatrixXcd& g);
// real (1,1)-form i A_{i jbar} dz^i ^ dzbar^j
FormValue one_one_form(const MatrixXcd& A);

// increasing multi-index <-> bitmask tables for degree p
std::vector<unsigned> increasing_masks(int n, int p);

// --- (p,0)-form fields on a chart ---

// Coefficients are order-1 jets of the increasing multi-index components;
// constant fields skip the evaluator.
struct FormField {
  int n = 0, p = 0;
  std::vector<unsigned> masks;  // increasing multi-indices
  bool constant = false;
  std::vector<cdouble> constant_coeffs;
  std::function<std::vector<Jet>(const ChartJets&)> coeffs;
  bool holomorphic_claimed = true;

  static FormField constant_form(int n, int p,
                                 const std::vector<std::pair<unsigned, cdouble>>& entries);

  // evaluated coefficients (order >= 1 jets) at a point
  std::vector<Jet> eval(const Point& pt, int order = 1) const;
  // plain values
  std::vector<cdouble> values(const Point& pt) const;
  FormValue form_value(const Point& pt) const;

  // max |dbar coefficient| over the sample; holomorphic iff < tol
  double holomorphy_residual(const std::vector<Point>& sample) const;
};

// --- operations ---

// |eta|^2_g = sum_{I,J} eta_I conj(eta_J) det( g^{i_a jbar_b} )
double norm_squared(const std::vector<cdouble>& coeffs, const std::vector<unsigned>& masks,
                    const MetricJet& jet);
// polarized pairing <phi, psi>_g of two (p,0)-forms
cdouble form_pairing(const std::vector<cdouble>& phi, const std::vector<cdouble>& psi,
                     const std::vector<unsigned>& masks, const MetricJet& jet);

// beta = Lambda^{p-1}( i^{p^2} eta ^ etabar / p! ), normalized so that
// tr_omega beta = |eta|^2; returned as the Hermitian coefficient matrix
// beta_{i jbar} in chart coordinates.
struct BetaForm {
  MatrixXcd beta;
  double trace_identity_error = 0.0;  // |tr_omega beta - |eta|^2|
};
BetaForm beta_form(const std::vector<cdouble>& coeffs, const std::vector<unsigned>& masks,
                   int p, const MetricJet& jet);

// <alpha, beta>_g for real (1,1)-forms given by Hermitian coefficient
// matrices.
double one_one_pairing(const MatrixXcd& A, const MatrixXcd& B, const MetricJet& jet);

// Lemma 2.1 as a pointwise top-form identity:
//   i^{p^2} alpha ^ eta ^ etabar ^ omega^{n-p-1}/(n-p-1)!
//     = [tr_omega alpha * |eta|^2 - p <alpha, beta>] omega^n/n!
struct Lemma21Result {
  cdouble lhs_top = 0.0, rhs_top = 0.0;
  double residual = 0.0;  // |lhs - rhs| / (1 + |rhs|)
};
Lemma21Result lemma21_check(const MatrixXcd& alpha, const std::vector<cdouble>& eta,
                            const std::vector<unsigned>& masks, int p, const MetricJet& jet);

// Unitary-congruence canonical form of an antisymmetric sigma:
// sigma = sum_i lambda_i f^{2i-1} ^ f^{2i} in a g-unitary frame.
struct CanonicalPairDecomposition {
  std::vector<double> lambdas;  // descending, > 0
  int k = 0;                    // rank / 2
  MatrixXcd frame;              // g-orthonormal columns
  double reconstruction_error = 0.0;
};
CanonicalPairDecomposition canonical_pair_form(const MatrixXcd& sigma, const MatrixXcd& g);

// Bochner formula (2.2) at a point:
//   d_u dbar_v |eta|^2 = <D'_u eta, conj(D'_v eta)> + p sum_i R_{u vbar i ibar} beta_{i ibar}
struct Lemma22Result {
  cdouble lhs = 0.0, rhs = 0.0;
  cdouble connection_term = 0.0, curvature_term = 0.0;
  double residual = 0.0;  // relative
};
Lemma22Result lemma22_check(const ManifoldModel& model, const FormField& eta, const Point& pt,
                            const VectorXcd& u, const VectorXcd& v, bool require_kahler = true);

// Integral Bochner identity on a Kahler torus, eta constant-coefficient
// (hence d-closed) of degree 2k:
//   I1 = int Delta|eta|^2 |eta|^2,  I2 = 2k int <i ddbar|eta|^2, beta>,
//   I3 = -int |d|eta|^2|^2  (as -c int |partial|eta|^2|^2_g with c = 1,
//   calibrated by Delta = tr_omega i ddbar on the flat metric),
// all against omega^n/n!.
struct BochnerIntegralResult {
  double I1 = 0.0, I2 = 0.0, I3 = 0.0;
  double r12 = 0.0, r13 = 0.0;        // |I1-I2|, |I1-I3|
  double quad_error = 0.0;            // grid-doubling estimate
  double scale = 0.0;                 // int |integrand| reference
  int per_axis = 0;
};
BochnerIntegralResult integral_bochner_check(const ManifoldModel& model, const FormField& eta,
                                             int per_axis);

// Stokes checks of the section-4 identities on a torus.
struct StokesResult {
  double J = 0.0;                  // int i |eta|^2 deta ^ conj(deta) (* omega^{n-3} off 3-folds)
  double identity_residual = 0.0;  // |LHS - J| for dbar-closed eta (else unasserted, reported)
  double exactness_residual = 0.0; // |int d(smooth periodic 5-form)|
  double stokes_step_residual = 0.0;  // max |int dPsi| over the two Stokes-step 5-forms
  bool eta_holomorphic = false;
};
StokesResult threefold_stokes_check(const ManifoldModel& model, const FormField& eta,
                                    int per_axis);

}  // namespace curvlab

#endif
