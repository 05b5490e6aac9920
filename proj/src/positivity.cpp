#include "curvlab/positivity.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "curvlab/parallel.hpp"

namespace curvlab {

// --- grids ---

ScanGrid ScanGrid::torus_grid(const ManifoldModel& model, int per_axis) {
  if (!model.supports_quadrature) throw NotTorusModel("torus_grid requires a torus model");
  ScanGrid g;
  std::int64_t count = 1;
  for (int a = 0; a < 2 * model.n; ++a) count *= per_axis;
  g.points.reserve(count);
  const double h = 1.0 / per_axis;
  for (std::int64_t idx = 0; idx < count; ++idx) {
    Point p;
    p.z.resize(model.n);
    std::int64_t r = idx;
    for (int j = 0; j < model.n; ++j) {
      const int ix = static_cast<int>(r % per_axis);
      r /= per_axis;
      const int iy = static_cast<int>(r % per_axis);
      r /= per_axis;
      p.z[j] = {ix * h, iy * h};
    }
    g.points.push_back(std::move(p));
  }
  g.weights.assign(count, 1.0 / static_cast<double>(count));
  return g;
}

ScanGrid ScanGrid::sampled(const ManifoldModel& model, int count, std::uint64_t seed) {
  ScanGrid g;
  Rng rng(seed);
  g.points.reserve(count);
  for (int i = 0; i < count; ++i) {
    if (model.is_product()) {
      Point p;
      for (const auto& f : model.factors) {
        Point q = f.chart.random_point(rng);
        p.z.insert(p.z.end(), q.z.begin(), q.z.end());
      }
      g.points.push_back(std::move(p));
    } else {
      g.points.push_back(model.chart.random_point(rng));
    }
  }
  return g;
}

std::string to_string(PositivityClass c) {
  switch (c) {
    case PositivityClass::Positive: return "positive";
    case PositivityClass::QuasiPositive: return "quasi_positive";
    case PositivityClass::NonnegativeFlat: return "nonnegative_flat";
    case PositivityClass::Indefinite: return "indefinite";
  }
  return "?";
}

std::string FunctionalSpec::name() const {
  switch (kind) {
    case H: return "H";
    case Mixed: return "C";
    case RicciDirection: return "ric";
    case RicciK: return "ric_k";
    case RealBisectional: return "B";
    case Scalar: return "S";
  }
  return "?";
}

// --- exact copositive-style inner solve ---

CopositiveMin copositive_min(const Eigen::MatrixXd& M_in) {
  const int n = static_cast<int>(M_in.rows());
  if (n > 8) throw DimensionTooLarge("copositive_min: support enumeration limited to n <= 8");
  const Eigen::MatrixXd M = 0.5 * (M_in + M_in.transpose());

  CopositiveMin best;
  best.value = std::numeric_limits<double>::infinity();

  // A minimizer restricted to its support S is an eigenvector of M_S with
  // strictly positive components; every such eigenvector is itself feasible,
  // so the minimum over all candidates is exact.
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    const int m = static_cast<int>(idx.size());
    Eigen::MatrixXd Ms(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) Ms(a, b) = M(idx[a], idx[b]);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Ms);
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();

    auto consider = [&](double lambda, const Eigen::VectorXd& v) {
      int imax = 0;
      for (int a = 1; a < m; ++a)
        if (std::abs(v(a)) > std::abs(v(imax))) imax = a;
      const double s = v(imax) >= 0.0 ? 1.0 : -1.0;
      for (int a = 0; a < m; ++a)
        if (s * v(a) <= 0.0) return;  // zero or mixed sign: handled by a sub-support
      if (lambda < best.value) {
        Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
        for (int a = 0; a < m; ++a) full(idx[a]) = s * v(a);
        full.normalize();
        best.value = lambda;
        best.weights = full;
      }
    };

    for (int e = 0; e < m; ++e) consider(vals(e), vecs.col(e));

    // Degenerate clusters: the computed eigenbasis need not contain the
    // positive eigenvector, so probe the cluster projector on a positive seed.
    const double scale = std::max({1.0, std::abs(vals(0)), std::abs(vals(m - 1))});
    int e = 0;
    while (e < m) {
      int e2 = e + 1;
      while (e2 < m && vals(e2) - vals(e) < 1e-12 * scale) ++e2;
      if (e2 - e > 1) {
        const Eigen::MatrixXd V = vecs.middleCols(e, e2 - e);
        Eigen::VectorXd seed = V * (V.transpose() * Eigen::VectorXd::Ones(m));
        if (seed.norm() > 1e-12) consider(vals(e), seed.normalized());
      }
      e = e2;
    }
  }
  return best;
}

// --- projected descent over the g-unit sphere ---

namespace {

struct MixedObjective {
  const CurvatureTensor& R;
  const MetricJet& jet;
  MixedParams params;
  MatrixXcd ric;

  double value(const VectorXcd& X) const {
    const double m = hermitian_norm2(jet.g, X);
    const MatrixXcd T = R.contract_first_pair(X, X);
    cdouble q = 0.0, r = 0.0;
    const int n = R.n();
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        q += jet.ginv_up(k, l) * T(k, l);
        r += T(k, l) * X(k) * std::conj(X(l));
      }
    return params.a * q.real() / m + params.b * r.real() / (m * m);
  }

  // Wirtinger gradient d/dXbar.
  VectorXcd gradient(const VectorXcd& X) const {
    const int n = R.n();
    const double m = hermitian_norm2(jet.g, X);
    const MatrixXcd T = R.contract_first_pair(X, X);
    const MatrixXcd B = R.contract_second_pair(X, X);
    cdouble qv = 0.0, rv = 0.0;
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        qv += jet.ginv_up(k, l) * T(k, l);
        rv += T(k, l) * X(k) * std::conj(X(l));
      }
    const VectorXcd mt = jet.g.transpose() * X;
    const VectorXcd qt = ric.transpose() * X;
    const VectorXcd rt = T.transpose() * X + B.transpose() * X;
    return params.a * (qt / m - (qv.real() / (m * m)) * mt) +
           params.b * (rt / (m * m) - (2.0 * rv.real() / (m * m * m)) * mt);
  }
};

DirectionMin sphere_descent(const MixedObjective& obj, const MetricJet& jet, Rng& rng,
                            int starts, int max_iter = 300, double grad_tol = 1e-8) {
  const int n = jet.n;
  DirectionMin best;
  best.value = std::numeric_limits<double>::infinity();
  best.converged = false;

  for (int s = 0; s < starts; ++s) {
    VectorXcd X(n);
    for (int i = 0; i < n; ++i) X(i) = rng.cnormal();
    X /= std::sqrt(hermitian_norm2(jet.g, X));

    double f = obj.value(X);
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
      const VectorXcd G = obj.gradient(X);
      const VectorXcd mt = jet.g.transpose() * X;
      VectorXcd d = -G + (mt.dot(G).real() / mt.squaredNorm()) * mt;
      const double gnorm = d.norm();
      if (gnorm < grad_tol) {
        converged = true;
        break;
      }
      double t = 1.0 / (1.0 + gnorm);
      bool stepped = false;
      for (int bt = 0; bt < 40; ++bt) {
        VectorXcd Xn = X + t * d;
        Xn /= std::sqrt(hermitian_norm2(jet.g, Xn));
        const double fn = obj.value(Xn);
        if (fn < f - 1e-4 * t * gnorm * gnorm) {
          X = Xn;
          f = fn;
          stepped = true;
          break;
        }
        t *= 0.5;
      }
      if (!stepped) {
        converged = gnorm < 1e-6;
        break;
      }
    }
    if (f < best.value) {
      best.value = f;
      best.direction = X;
      best.converged = converged;
    }
  }
  return best;
}

}  // namespace

DirectionMin min_over_directions(const CurvatureTensor& R, const MetricJet& jet,
                                 const MixedParams& params, Rng& rng, int starts) {
  MixedObjective obj{R, jet, params, R.ricci(jet)};
  return sphere_descent(obj, jet, rng, starts);
}

// --- k-Ricci ---

double k_ricci_min_over_subspaces(const CurvatureTensor& R, const MetricJet& jet,
                                  const VectorXcd& X_unit, int k, MatrixXcd* sigma_out) {
  const int n = jet.n;
  MatrixXcd seed = MatrixXcd::Identity(n, n);
  seed.col(0) = X_unit;
  MatrixXcd E;
  try {
    E = gram_schmidt_frame(jet.g, seed);
  } catch (const RankDeficientSeed&) {
    // X was (numerically) a coordinate direction; use a dense completion.
    for (int r = 0; r < n; ++r)
      for (int c = 1; c < n; ++c)
        seed(r, c) = cdouble(std::cos(1.0 + r + 2.0 * c), std::sin(2.0 + 3.0 * r + c));
    E = gram_schmidt_frame(jet.g, seed);
  }

  const MatrixXcd T = R.contract_first_pair(X_unit, X_unit);
  cdouble hv = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) hv += T(a, b) * X_unit(a) * std::conj(X_unit(b));
  const double h = hv.real();
  if (k == 1) {
    if (sigma_out) *sigma_out = X_unit;
    return h;
  }

  MatrixXcd Q(n - 1, n - 1);
  for (int a = 1; a < n; ++a)
    for (int b = 1; b < n; ++b) {
      cdouble v = 0.0;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) v += T(p, q) * E(p, a) * std::conj(E(q, b));
      Q(a - 1, b - 1) = v;
    }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (Q + Q.adjoint()));
  double sum = h;
  for (int e = 0; e < k - 1; ++e) sum += es.eigenvalues()(e);
  if (sigma_out) {
    sigma_out->resize(n, k);
    sigma_out->col(0) = X_unit;
    for (int e = 0; e < k - 1; ++e)
      sigma_out->col(e + 1) = E.rightCols(n - 1) * es.eigenvectors().col(e);
  }
  return sum;
}

KRicciMin min_k_ricci(const CurvatureTensor& R, const MetricJet& jet, int k, Rng& rng,
                      int starts) {
  const int n = jet.n;
  if (k < 1 || k > n) throw Error("min_k_ricci: k out of range");
  KRicciMin best;
  best.value = std::numeric_limits<double>::infinity();
  best.converged = false;

  auto objective = [&](const VectorXcd& X) {
    VectorXcd Xu = X / std::sqrt(hermitian_norm2(jet.g, X));
    return k_ricci_min_over_subspaces(R, jet, Xu, k, nullptr);
  };

  const double fd_h = 1e-5;
  for (int s = 0; s < starts; ++s) {
    VectorXcd X(n);
    for (int i = 0; i < n; ++i) X(i) = rng.cnormal();
    X /= std::sqrt(hermitian_norm2(jet.g, X));
    double f = objective(X);
    bool converged = false;

    for (int it = 0; it < 120; ++it) {
      VectorXcd G(n);
      for (int i = 0; i < n; ++i) {
        VectorXcd Xp = X, Xm = X;
        Xp(i) += fd_h;
        Xm(i) -= fd_h;
        const double dre = (objective(Xp) - objective(Xm)) / (2 * fd_h);
        Xp = X;
        Xm = X;
        Xp(i) += cdouble(0, fd_h);
        Xm(i) -= cdouble(0, fd_h);
        const double dim = (objective(Xp) - objective(Xm)) / (2 * fd_h);
        G(i) = 0.5 * cdouble(dre, dim);
      }
      const VectorXcd mt = jet.g.transpose() * X;
      VectorXcd d = -G + (mt.dot(G).real() / mt.squaredNorm()) * mt;
      const double gnorm = d.norm();
      if (gnorm < 1e-7) {
        converged = true;
        break;
      }
      double t = 0.5 / (1.0 + gnorm);
      bool stepped = false;
      for (int bt = 0; bt < 30; ++bt) {
        VectorXcd Xn = X + t * d;
        Xn /= std::sqrt(hermitian_norm2(jet.g, Xn));
        const double fn = objective(Xn);
        if (fn < f - 1e-4 * t * gnorm * gnorm) {
          X = Xn;
          f = fn;
          stepped = true;
          break;
        }
        t *= 0.5;
      }
      if (!stepped) {
        converged = gnorm < 1e-4;  // finite-difference gradient floor
        break;
      }
    }
    if (f < best.value) {
      MatrixXcd sigma;
      best.value = k_ricci_min_over_subspaces(R, jet, X, k, &sigma);
      best.direction = X;
      best.sigma = sigma;
      best.converged = converged;
    }
  }
  return best;
}

// --- real bisectional ---

namespace {

MatrixXcd skew_exp(const MatrixXcd& A) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(cdouble(0, -1) * A);
  const auto& V = es.eigenvectors();
  VectorXcd ph(es.eigenvalues().size());
  for (int i = 0; i < ph.size(); ++i) ph(i) = std::exp(cdouble(0, es.eigenvalues()(i)));
  return V * ph.asDiagonal() * V.adjoint();
}

MatrixXcd random_skew(Rng& rng, int n, double scale) {
  MatrixXcd A(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = cdouble(0, rng.normal() * scale);
    for (int j = i + 1; j < n; ++j) {
      const cdouble w = rng.cnormal() * scale;
      A(i, j) = w;
      A(j, i) = -std::conj(w);
    }
  }
  return A;
}

}  // namespace

BisectionalMin min_real_bisectional(const CurvatureTensor& R, const MetricJet& jet, Rng& rng,
                                    int restarts) {
  const int n = jet.n;
  BisectionalMin best;
  best.value = std::numeric_limits<double>::infinity();
  best.converged = false;
  best.exact_inner = n <= 8;

  auto inner = [&](const MatrixXcd& E, Eigen::VectorXd* w_out) {
    const Eigen::MatrixXd M = frame_quadratic_form(R, E);
    if (n <= 8) {
      CopositiveMin cm = copositive_min(M);
      if (w_out) *w_out = cm.weights;
      return cm.value;
    }
    // heuristic fallback: projected gradient on {a >= 0, |a| = 1}
    Eigen::VectorXd a = Eigen::VectorXd::Ones(n).normalized();
    for (int it = 0; it < 200; ++it) {
      Eigen::VectorXd g = 2.0 * (M * a);
      g -= g.dot(a) * a;
      Eigen::VectorXd an = (a - 0.1 * g).cwiseMax(0.0);
      const double nn = an.norm();
      a = nn > 0 ? Eigen::VectorXd(an / nn) : Eigen::VectorXd::Ones(n).normalized();
    }
    if (w_out) *w_out = a;
    return static_cast<double>(a.dot(M * a));
  };

  // skew-Hermitian generator basis: n^2 real parameters
  std::vector<MatrixXcd> gens;
  for (int i = 0; i < n; ++i) {
    MatrixXcd A = MatrixXcd::Zero(n, n);
    A(i, i) = cdouble(0, 1);
    gens.push_back(A);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      MatrixXcd A = MatrixXcd::Zero(n, n);
      A(i, j) = 1.0;
      A(j, i) = -1.0;
      gens.push_back(A);
      A(i, j) = cdouble(0, 1);
      A(j, i) = cdouble(0, 1);
      gens.push_back(A);
    }

  const MatrixXcd E0 = gram_schmidt_frame(jet.g, MatrixXcd::Identity(n, n));

  const double fd_h = 1e-4;
  for (int s = 0; s < restarts; ++s) {
    MatrixXcd E = s == 0 ? E0 : MatrixXcd(E0 * skew_exp(random_skew(rng, n, 0.8)));
    double f = inner(E, nullptr);
    bool converged = false;

    for (int it = 0; it < 80; ++it) {
      Eigen::VectorXd grad(static_cast<int>(gens.size()));
      for (std::size_t a = 0; a < gens.size(); ++a) {
        const MatrixXcd Ep = E * skew_exp(fd_h * gens[a]);
        const MatrixXcd Em = E * skew_exp(-fd_h * gens[a]);
        grad(static_cast<int>(a)) = (inner(Ep, nullptr) - inner(Em, nullptr)) / (2 * fd_h);
      }
      const double gnorm = grad.norm();
      if (gnorm < 1e-7) {
        converged = true;
        break;
      }
      double t = 0.5 / (1.0 + gnorm);
      bool stepped = false;
      for (int bt = 0; bt < 30; ++bt) {
        MatrixXcd D = MatrixXcd::Zero(n, n);
        for (std::size_t a = 0; a < gens.size(); ++a)
          D -= t * grad(static_cast<int>(a)) * gens[a];
        const MatrixXcd En = E * skew_exp(D);
        const double fn = inner(En, nullptr);
        if (fn < f - 1e-4 * t * gnorm * gnorm) {
          E = En;
          f = fn;
          stepped = true;
          break;
        }
        t *= 0.5;
      }
      if (!stepped) {
        converged = gnorm < 1e-3;  // kinks of the inner min
        break;
      }
    }
    if (f < best.value) {
      Eigen::VectorXd w;
      best.value = inner(E, &w);
      best.frame = E;
      best.weights = w;
      best.converged = converged;
    }
  }
  return best;
}

// --- classify ---

Witness pointwise_minimum(const CurvatureTensor& R, const MetricJet& jet,
                          const FunctionalSpec& f, Rng& rng, bool* converged) {
  Witness w;
  bool conv = true;
  switch (f.kind) {
    case FunctionalSpec::H: {
      const DirectionMin m = min_over_directions(R, jet, {0.0, 1.0}, rng);
      w.value = m.value;
      w.direction = m.direction;
      conv = m.converged;
      break;
    }
    case FunctionalSpec::Mixed: {
      const DirectionMin m = min_over_directions(R, jet, f.params, rng);
      w.value = m.value;
      w.direction = m.direction;
      conv = m.converged;
      break;
    }
    case FunctionalSpec::RicciDirection: {
      const DirectionMin m = min_over_directions(R, jet, {1.0, 0.0}, rng);
      w.value = m.value;
      w.direction = m.direction;
      conv = m.converged;
      break;
    }
    case FunctionalSpec::RicciK: {
      const KRicciMin m = min_k_ricci(R, jet, f.k, rng);
      w.value = m.value;
      w.direction = m.direction;
      w.sigma = m.sigma;
      conv = m.converged;
      break;
    }
    case FunctionalSpec::RealBisectional: {
      const BisectionalMin m = min_real_bisectional(R, jet, rng);
      w.value = m.value;
      w.frame = m.frame;
      w.weights = m.weights;
      conv = m.converged;
      break;
    }
    case FunctionalSpec::Scalar:
      w.value = R.scalar(jet);
      break;
  }
  if (converged) *converged = conv;
  return w;
}

PositivityVerdict classify(const ManifoldModel& model, const FunctionalSpec& f,
                           const ScanGrid& grid, double tol, std::uint64_t seed) {
  if (grid.points.empty()) throw Error("classify: empty grid");
  const std::int64_t count = static_cast<std::int64_t>(grid.points.size());
  std::vector<Witness> results(count);
  std::vector<char> conv(count, 1);
  const Rng base(seed);

  parallel_chunks(count, [&](std::int64_t b, std::int64_t e, int) {
    for (std::int64_t i = b; i < e; ++i) {
      Rng local = base.substream(static_cast<std::uint64_t>(i));
      const MetricJet jet = metric_jet(model, grid.points[i]);
      const CurvatureTensor R = chern_curvature(jet);
      bool c = true;
      results[i] = pointwise_minimum(R, jet, f, local, &c);
      results[i].point = grid.points[i];
      conv[i] = c ? 1 : 0;
    }
  });

  PositivityVerdict v;
  v.tol = tol;
  std::int64_t arg_min = 0, arg_max = 0;
  for (std::int64_t i = 1; i < count; ++i) {
    if (results[i].value < results[arg_min].value) arg_min = i;
    if (results[i].value > results[arg_max].value) arg_max = i;
  }
  v.min_value = results[arg_min].value;
  v.max_pointwise_min = results[arg_max].value;
  v.min_witness = results[arg_min];
  v.all_converged = std::all_of(conv.begin(), conv.end(), [](char c) { return c != 0; });

  if (v.min_value > tol)
    v.cls = PositivityClass::Positive;
  else if (v.min_value >= -tol)
    v.cls = v.max_pointwise_min > tol ? PositivityClass::QuasiPositive
                                      : PositivityClass::NonnegativeFlat;
  else
    v.cls = PositivityClass::Indefinite;
  if (v.max_pointwise_min > tol) v.positive_witness = results[arg_max];
  return v;
}

// --- Lemma 2.3 ---

Lemma23Result lemma23_check(const CurvatureTensor& R, const MetricJet& jet, int k,
                            int sample_count, Rng& rng) {
  const int n = jet.n;
  std::vector<VectorXcd> sample;
  sample.reserve(sample_count);
  for (int s = 0; s < sample_count; ++s) {
    VectorXcd X(n);
    for (int i = 0; i < n; ++i) X(i) = rng.cnormal();
    X /= std::sqrt(hermitian_norm2(jet.g, X));
    sample.push_back(std::move(X));
  }

  Lemma23Result out;
  out.sigma = std::numeric_limits<double>::infinity();
  for (const auto& X : sample)
    out.sigma =
        std::min(out.sigma, k_ricci_min_over_subspaces(R, jet, X, k, nullptr) / (k + 1.0));

  out.max_violation = -std::numeric_limits<double>::infinity();
  for (const auto& X : sample) {
    const MatrixXcd T = R.contract_first_pair(X, X);
    cdouble ric = 0.0, h = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        ric += jet.ginv_up(a, b) * T(a, b);
        h += T(a, b) * X(a) * std::conj(X(b));
      }
    const double lhs = (k - 1.0) * ric.real() + (n - k) * h.real();
    const double rhs = (n - 1.0) * (k + 1.0) * out.sigma;
    out.max_violation = std::max(out.max_violation, rhs - lhs);
  }
  return out;
}

}  // namespace curvlab
