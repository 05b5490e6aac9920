#include "curvlab/geometry.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>

namespace curvlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

// --- Chart ---

Chart Chart::box(int n, double half_width) {
  Chart c;
  c.n = n;
  c.kind = ChartKind::Box;
  c.lo.assign(2 * n, -half_width);
  c.hi.assign(2 * n, half_width);
  return c;
}

Chart Chart::periodic_cell(int n) {
  Chart c;
  c.n = n;
  c.kind = ChartKind::PeriodicCell;
  c.lo.assign(2 * n, 0.0);
  c.hi.assign(2 * n, 1.0);
  return c;
}

Chart Chart::annulus(int n, double inner, double outer) {
  Chart c;
  c.n = n;
  c.kind = ChartKind::Annulus;
  c.inner = inner;
  c.outer = outer;
  return c;
}

bool Chart::contains(const Point& p) const {
  if (p.n() != n) return false;
  switch (kind) {
    case ChartKind::PeriodicCell:
      return true;  // wraps
    case ChartKind::Box:
      for (int a = 0; a < 2 * n; ++a) {
        const double v = real_coord(p, a);
        if (v < lo[a] || v > hi[a]) return false;
      }
      return true;
    case ChartKind::Annulus: {
      double r2 = 0.0;
      for (const auto& zj : p.z) r2 += std::norm(zj);
      const double r = std::sqrt(r2);
      return r >= inner && r < outer;
    }
  }
  return false;
}

Point Chart::random_point(Rng& rng) const {
  Point p;
  p.z.resize(n);
  switch (kind) {
    case ChartKind::Box:
    case ChartKind::PeriodicCell:
      for (int j = 0; j < n; ++j) {
        const double x = rng.uniform(lo[2 * j], hi[2 * j]);
        const double y = rng.uniform(lo[2 * j + 1], hi[2 * j + 1]);
        p.z[j] = {x, y};
      }
      return p;
    case ChartKind::Annulus:
      for (;;) {
        double r2 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double x = rng.uniform(-outer, outer);
          const double y = rng.uniform(-outer, outer);
          p.z[j] = {x, y};
          r2 += x * x + y * y;
        }
        const double r = std::sqrt(r2);
        if (r >= inner && r < outer) return p;
      }
  }
  return p;
}

// --- ChartJets ---

ChartJets::ChartJets(const Point& p, int order) : n(p.n()) {
  basis = JetBasis::get(2 * n, order);
  z.reserve(n);
  zb.reserve(n);
  for (int j = 0; j < n; ++j) {
    z.push_back(Jet::variable(basis, j, p.z[j]));
    zb.push_back(Jet::variable(basis, n + j, std::conj(p.z[j])));
  }
}

Jet ChartJets::abs2(int j) const { return z[j] * zb[j]; }

Jet ChartJets::r2() const {
  Jet s = abs2(0);
  for (int j = 1; j < n; ++j) s += abs2(j);
  return s;
}

// --- builtin models ---

ManifoldModel ManifoldModel::flat_torus(int n) {
  ManifoldModel m;
  m.name = "flat_torus";
  m.n = n;
  m.chart = Chart::periodic_cell(n);
  m.law.kind = MetricKind::KahlerPotential;
  m.law.is_kahler_claimed = true;
  m.law.constant = true;
  m.law.constant_matrix = MatrixXcd::Identity(n, n);
  m.law.potential = [](const ChartJets& c) { return c.r2(); };
  m.supports_quadrature = true;
  return m;
}

ManifoldModel ManifoldModel::flat_torus_potential(int n) {
  ManifoldModel m = flat_torus(n);
  m.name = "flat_torus_potential";
  m.law.constant = false;
  return m;
}

ManifoldModel ManifoldModel::perturbed_torus(int n, double epsilon) {
  ManifoldModel m;
  m.name = "perturbed_torus";
  m.n = n;
  m.chart = Chart::periodic_cell(n);
  m.law.kind = MetricKind::KahlerPotential;
  m.law.is_kahler_claimed = true;
  // phi = sum |z|^2 + eps/(2pi)^2 * prod_j (cos 2pi x_j + cos 2pi y_j).
  // The (2pi)^-2 normalization keeps g positive definite on the whole cell
  // for the documented range eps <= 0.05 and n <= 4 (the raw product would
  // already fail at the cell origin for eps ~ 1/(2^n pi^2)).
  const double amp = epsilon / (kTwoPi * kTwoPi);
  m.law.potential = [amp](const ChartJets& c) {
    Jet prod = cos(c.x(0) * kTwoPi) + cos(c.y(0) * kTwoPi);
    for (int j = 1; j < c.n; ++j)
      prod = prod * (cos(c.x(j) * kTwoPi) + cos(c.y(j) * kTwoPi));
    return c.r2() + prod * amp;
  };
  m.supports_quadrature = true;
  return m;
}

ManifoldModel ManifoldModel::fubini_study(int n) {
  ManifoldModel m;
  m.name = "fubini_study";
  m.n = n;
  m.chart = Chart::box(n, 1.0);
  m.law.kind = MetricKind::KahlerPotential;
  m.law.is_kahler_claimed = true;
  m.law.potential = [](const ChartJets& c) { return log(c.r2() + 1.0); };
  return m;
}

ManifoldModel ManifoldModel::hopf(int n) {
  ManifoldModel m;
  m.name = "hopf";
  m.n = n;
  m.chart = Chart::annulus(n, 1.0, 2.0);
  m.law.kind = MetricKind::ExplicitHermitian;
  m.law.is_kahler_claimed = false;
  m.law.entry = [](const ChartJets& c, int i, int j) {
    if (i == j) return c.r2().reciprocal();
    return c.constant(0.0);
  };
  return m;
}

ManifoldModel ManifoldModel::product(std::vector<ManifoldModel> factors) {
  ManifoldModel m;
  m.n = 0;
  bool quad = true;
  bool kahler = true;
  std::string inner;
  for (const auto& f : factors) {
    m.n += f.n;
    quad = quad && f.supports_quadrature;
    kahler = kahler && f.law.is_kahler_claimed;
    if (!inner.empty()) inner += " x ";
    inner += f.name;
  }
  m.name = "product(" + inner + ")";
  m.supports_quadrature = quad;
  m.law.is_kahler_claimed = kahler;
  // Chart: concatenation; contains/random dispatch through factors.
  m.chart.n = m.n;
  m.chart.kind = ChartKind::Box;  // placeholder; product uses factor charts
  m.factors = std::move(factors);
  return m;
}

// --- metric jets ---

namespace {

void check_hermitian_and_pd(MatrixXcd& g, MatrixXcd& g_inv) {
  const int n = static_cast<int>(g.rows());
  double asym = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      asym = std::max(asym, std::abs(g(i, j) - std::conj(g(j, i))));
  if (asym > 1e-10) throw Error("metric law produced a non-Hermitian matrix");
  g = 0.5 * (g + g.adjoint().eval());

  Eigen::LLT<MatrixXcd> llt(g);
  if (llt.info() != Eigen::Success) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(g, Eigen::EigenvaluesOnly);
    throw NonPositiveMetric("metric not positive definite (min eigenvalue " +
                            std::to_string(es.eigenvalues().minCoeff()) + ")");
  }
  g_inv = llt.solve(MatrixXcd::Identity(n, n));
}

MetricJet jet_from_potential(const ManifoldModel& model, const Point& p) {
  const int n = model.n;
  ChartJets c(p, 4);
  const Jet phi = model.law.potential(c);

  MetricJet out;
  out.n = n;
  out.g.resize(n, n);
  out.dg.assign(n, MatrixXcd(n, n));
  out.d2g.assign(static_cast<std::size_t>(n) * n, MatrixXcd(n, n));
  double dg_max = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out.g(i, j) = phi.deriv({i, n + j});
      for (int k = 0; k < n; ++k) {
        out.dg[k](i, j) = phi.deriv({i, k, n + j});
        dg_max = std::max(dg_max, std::abs(out.dg[k](i, j)));
        for (int l = 0; l < n; ++l)
          out.d2g[k * n + l](i, j) = phi.deriv({i, k, n + j, n + l});
      }
    }
  out.dg_zero = dg_max == 0.0;
  check_hermitian_and_pd(out.g, out.g_inv);
  return out;
}

MetricJet jet_from_entries(const ManifoldModel& model, const Point& p) {
  const int n = model.n;
  ChartJets c(p, 2);

  MetricJet out;
  out.n = n;
  out.g.resize(n, n);
  out.dg.assign(n, MatrixXcd(n, n));
  out.d2g.assign(static_cast<std::size_t>(n) * n, MatrixXcd(n, n));
  double dg_max = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const Jet e = model.law.entry(c, i, j);
      const Jet ec = e.conj();
      out.g(i, j) = e.value();
      out.g(j, i) = ec.value();
      for (int k = 0; k < n; ++k) {
        out.dg[k](i, j) = e.deriv({k});
        out.dg[k](j, i) = ec.deriv({k});
        dg_max = std::max(dg_max, std::abs(out.dg[k](i, j)));
        for (int l = 0; l < n; ++l) {
          out.d2g[k * n + l](i, j) = e.deriv({k, n + l});
          out.d2g[k * n + l](j, i) = ec.deriv({k, n + l});
        }
      }
    }
  out.dg_zero = dg_max == 0.0;
  check_hermitian_and_pd(out.g, out.g_inv);
  return out;
}

MetricJet jet_constant(const ManifoldModel& model) {
  const int n = model.n;
  MetricJet out;
  out.n = n;
  out.g = model.law.constant_matrix;
  out.dg.assign(n, MatrixXcd::Zero(n, n));
  out.d2g.assign(static_cast<std::size_t>(n) * n, MatrixXcd::Zero(n, n));
  out.dg_zero = true;
  check_hermitian_and_pd(out.g, out.g_inv);
  return out;
}

MetricJet jet_product(const ManifoldModel& model, const Point& p) {
  const int n = model.n;
  MetricJet out;
  out.n = n;
  out.g = MatrixXcd::Zero(n, n);
  out.dg.assign(n, MatrixXcd::Zero(n, n));
  out.d2g.assign(static_cast<std::size_t>(n) * n, MatrixXcd::Zero(n, n));
  out.dg_zero = true;
  int off = 0;
  for (const auto& f : model.factors) {
    Point q;
    q.z.assign(p.z.begin() + off, p.z.begin() + off + f.n);
    MetricJet sub = metric_jet(f, q);
    out.g.block(off, off, f.n, f.n) = sub.g;
    out.dg_zero = out.dg_zero && sub.dg_zero;
    for (int k = 0; k < f.n; ++k) {
      out.dg[off + k].block(off, off, f.n, f.n) = sub.dg[k];
      for (int l = 0; l < f.n; ++l)
        out.d2g[(off + k) * n + (off + l)].block(off, off, f.n, f.n) = sub.d2g[k * f.n + l];
    }
    off += f.n;
  }
  check_hermitian_and_pd(out.g, out.g_inv);
  return out;
}

}  // namespace

MetricJet metric_jet(const ManifoldModel& model, const Point& p) {
  if (p.n() != model.n) throw OutOfDomain("point dimension mismatch");
  if (model.is_product()) {
    // Domain check factor-wise.
    int off = 0;
    for (const auto& f : model.factors) {
      Point q;
      q.z.assign(p.z.begin() + off, p.z.begin() + off + f.n);
      if (!f.chart.contains(q)) throw OutOfDomain("point outside factor chart");
      off += f.n;
    }
    return jet_product(model, p);
  }
  if (!model.chart.contains(p)) throw OutOfDomain("point outside chart domain");
  if (model.law.constant) return jet_constant(model);
  if (model.law.kind == MetricKind::KahlerPotential) return jet_from_potential(model, p);
  return jet_from_entries(model, p);
}

MatrixXcd metric_value(const ManifoldModel& model, const Point& p) {
  if (model.is_product() || model.law.constant) return metric_jet(model, p).g;
  const int n = model.n;
  ChartJets c(p, 2);
  MatrixXcd g(n, n);
  if (model.law.kind == MetricKind::KahlerPotential) {
    const Jet phi = model.law.potential(c);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = phi.deriv({i, n + j});
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        g(i, j) = model.law.entry(c, i, j).value();
        g(j, i) = std::conj(g(i, j));
      }
  }
  return g;
}

// --- curvature ---

CurvatureTensor chern_curvature(const MetricJet& jet) {
  const int n = jet.n;
  CurvatureTensor R(n);
  // R_{i jbar k lbar} = -d^2 g_{i jbar}/dz^k dzbar^l
  //                     + g^{p qbar} (dg_{i qbar}/dz^k)(dg_{p jbar}/dzbar^l)
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      MatrixXcd blk = -jet.d2(k, l);
      if (!jet.dg_zero) blk += jet.dg[k] * jet.g_inv * jet.dg[l].adjoint();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R.at(i, j, k, l) = blk(i, j);
    }
  return R;
}

cdouble CurvatureTensor::eval(const VectorXcd& X, const VectorXcd& Y, const VectorXcd& Z,
                              const VectorXcd& W) const {
  MatrixXcd T = contract_first_pair(X, Y);
  cdouble s = 0.0;
  for (int k = 0; k < n_; ++k)
    for (int l = 0; l < n_; ++l) s += T(k, l) * Z(k) * std::conj(W(l));
  return s;
}

MatrixXcd CurvatureTensor::contract_first_pair(const VectorXcd& X, const VectorXcd& Y) const {
  MatrixXcd T = MatrixXcd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const cdouble w = X(i) * std::conj(Y(j));
      if (w == 0.0) continue;
      const cdouble* base = a_.data() + idx(i, j, 0, 0);
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) T(k, l) += w * base[k * n_ + l];
    }
  }
  return T;
}

MatrixXcd CurvatureTensor::contract_second_pair(const VectorXcd& Z, const VectorXcd& W) const {
  MatrixXcd B = MatrixXcd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      const cdouble* base = a_.data() + idx(i, j, 0, 0);
      cdouble s = 0.0;
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) s += base[k * n_ + l] * Z(k) * std::conj(W(l));
      B(i, j) = s;
    }
  return B;
}

MatrixXcd CurvatureTensor::ricci(const MetricJet& jet) const {
  MatrixXcd ric = MatrixXcd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      cdouble s = 0.0;
      const cdouble* base = a_.data() + idx(i, j, 0, 0);
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) s += jet.ginv_up(k, l) * base[k * n_ + l];
      ric(i, j) = s;
    }
  return ric;
}

double CurvatureTensor::scalar(const MetricJet& jet) const {
  const MatrixXcd ric = ricci(jet);
  cdouble s = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) s += jet.ginv_up(i, j) * ric(i, j);
  return s.real();
}

CurvatureTensor CurvatureTensor::frame_transform(const MatrixXcd& E) const {
  const int n = n_;
  // Contract one slot at a time: holomorphic slots with E, antiholomorphic
  // with conj(E).
  std::vector<cdouble> cur = a_, nxt(a_.size());
  const auto lin = [n](int i, int j, int k, int l) {
    return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
  };
  // slot 0 (i)
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          cdouble s = 0.0;
          for (int i = 0; i < n; ++i) s += E(i, a) * cur[lin(i, j, k, l)];
          nxt[lin(a, j, k, l)] = s;
        }
  cur.swap(nxt);
  // slot 1 (jbar)
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          cdouble s = 0.0;
          for (int j = 0; j < n; ++j) s += std::conj(E(j, b)) * cur[lin(i, j, k, l)];
          nxt[lin(i, b, k, l)] = s;
        }
  cur.swap(nxt);
  // slot 2 (k)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < n; ++c)
        for (int l = 0; l < n; ++l) {
          cdouble s = 0.0;
          for (int k = 0; k < n; ++k) s += E(k, c) * cur[lin(i, j, k, l)];
          nxt[lin(i, j, c, l)] = s;
        }
  cur.swap(nxt);
  // slot 3 (lbar)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int d = 0; d < n; ++d) {
          cdouble s = 0.0;
          for (int l = 0; l < n; ++l) s += std::conj(E(l, d)) * cur[lin(i, j, k, l)];
          nxt[lin(i, j, k, d)] = s;
        }
  CurvatureTensor out(n);
  out.a_ = std::move(nxt);
  return out;
}

double CurvatureTensor::conjugation_symmetry_error() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l)
          worst = std::max(worst, std::abs(at(i, j, k, l) - std::conj(at(j, i, l, k))));
  return worst;
}

double CurvatureTensor::kahler_symmetry_error() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) {
          worst = std::max(worst, std::abs(at(i, j, k, l) - at(k, j, i, l)));
          worst = std::max(worst, std::abs(at(i, j, k, l) - at(i, l, k, j)));
        }
  return worst;
}

// --- kahler check ---

KahlerCheckResult kahler_check(const ManifoldModel& model, const std::vector<Point>& sample,
                               double tol) {
  KahlerCheckResult r;
  for (const auto& p : sample) {
    const MetricJet jet = metric_jet(model, p);
    const int n = jet.n;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          r.worst_deviation =
              std::max(r.worst_deviation, std::abs(jet.dg[k](i, j) - jet.dg[i](k, j)));
  }
  r.kahler = r.worst_deviation < tol;
  return r;
}

// --- frames ---

MatrixXcd gram_schmidt_frame(const MatrixXcd& g, const MatrixXcd& seed) {
  const int n = static_cast<int>(g.rows());
  MatrixXcd E(n, n);
  const double scale = seed.norm();
  for (int a = 0; a < n; ++a) {
    VectorXcd v = seed.col(a);
    for (int b = 0; b < a; ++b) v -= hermitian_inner(g, v, E.col(b)) * E.col(b);
    const double nrm2 = hermitian_norm2(g, v);
    if (!(nrm2 > 1e-24 * scale * scale))
      throw RankDeficientSeed("gram_schmidt_frame: seed is rank deficient");
    E.col(a) = v / std::sqrt(nrm2);
  }
  return E;
}

MatrixXcd gram_schmidt_frame(const MetricJet& jet, const MatrixXcd& seed) {
  return gram_schmidt_frame(jet.g, seed);
}

}  // namespace curvlab
