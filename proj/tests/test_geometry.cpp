#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "curvlab/geometry.hpp"
#include "curvlab/rng.hpp"
#include "support/finite_diff.hpp"

using namespace curvlab;
using namespace curvlab::testsupport;

namespace {

Point pt(std::initializer_list<cdouble> zs) {
  Point p;
  p.z = zs;
  return p;
}

Point random_interior_point(const ManifoldModel& m, Rng& rng) {
  if (!m.is_product()) return m.chart.random_point(rng);
  Point p;
  for (const auto& f : m.factors) {
    Point q = f.chart.random_point(rng);
    p.z.insert(p.z.end(), q.z.begin(), q.z.end());
  }
  return p;
}

// Metric entry probe for the finite-difference oracle.
CFn entry_probe(const ManifoldModel& m, int i, int j) {
  return [&m, i, j](const Point& q) { return metric_value(m, q)(i, j); };
}

// Hand-differentiated Hopf data: g_{i jbar} = delta_ij / |z|^2.
MatrixXcd hopf_dg(const Point& p, int k) {
  const int n = p.n();
  double rho = 0.0;
  for (auto& z : p.z) rho += std::norm(z);
  MatrixXcd d = MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = -std::conj(p.z[k]) / (rho * rho);
  return d;
}

cdouble hopf_curvature(const Point& p, int i, int j, int k, int l) {
  double rho = 0.0;
  for (auto& z : p.z) rho += std::norm(z);
  cdouble r = 0.0;
  if (i == j && k == l) r += 1.0 / (rho * rho);
  if (i == j) r -= std::conj(p.z[k]) * p.z[l] / (rho * rho * rho);
  return r;
}

}  // namespace

TEST_CASE("flat torus: identity metric, zero derivatives, zero curvature") {
  for (const auto& model :
       {ManifoldModel::flat_torus(2), ManifoldModel::flat_torus_potential(2)}) {
    const Point p = pt({{0.3, 0.7}, {0.9, 0.1}});
    const MetricJet jet = metric_jet(model, p);
    CHECK((jet.g - MatrixXcd::Identity(2, 2)).norm() < 1e-14);
    for (int k = 0; k < 2; ++k) {
      CHECK(jet.dg[k].norm() < 1e-14);
      for (int l = 0; l < 2; ++l) CHECK(jet.d2(k, l).norm() < 1e-14);
    }
    const CurvatureTensor R = chern_curvature(jet);
    for (const auto& c : R.data()) CHECK(std::abs(c) < 1e-14);
  }
}

TEST_CASE("fubini-study at the chart origin") {
  const ManifoldModel fs = ManifoldModel::fubini_study(2);
  const Point p = pt({{0.0, 0.0}, {0.0, 0.0}});
  const MetricJet jet = metric_jet(fs, p);
  CHECK((jet.g - MatrixXcd::Identity(2, 2)).norm() < 1e-14);
  for (int k = 0; k < 2; ++k) CHECK(jet.dg[k].norm() < 1e-14);
}

TEST_CASE("fubini-study CP^1 curvature at origin equals 2") {
  const ManifoldModel fs = ManifoldModel::fubini_study(1);
  const Point p = pt({{0.0, 0.0}});

  // Oracle first: curvature from finite differences of the potential.
  // R_{1 1bar 1 1bar} = -dd g + g^{-1} |dg|^2 with g from the potential.
  auto g_probe = entry_probe(fs, 0, 0);
  const cdouble g0 = g_probe(p);
  const cdouble dg = fd_dz(g_probe, p, 0);
  const cdouble ddg = fd_dz_dzbar(g_probe, p, 0, 0);
  const cdouble oracle = -ddg + dg * std::conj(dg) / g0;
  CHECK(std::abs(oracle - 2.0) < 1e-6);

  const MetricJet jet = metric_jet(fs, p);
  const CurvatureTensor R = chern_curvature(jet);
  CHECK(std::abs(R.at(0, 0, 0, 0) - oracle) < 1e-6);
  CHECK(std::abs(R.at(0, 0, 0, 0) - 2.0) < 1e-12);
}

TEST_CASE("hopf metric jets at z=(1,0) and random points") {
  const ManifoldModel hopf = ManifoldModel::hopf(2);
  const Point base = pt({{1.0, 0.0}, {0.0, 0.0}});
  const MetricJet jet = metric_jet(hopf, base);
  CHECK((jet.g - MatrixXcd::Identity(2, 2)).norm() < 1e-14);
  for (int k = 0; k < 2; ++k) CHECK((jet.dg[k] - hopf_dg(base, k)).norm() < 1e-13);

  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const Point p = hopf.chart.random_point(rng);
    const MetricJet j = metric_jet(hopf, p);
    const CurvatureTensor R = chern_curvature(j);
    for (int i = 0; i < 2; ++i)
      for (int jj = 0; jj < 2; ++jj)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
            CHECK(std::abs(R.at(i, jj, k, l) - hopf_curvature(p, i, jj, k, l)) < 1e-12);
  }
}

TEST_CASE("jets agree with the finite-difference oracle on every builtin") {
  std::vector<ManifoldModel> models;
  models.push_back(ManifoldModel::flat_torus_potential(2));
  models.push_back(ManifoldModel::perturbed_torus(2, 0.04));
  models.push_back(ManifoldModel::fubini_study(2));
  models.push_back(ManifoldModel::hopf(2));
  models.push_back(ManifoldModel::product(
      {ManifoldModel::fubini_study(1), ManifoldModel::perturbed_torus(1, 0.03)}));

  Rng rng(11);
  for (const auto& m : models) {
    CAPTURE(m.name);
    for (int t = 0; t < 50; ++t) {
      const Point p = random_interior_point(m, rng);
      MetricJet jet;
      try {
        jet = metric_jet(m, p);
      } catch (const OutOfDomain&) {
        continue;  // FD probes near the annulus edge can step outside
      }
      const int n = m.n;
      double scale = jet.g.norm() + 1.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          auto probe = entry_probe(m, i, j);
          for (int k = 0; k < n; ++k) {
            const cdouble fd = fd_dz(probe, p, k);
            CHECK(std::abs(jet.dg[k](i, j) - fd) < 1e-6 * scale);
            for (int l = 0; l < n; ++l) {
              const cdouble fd2 = fd_dz_dzbar(probe, p, k, l);
              CHECK(std::abs(jet.d2(k, l)(i, j) - fd2) < 1e-6 * scale);
            }
          }
        }
    }
  }
}

TEST_CASE("curvature symmetries") {
  Rng rng(5);
  const auto models = {ManifoldModel::perturbed_torus(2, 0.05), ManifoldModel::fubini_study(2),
                       ManifoldModel::hopf(2)};
  for (const auto& m : models) {
    CAPTURE(m.name);
    std::vector<Point> sample;
    for (int t = 0; t < 10; ++t) sample.push_back(m.chart.random_point(rng));
    const auto kc = kahler_check(m, sample);
    for (const auto& p : sample) {
      const CurvatureTensor R = chern_curvature(metric_jet(m, p));
      CHECK(R.conjugation_symmetry_error() < 1e-12);
      if (kc.kahler) CHECK(R.kahler_symmetry_error() < 1e-9);
    }
  }
}

TEST_CASE("kahler check distinguishes the builtins") {
  Rng rng(17);
  std::vector<Point> sample;
  const ManifoldModel pt2 = ManifoldModel::perturbed_torus(2, 0.05);
  for (int t = 0; t < 20; ++t) sample.push_back(pt2.chart.random_point(rng));
  auto r1 = kahler_check(pt2, sample);
  CHECK(r1.kahler);
  CHECK(r1.worst_deviation < 1e-12);

  const ManifoldModel hopf = ManifoldModel::hopf(2);
  sample.clear();
  for (int t = 0; t < 20; ++t) sample.push_back(hopf.chart.random_point(rng));
  auto r2 = kahler_check(hopf, sample);
  CHECK_FALSE(r2.kahler);
  CHECK(r2.worst_deviation > 0.1);

  // constant non-closed Hermitian perturbation of the identity
  ManifoldModel bad = ManifoldModel::hopf(2);
  bad.name = "nonkahler_linear";
  bad.chart = Chart::box(2, 1.0);
  bad.law.entry = [](const ChartJets& c, int i, int j) {
    if (i == j) return c.constant(1.0);
    // antiholomorphic off-diagonal entry: not d-closed
    return c.zb[0] * 0.1;
  };
  sample.clear();
  Rng rng2(23);
  for (int t = 0; t < 5; ++t) sample.push_back(bad.chart.random_point(rng2));
  CHECK_FALSE(kahler_check(bad, sample).kahler);
}

TEST_CASE("gram-schmidt frames") {
  // identity metric, identity seed
  MatrixXcd g = MatrixXcd::Identity(2, 2);
  MatrixXcd E = gram_schmidt_frame(g, MatrixXcd::Identity(2, 2));
  CHECK((E - MatrixXcd::Identity(2, 2)).norm() < 1e-14);

  // diagonal scaling
  g = MatrixXcd::Zero(2, 2);
  g(0, 0) = 4.0;
  g(1, 1) = 1.0;
  E = gram_schmidt_frame(g, MatrixXcd::Identity(2, 2));
  CHECK(std::abs(E(0, 0) - 0.5) < 1e-14);
  CHECK(std::abs(E(1, 1) - 1.0) < 1e-14);

  // random SPD Hermitian metric, random seed: to_frame(g, E) == I
  Rng rng(29);
  for (int t = 0; t < 20; ++t) {
    const int n = 4;
    MatrixXcd A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = rng.cnormal();
    MatrixXcd gg = A.adjoint() * A + 0.1 * MatrixXcd::Identity(n, n);
    gg = ((gg + gg.adjoint()) * 0.5).eval();
    MatrixXcd seed(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) seed(i, j) = rng.cnormal();
    MatrixXcd F = gram_schmidt_frame(gg, seed);
    CHECK((to_frame(gg, F) - MatrixXcd::Identity(n, n)).norm() < 1e-12);
    // first column parallel to the seed's first column
    VectorXcd c0 = F.col(0), s0 = seed.col(0);
    MatrixXcd M(2, 2);
    M << c0.squaredNorm(), s0.adjoint() * c0, c0.adjoint() * s0, s0.squaredNorm();
    CHECK(std::abs(M.determinant()) < 1e-10 * s0.squaredNorm());
  }

  CHECK_THROWS_AS(gram_schmidt_frame(MatrixXcd::Identity(2, 2), MatrixXcd::Zero(2, 2)),
                  RankDeficientSeed);
}

TEST_CASE("frame invariance of the scalar curvature") {
  Rng rng(31);
  const ManifoldModel m = ManifoldModel::perturbed_torus(2, 0.05);
  for (int t = 0; t < 5; ++t) {
    const Point p = m.chart.random_point(rng);
    const MetricJet jet = metric_jet(m, p);
    const CurvatureTensor R = chern_curvature(jet);
    auto scalar_in_frame = [&](const MatrixXcd& seed) {
      const MatrixXcd E = gram_schmidt_frame(jet, seed);
      const CurvatureTensor Rf = R.frame_transform(E);
      double s = 0.0;
      for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) s += Rf.at(i, i, j, j).real();
      return s;
    };
    MatrixXcd seed1(m.n, m.n), seed2(m.n, m.n);
    for (int i = 0; i < m.n; ++i)
      for (int j = 0; j < m.n; ++j) {
        seed1(i, j) = rng.cnormal();
        seed2(i, j) = rng.cnormal();
      }
    const double s1 = scalar_in_frame(seed1);
    const double s2 = scalar_in_frame(seed2);
    CHECK(std::abs(s1 - s2) < 1e-10 * (1.0 + std::abs(s1)));
    CHECK(std::abs(s1 - R.scalar(jet)) < 1e-10 * (1.0 + std::abs(s1)));
  }
}

TEST_CASE("product models assemble block ricci") {
  const ManifoldModel prod = ManifoldModel::product(
      {ManifoldModel::fubini_study(1), ManifoldModel::flat_torus(1)});
  const Point p = pt({{0.2, -0.1}, {0.4, 0.3}});
  const MetricJet jet = metric_jet(prod, p);
  const CurvatureTensor R = chern_curvature(jet);
  const MatrixXcd ric = R.ricci(jet);
  // factor 1: CP^1 has Ric = 2 g; factor 2: flat
  const ManifoldModel fs = ManifoldModel::fubini_study(1);
  Point q = pt({{0.2, -0.1}});
  const MetricJet fj = metric_jet(fs, q);
  CHECK(std::abs(ric(0, 0) - 2.0 * fj.g(0, 0)) < 1e-12);
  CHECK(std::abs(ric(0, 1)) < 1e-13);
  CHECK(std::abs(ric(1, 0)) < 1e-13);
  CHECK(std::abs(ric(1, 1)) < 1e-13);
}

TEST_CASE("domain and metric errors") {
  const ManifoldModel hopf = ManifoldModel::hopf(2);
  CHECK_THROWS_AS(metric_jet(hopf, pt({{0.1, 0.0}, {0.0, 0.0}})), OutOfDomain);

  ManifoldModel bad = ManifoldModel::hopf(1);
  bad.chart = Chart::box(1, 2.0);
  bad.law.entry = [](const ChartJets& c, int, int) { return c.r2() - 1.0; };
  CHECK_THROWS_AS(metric_jet(bad, pt({{0.1, 0.1}})), NonPositiveMetric);
}
