#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "curvlab/berger.hpp"
#include "curvlab/synthetic.hpp"

using namespace curvlab;

namespace {

struct Evaluated {
  MetricJet jet;
  CurvatureTensor R;
};

Evaluated eval_at(const ManifoldModel& m, const Point& p) {
  Evaluated e;
  e.jet = metric_jet(m, p);
  e.R = chern_curvature(e.jet);
  return e;
}

SubspaceBasis random_subspace(const MatrixXcd& g, int n, int k, Rng& rng) {
  MatrixXcd span(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) span(i, j) = rng.cnormal();
  return SubspaceBasis::orthonormalize(g, span);
}

}  // namespace

TEST_CASE("sphere volume formula") {
  CHECK(SphereMoments::volume(1) == doctest::Approx(2 * M_PI).epsilon(1e-14));
  CHECK(SphereMoments::volume(2) == doctest::Approx(2 * M_PI * M_PI).epsilon(1e-14));
  CHECK(SphereMoments::volume(3) == doctest::Approx(M_PI * M_PI * M_PI).epsilon(1e-14));
}

TEST_CASE("closed form equals k_scalar on random Kahler-symmetric tensors") {
  Rng rng(71);
  for (int n : {2, 3, 4}) {
    const MetricJet jet = identity_metric_jet(n);
    for (int t = 0; t < 20; ++t) {
      const CurvatureTensor R = random_kahler_symmetric_tensor(n, rng);
      for (int k = 1; k <= n; ++k) {
        const SubspaceBasis sigma = random_subspace(jet.g, n, k, rng);
        const double lhs = average_h_closed_form(R, sigma);
        const double rhs = k_scalar(R, sigma);
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
      }
    }
  }
}

TEST_CASE("second-moment rule: sphere average of Z*AZ is tr(A)/n") {
  // random Hermitian "Ricci" as the quadratic form, Monte Carlo oracle
  Rng rng(73);
  const int n = 3;
  const MetricJet jet = identity_metric_jet(n);
  const MatrixXcd A = random_hermitian(n, rng);
  // synthetic tensor whose Ricci equals A: R_{ijkl} = A(i,j) delta_kl / n
  CurvatureTensor R(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) R.at(i, j, k, k) = A(i, j) / static_cast<double>(n);
  CHECK((R.ricci(jet) - A).norm() < 1e-13);

  const double closed = average_ricci_closed_form(R, jet);
  CHECK(closed == doctest::Approx(A.trace().real()).epsilon(1e-12));
  const MonteCarloEstimate mc = average_ricci_monte_carlo(R, jet, 200000, 5);
  CHECK(std::abs(mc.mean - closed) < 4.0 * mc.standard_error);
}

TEST_CASE("monte carlo agrees with closed form within 4 standard errors") {
  Rng rng(79);
  const int n = 3;
  const MetricJet jet = identity_metric_jet(n);
  const CurvatureTensor R = random_kahler_symmetric_tensor(n, rng);
  int ok = 0;
  const int trials = 40;
  for (int t = 0; t < trials; ++t) {
    const SubspaceBasis sigma = random_subspace(jet.g, n, 2, rng);
    const double closed = average_h_closed_form(R, sigma);
    const MonteCarloEstimate mc = average_h_monte_carlo(R, sigma, 20000, 1000 + t);
    if (std::abs(mc.mean - closed) < 4.0 * mc.standard_error) ++ok;
  }
  CHECK(ok >= trials - 1);
}

TEST_CASE("berger identities on the model zoo") {
  Rng rng(83);

  // flat torus: everything zero
  {
    const ManifoldModel m = ManifoldModel::flat_torus(2);
    auto [jet, R] = eval_at(m, m.chart.random_point(rng));
    SubspaceBasis full;
    full.vectors = MatrixXcd::Identity(2, 2);
    CHECK(average_h_closed_form(R, full) == doctest::Approx(0.0));
    CHECK(average_ricci_closed_form(R, jet) == doctest::Approx(0.0));
  }

  // Fubini-Study: S_k scaling and Eq. (2.4)/(2.5) constants
  for (int n : {2, 3}) {
    const ManifoldModel m = ManifoldModel::fubini_study(n);
    auto [jet, R] = eval_at(m, m.chart.random_point(rng));
    for (int k = 1; k <= n; ++k) {
      const SubspaceBasis sigma = random_subspace(jet.g, n, k, rng);
      CHECK(average_h_closed_form(R, sigma) == doctest::Approx(k * (k + 1.0)).epsilon(1e-8));
    }
    CHECK(average_ricci_closed_form(R, jet) == doctest::Approx(n * (n + 1.0)).epsilon(1e-8));
    CHECK(R.scalar(jet) == doctest::Approx(n * (n + 1.0)).epsilon(1e-8));
  }
}

TEST_CASE("mixed average identity") {
  Rng rng(89);

  // exact on random Kahler-symmetric tensors in closed form
  for (int n : {2, 3, 4}) {
    const MetricJet jet = identity_metric_jet(n);
    for (int t = 0; t < 10; ++t) {
      const CurvatureTensor R = random_kahler_symmetric_tensor(n, rng);
      const MixedParams p{rng.uniform(0.2, 2.0), rng.uniform(-0.5, 2.0)};
      const MixedAverageIdentity id = mixed_average_identity_closed(R, jet, p);
      CHECK(id.residual < 1e-12 * (1.0 + std::abs(id.lhs)));
    }
  }

  // Fubini-Study (a,b) = (1,1): both sides n(n+1)
  {
    const ManifoldModel m = ManifoldModel::fubini_study(2);
    auto [jet, R] = eval_at(m, m.chart.random_point(rng));
    const MixedAverageIdentity id = mixed_average_identity_closed(R, jet, {1.0, 1.0});
    CHECK(id.lhs == doctest::Approx(6.0).epsilon(1e-8));
    CHECK(id.rhs == doctest::Approx(6.0).epsilon(1e-8));
  }

  // flat torus: (0, 0, 0)
  {
    const ManifoldModel m = ManifoldModel::flat_torus(2);
    auto [jet, R] = eval_at(m, m.chart.random_point(rng));
    const MixedAverageIdentity id = mixed_average_identity_closed(R, jet, {1.0, 1.0});
    CHECK(id.lhs == doctest::Approx(0.0));
    CHECK(id.rhs == doctest::Approx(0.0));
    CHECK(id.residual < 1e-14);
  }

  // Monte Carlo route consistent with the closed form
  {
    const ManifoldModel m = ManifoldModel::perturbed_torus(2, 0.05);
    auto [jet, R] = eval_at(m, m.chart.random_point(rng));
    const MixedParams p{1.0, -1.0};
    const MixedAverageIdentity closed = mixed_average_identity_closed(R, jet, p);
    const MixedAverageIdentity mc = mixed_average_identity_monte_carlo(R, jet, p, 100000, 3);
    CHECK(closed.residual < 1e-12);
    CHECK(std::abs(mc.rhs - closed.rhs) < 4.0 * mc.mc.standard_error);
  }

  // degenerate denominator
  {
    const ManifoldModel m = ManifoldModel::flat_torus(2);
    auto [jet, R] = eval_at(m, m.chart.random_point(rng));
    CHECK_THROWS_AS(mixed_average_identity_closed(R, jet, {2.0, -3.0}),
                    DegenerateDenominator);  // (n+1)a + 2b = 6 - 6 = 0 at n = 2
  }
}

TEST_CASE("subspace average dominates the direction minimum") {
  Rng rng(97);

  // Fubini-Study: constancy makes the average equal the min, gap = 0
  {
    const ManifoldModel m = ManifoldModel::fubini_study(3);
    auto [jet, R] = eval_at(m, m.chart.random_point(rng));
    const SubspaceBasis sigma2 = random_subspace(jet.g, 3, 2, rng);
    Rng r2(5);
    const SubspaceAverage sa = subspace_average_vs_min(R, jet, sigma2, {1.0, 1.0}, r2);
    CHECK(sa.average == doctest::Approx(4.0 + 2.0).epsilon(1e-8));
    CHECK(std::abs(sa.gap) < 1e-7);
  }

  // flat torus: (0, 0, 0)
  {
    const ManifoldModel m = ManifoldModel::flat_torus(2);
    auto [jet, R] = eval_at(m, m.chart.random_point(rng));
    SubspaceBasis full;
    full.vectors = MatrixXcd::Identity(2, 2);
    Rng r2(6);
    const SubspaceAverage sa = subspace_average_vs_min(R, jet, full, {1.0, 1.0}, r2);
    CHECK(std::abs(sa.average) < 1e-13);
    CHECK(std::abs(sa.global_min) < 1e-12);
  }

  // perturbed torus: gap >= -1e-8 over random subspaces (paper regime a,b >= 0)
  {
    const ManifoldModel m = ManifoldModel::perturbed_torus(3, 0.05);
    for (int t = 0; t < 25; ++t) {
      auto [jet, R] = eval_at(m, m.chart.random_point(rng));
      const SubspaceBasis sigma2 = random_subspace(jet.g, 3, 2, rng);
      Rng r2(100 + t);
      const SubspaceAverage sa = subspace_average_vs_min(R, jet, sigma2, {1.0, 0.5}, r2);
      CHECK(sa.gap >= -1e-8);
    }
  }
}
