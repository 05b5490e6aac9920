#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "curvlab/geometry.hpp"
#include "curvlab/jets.hpp"
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

// Evaluate a scalar chart function built from coordinate jets at order 0
// (plain value) for finite-difference probing.
cdouble value_of(const std::function<Jet(const ChartJets&)>& f, const Point& p) {
  ChartJets c(p, 1);
  return f(c).value();
}

}  // namespace

TEST_CASE("basis bookkeeping") {
  auto b = JetBasis::get(4, 4);
  CHECK(b->size() == 70);  // C(4+4,4)
  CHECK(b->degree(0) == 0);
  for (int v = 0; v < 4; ++v) CHECK(b->degree(b->var_index(v)) == 1);
  // conj swaps the z and zbar blocks
  JetBasis::Exponents e{};
  e[0] = 2;
  e[3] = 1;  // z_0^2 zbar_1
  const int i = b->index_of(e);
  REQUIRE(i >= 0);
  JetBasis::Exponents ec{};
  ec[2] = 2;
  ec[1] = 1;  // zbar_0^2 z_1
  CHECK(b->conj_index(i) == b->index_of(ec));
}

TEST_CASE("products reproduce polynomial derivatives") {
  // f = z^2 zbar + 3 z on C^1; hand derivatives.
  auto basis = JetBasis::get(2, 4);
  const cdouble z0(0.7, -0.3);
  Jet z = Jet::variable(basis, 0, z0);
  Jet zb = Jet::variable(basis, 1, std::conj(z0));
  Jet f = z * z * zb + z * cdouble(3.0);
  CHECK(std::abs(f.value() - (z0 * z0 * std::conj(z0) + 3.0 * z0)) < 1e-15);
  CHECK(std::abs(f.deriv({0}) - (2.0 * z0 * std::conj(z0) + 3.0)) < 1e-15);
  CHECK(std::abs(f.deriv({1}) - z0 * z0) < 1e-15);
  CHECK(std::abs(f.deriv({0, 0}) - 2.0 * std::conj(z0)) < 1e-15);
  CHECK(std::abs(f.deriv({0, 1}) - 2.0 * z0) < 1e-15);
  CHECK(std::abs(f.deriv({0, 0, 1}) - 2.0) < 1e-15);
  CHECK(std::abs(f.deriv({0, 0, 0})) < 1e-15);
}

TEST_CASE("elementary functions against the finite-difference oracle") {
  // A real chart function with all the elementary pieces in play.
  auto fn = [](const ChartJets& c) {
    return exp(c.x(0) * 0.3) * cos(c.y(0) * 2.0) + log(c.r2() + 1.5) +
           sqrt(c.abs2(1) + 2.0) + sin(c.x(1));
  };
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    Point p = pt({{rng.uniform(-1, 1), rng.uniform(-1, 1)},
                  {rng.uniform(-1, 1), rng.uniform(-1, 1)}});
    ChartJets c(p, 4);
    Jet f = fn(c);
    auto probe = [&](const Point& q) { return value_of(fn, q); };
    const int n = 2;
    for (int k = 0; k < n; ++k) {
      const cdouble d1 = fd_dz(probe, p, k);
      CHECK(std::abs(f.deriv({k}) - d1) < 1e-7 * (1.0 + std::abs(d1)));
      for (int l = 0; l < n; ++l) {
        const cdouble d2 = fd_dz_dzbar(probe, p, k, l);
        CHECK(std::abs(f.deriv({k, n + l}) - d2) < 1e-6 * (1.0 + std::abs(d2)));
      }
    }
  }
}

TEST_CASE("fourth order jets: mixed derivative of |z|^4") {
  // |z|^4 = z^2 zbar^2: d^4/dz^2 dzbar^2 = 4, everything above vanishes.
  auto basis = JetBasis::get(2, 4);
  const cdouble z0(0.4, 0.9);
  Jet z = Jet::variable(basis, 0, z0);
  Jet zb = Jet::variable(basis, 1, std::conj(z0));
  Jet f = z * z * zb * zb;
  CHECK(std::abs(f.deriv({0, 0, 1, 1}) - 4.0) < 1e-14);
  CHECK(std::abs(f.deriv({0, 1}) - 4.0 * z0 * std::conj(z0)) < 1e-14);
}

TEST_CASE("division and reciprocal") {
  auto basis = JetBasis::get(2, 4);
  const cdouble z0(1.1, 0.2);
  Jet z = Jet::variable(basis, 0, z0);
  Jet zb = Jet::variable(basis, 1, std::conj(z0));
  Jet r2 = z * zb;
  Jet f = (z + 2.0) / (r2 + 1.0);
  Jet check = f * (r2 + 1.0) - (z + 2.0);
  for (int i = 0; i < check.size(); ++i) CHECK(std::abs(check[i]) < 1e-13);
}

TEST_CASE("conjugation swaps variable blocks") {
  auto basis = JetBasis::get(2, 3);
  const cdouble z0(0.5, -0.8);
  Jet z = Jet::variable(basis, 0, z0);
  Jet zb = Jet::variable(basis, 1, std::conj(z0));
  Jet f = z * z * zb * cdouble(0.0, 2.0) + z * 3.0;
  Jet fc = f.conj();
  CHECK(std::abs(fc.value() - std::conj(f.value())) < 1e-15);
  CHECK(std::abs(fc.deriv({1}) - std::conj(f.deriv({0}))) < 1e-15);
  CHECK(std::abs(fc.deriv({1, 1, 0}) - std::conj(f.deriv({0, 0, 1}))) < 1e-15);
  // real part of a jet is conjugation-invariant
  Jet re = f.real_part();
  Jet rec = re.conj();
  for (int i = 0; i < re.size(); ++i) CHECK(std::abs(re[i] - rec[i]) < 1e-15);
}

TEST_CASE("pow matches repeated multiplication") {
  auto basis = JetBasis::get(2, 4);
  Jet z = Jet::variable(basis, 0, cdouble(0.3, 0.1));
  Jet a = pow(z + 1.0, 5);
  Jet b = (z + 1.0) * (z + 1.0) * (z + 1.0) * (z + 1.0) * (z + 1.0);
  for (int i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-13);
}
