#ifndef CURVLAB_WJET_HPP
#define CURVLAB_WJET_HPP

#include "curvlab/geometry.hpp"

namespace curvlab {

// Truncated Wirtinger jet: value, holomorphic and antiholomorphic first
// derivatives, and the mixed second derivatives d^2/dz_a dzbar_b.  This is
// exactly the derivative data a Laplacian-type integrand needs, and the
// truncation is closed under products and quotients (pure dz dz or
// dzbar dzbar second derivatives never mix in).
struct WJet {
  cdouble v{0.0};
  VectorXcd dz, db;  // d/dz_a, d/dzbar_b
  MatrixXcd m;       // m(a,b) = d^2/dz_a dzbar_b

  WJet() = default;
  explicit WJet(int n)
      : dz(VectorXcd::Zero(n)), db(VectorXcd::Zero(n)), m(MatrixXcd::Zero(n, n)) {}

  static WJet constant(int n, cdouble c) {
    WJet w(n);
    w.v = c;
    return w;
  }

  // Metric entry g_{i jbar} as a Wirtinger jet.
  static WJet metric_entry(const MetricJet& jet, int i, int j) {
    const int n = jet.n;
    WJet w(n);
    w.v = jet.g(i, j);
    for (int k = 0; k < n; ++k) {
      w.dz(k) = jet.dg[k](i, j);
      w.db(k) = jet.dbar_g(k, i, j);
      for (int l = 0; l < n; ++l) w.m(k, l) = jet.d2(k, l)(i, j);
    }
    return w;
  }

  int n() const { return static_cast<int>(dz.size()); }

  WJet conj() const {
    WJet r(n());
    r.v = std::conj(v);
    r.dz = db.conjugate();
    r.db = dz.conjugate();
    r.m = m.conjugate().transpose();
    return r;
  }

  friend WJet operator+(const WJet& a, const WJet& b) {
    WJet r(a.n());
    r.v = a.v + b.v;
    r.dz = a.dz + b.dz;
    r.db = a.db + b.db;
    r.m = a.m + b.m;
    return r;
  }
  friend WJet operator-(const WJet& a, const WJet& b) {
    WJet r(a.n());
    r.v = a.v - b.v;
    r.dz = a.dz - b.dz;
    r.db = a.db - b.db;
    r.m = a.m - b.m;
    return r;
  }
  friend WJet operator-(const WJet& a) {
    WJet r = a;
    r.v = -r.v;
    r.dz = -r.dz;
    r.db = -r.db;
    r.m = -r.m;
    return r;
  }
  friend WJet operator*(const WJet& a, cdouble s) {
    WJet r = a;
    r.v *= s;
    r.dz *= s;
    r.db *= s;
    r.m *= s;
    return r;
  }
  friend WJet operator*(cdouble s, const WJet& a) { return a * s; }

  friend WJet operator*(const WJet& a, const WJet& b) {
    WJet r(a.n());
    r.v = a.v * b.v;
    r.dz = a.v * b.dz + b.v * a.dz;
    r.db = a.v * b.db + b.v * a.db;
    r.m = a.v * b.m + b.v * a.m + a.dz * b.db.transpose() + b.dz * a.db.transpose();
    return r;
  }

  WJet reciprocal() const {
    if (v == 0.0) throw Error("WJet::reciprocal at zero");
    WJet r(n());
    const cdouble iv = 1.0 / v;
    const cdouble iv2 = iv * iv;
    r.v = iv;
    r.dz = -iv2 * dz;
    r.db = -iv2 * db;
    r.m = -iv2 * m + 2.0 * iv2 * iv * dz * db.transpose();
    return r;
  }
  friend WJet operator/(const WJet& a, const WJet& b) { return a * b.reciprocal(); }
};

}  // namespace curvlab

#endif
