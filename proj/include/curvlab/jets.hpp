#ifndef CURVLAB_JETS_HPP
#define CURVLAB_JETS_HPP

#include <array>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace curvlab {

using cdouble = std::complex<double>;

// Truncated multivariate Taylor arithmetic ("jets") over the Wirtinger
// variables (z_1..z_n, zbar_1..zbar_n) of a chart.  A jet of order d stores
// the Taylor coefficients of a function at the expansion point for every
// monomial of total degree <= d.  Because the underlying coordinates are
// real, zbar_j is the formal conjugate of z_j and conjugation of a jet swaps
// the two variable blocks while conjugating coefficients.
//
// Variable layout: index j in [0,n) is z_j, index n+j is zbar_j.

class JetBasis {
public:
  static constexpr int kMaxVars = 16;
  using Exponents = std::array<std::uint8_t, kMaxVars>;

  // Shared, cached basis per (nvars, order). nvars must be even.
  static std::shared_ptr<const JetBasis> get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(exps_.size()); }

  const Exponents& exponents(int idx) const { return exps_[idx]; }
  int degree(int idx) const { return degree_[idx]; }

  // Monomial index of the single variable `var` (degree-1 monomial).
  int var_index(int var) const { return 1 + var; }

  // Index of the monomial with the given exponents, or -1 if absent.
  int index_of(const Exponents& e) const;

  // Index of the product monomial, or -1 if the degree overflows.
  int product_index(int a, int b) const {
    if (!prod_table_.empty()) return prod_table_[static_cast<std::size_t>(a) * exps_.size() + b];
    return product_index_slow(a, b);
  }

  // Monomial with the z-block and zbar-block exponents swapped.
  int conj_index(int idx) const { return conj_perm_[idx]; }

  // Product of exponent factorials: converts a Taylor coefficient into the
  // corresponding partial derivative.
  double deriv_factor(int idx) const { return deriv_factor_[idx]; }

private:
  JetBasis(int nvars, int order);
  int product_index_slow(int a, int b) const;
  static std::uint64_t pack(const Exponents& e, int nvars);

  int nvars_ = 0;
  int order_ = 0;
  std::vector<Exponents> exps_;
  std::vector<int> degree_;
  std::vector<int> conj_perm_;
  std::vector<double> deriv_factor_;
  std::unordered_map<std::uint64_t, int> lookup_;
  std::vector<std::int32_t> prod_table_;  // empty when too large to cache
};

class Jet {
public:
  Jet() = default;
  explicit Jet(std::shared_ptr<const JetBasis> basis)
      : basis_(std::move(basis)), c_(basis_->size(), cdouble(0.0)) {}

  static Jet constant(std::shared_ptr<const JetBasis> basis, cdouble v) {
    Jet j(std::move(basis));
    j.c_[0] = v;
    return j;
  }
  // value + delta_var
  static Jet variable(std::shared_ptr<const JetBasis> basis, int var, cdouble value) {
    Jet j(std::move(basis));
    j.c_[0] = value;
    if (j.basis_->order() >= 1) j.c_[j.basis_->var_index(var)] = 1.0;
    return j;
  }

  const std::shared_ptr<const JetBasis>& basis() const { return basis_; }
  int size() const { return static_cast<int>(c_.size()); }
  cdouble value() const { return c_[0]; }
  cdouble& operator[](int i) { return c_[i]; }
  const cdouble& operator[](int i) const { return c_[i]; }

  // Partial derivative for the monomial with the given per-variable
  // exponents, e.g. deriv({i, n+j}) = d^2/dz_i dzbar_j.
  cdouble deriv(std::initializer_list<int> vars) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(cdouble s) { c_[0] += s; return *this; }
  Jet& operator-=(cdouble s) { c_[0] -= s; return *this; }
  Jet& operator*=(cdouble s);

  friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
  friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
  friend Jet operator+(Jet a, cdouble s) { a += s; return a; }
  friend Jet operator+(cdouble s, Jet a) { a += s; return a; }
  friend Jet operator-(Jet a, cdouble s) { a -= s; return a; }
  friend Jet operator*(Jet a, cdouble s) { a *= s; return a; }
  friend Jet operator*(cdouble s, Jet a) { a *= s; return a; }
  friend Jet operator-(cdouble s, const Jet& a) {
    Jet r = a * cdouble(-1.0);
    r += s;
    return r;
  }
  friend Jet operator-(const Jet& a) { return a * cdouble(-1.0); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.basis_);
    mul_into(r, a, b);
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }
  friend Jet operator/(cdouble s, const Jet& b) { return b.reciprocal() * s; }
  friend Jet operator/(Jet a, cdouble s) { a *= 1.0 / s; return a; }

  // r = a * b (r must not alias a or b).
  static void mul_into(Jet& r, const Jet& a, const Jet& b);

  // Composition with a univariate power series around value():
  // series[k] is the coefficient of (f - f0)^k.
  Jet compose(const cdouble* series, int len) const;

  Jet reciprocal() const;
  Jet conj() const;
  Jet real_part() const { return (*this + conj()) * cdouble(0.5); }

private:
  std::shared_ptr<const JetBasis> basis_;
  std::vector<cdouble> c_;
};

Jet exp(const Jet& f);
Jet log(const Jet& f);
Jet sqrt(const Jet& f);
Jet sin(const Jet& f);
Jet cos(const Jet& f);
Jet pow(const Jet& f, int k);

}  // namespace curvlab

#endif
