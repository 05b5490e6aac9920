#include "curvlab/jets.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace curvlab {

namespace {

void enumerate_exponents(int nvars, int order, int var, int remaining,
                         JetBasis::Exponents& cur, int target_degree,
                         std::vector<JetBasis::Exponents>& out) {
  if (var == nvars) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[var] = static_cast<std::uint8_t>(e);
    enumerate_exponents(nvars, order, var + 1, remaining - e, cur, target_degree, out);
  }
  cur[var] = 0;
}

}  // namespace

JetBasis::JetBasis(int nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars <= 0 || nvars > kMaxVars || nvars % 2 != 0)
    throw std::invalid_argument("JetBasis: nvars must be even and in [2,16]");
  if (order < 1 || order > 8) throw std::invalid_argument("JetBasis: order out of range");

  // Graded order: all monomials of degree 0, then 1, ...  The enumeration
  // within degree 1 yields variable 0 first, so var_index(v) == 1 + v.
  for (int d = 0; d <= order; ++d) {
    Exponents cur{};
    enumerate_exponents(nvars, order, 0, d, cur, d, exps_);
  }

  degree_.resize(exps_.size());
  deriv_factor_.resize(exps_.size());
  lookup_.reserve(exps_.size() * 2);
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    int deg = 0;
    double fact = 1.0;
    for (int v = 0; v < nvars_; ++v) {
      deg += exps_[i][v];
      for (int k = 2; k <= exps_[i][v]; ++k) fact *= k;
    }
    degree_[i] = deg;
    deriv_factor_[i] = fact;
    lookup_.emplace(pack(exps_[i], nvars_), static_cast<int>(i));
  }

  conj_perm_.resize(exps_.size());
  const int half = nvars_ / 2;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    Exponents sw{};
    for (int v = 0; v < half; ++v) {
      sw[v] = exps_[i][half + v];
      sw[half + v] = exps_[i][v];
    }
    conj_perm_[i] = index_of(sw);
  }

  // Dense product table when affordable; otherwise products are resolved by
  // exponent addition and hash lookup.
  if (exps_.size() <= 1400) {
    const std::size_t nsz = exps_.size();
    prod_table_.assign(nsz * nsz, -1);
    for (std::size_t a = 0; a < nsz; ++a) {
      for (std::size_t b = 0; b < nsz; ++b) {
        if (degree_[a] + degree_[b] > order_) continue;
        Exponents e{};
        for (int v = 0; v < nvars_; ++v)
          e[v] = static_cast<std::uint8_t>(exps_[a][v] + exps_[b][v]);
        prod_table_[a * nsz + b] = index_of(e);
      }
    }
  }
}

std::uint64_t JetBasis::pack(const Exponents& e, int nvars) {
  std::uint64_t key = 0;
  for (int v = 0; v < nvars; ++v) key |= static_cast<std::uint64_t>(e[v] & 0xF) << (4 * v);
  return key;
}

int JetBasis::index_of(const Exponents& e) const {
  auto it = lookup_.find(pack(e, nvars_));
  return it == lookup_.end() ? -1 : it->second;
}

int JetBasis::product_index_slow(int a, int b) const {
  if (degree_[a] + degree_[b] > order_) return -1;
  Exponents e{};
  for (int v = 0; v < nvars_; ++v)
    e[v] = static_cast<std::uint8_t>(exps_[a][v] + exps_[b][v]);
  return index_of(e);
}

std::shared_ptr<const JetBasis> JetBasis::get(int nvars, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(nvars, order);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto basis = std::shared_ptr<const JetBasis>(new JetBasis(nvars, order));
  cache.emplace(key, basis);
  return basis;
}

cdouble Jet::deriv(std::initializer_list<int> vars) const {
  JetBasis::Exponents e{};
  for (int v : vars) e[v]++;
  int idx = basis_->index_of(e);
  if (idx < 0) throw std::out_of_range("Jet::deriv: order too high for this jet");
  return c_[idx] * basis_->deriv_factor(idx);
}

Jet& Jet::operator+=(const Jet& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(cdouble s) {
  for (auto& x : c_) x *= s;
  return *this;
}

void Jet::mul_into(Jet& r, const Jet& a, const Jet& b) {
  const JetBasis& basis = *a.basis_;
  std::fill(r.c_.begin(), r.c_.end(), cdouble(0.0));
  const int n = basis.size();
  const int order = basis.order();
  for (int ia = 0; ia < n; ++ia) {
    const cdouble ca = a.c_[ia];
    if (ca == 0.0) continue;
    const int rem = order - basis.degree(ia);
    for (int ib = 0; ib < n; ++ib) {
      if (basis.degree(ib) > rem) continue;
      const cdouble cb = b.c_[ib];
      if (cb == 0.0) continue;
      r.c_[basis.product_index(ia, ib)] += ca * cb;
    }
  }
}

Jet Jet::compose(const cdouble* series, int len) const {
  Jet w = *this;
  w.c_[0] = 0.0;
  Jet r = Jet::constant(basis_, len > 0 ? series[len - 1] : 0.0);
  Jet tmp(basis_);
  for (int k = len - 2; k >= 0; --k) {
    mul_into(tmp, r, w);
    tmp.c_[0] += series[k];
    std::swap(r, tmp);
  }
  return r;
}

Jet Jet::reciprocal() const {
  const cdouble v = c_[0];
  if (v == 0.0) throw std::domain_error("Jet::reciprocal at zero");
  const int d = basis_->order();
  std::vector<cdouble> s(d + 1);
  cdouble p = 1.0 / v;
  for (int k = 0; k <= d; ++k) {
    s[k] = (k % 2 == 0 ? p : -p);
    p /= v;
  }
  return compose(s.data(), d + 1);
}

Jet Jet::conj() const {
  Jet r(basis_);
  for (int i = 0; i < size(); ++i) r[basis_->conj_index(i)] = std::conj(c_[i]);
  return r;
}

Jet exp(const Jet& f) {
  const int d = f.basis()->order();
  std::vector<cdouble> s(d + 1);
  cdouble e = std::exp(f.value());
  double fact = 1.0;
  for (int k = 0; k <= d; ++k) {
    if (k > 0) fact *= k;
    s[k] = e / fact;
  }
  return f.compose(s.data(), d + 1);
}

Jet log(const Jet& f) {
  const cdouble v = f.value();
  if (v == 0.0) throw std::domain_error("log of jet at zero");
  const int d = f.basis()->order();
  std::vector<cdouble> s(d + 1);
  s[0] = std::log(v);
  cdouble p = 1.0 / v;
  for (int k = 1; k <= d; ++k) {
    s[k] = (k % 2 == 1 ? p : -p) / static_cast<double>(k);
    p /= v;
  }
  return f.compose(s.data(), d + 1);
}

Jet sqrt(const Jet& f) {
  const cdouble v = f.value();
  const int d = f.basis()->order();
  std::vector<cdouble> s(d + 1);
  s[0] = std::sqrt(v);
  // s[k] = binom(1/2, k) v^{1/2 - k}
  double binom = 1.0;
  for (int k = 1; k <= d; ++k) {
    binom *= (0.5 - (k - 1)) / k;
    s[k] = binom * std::pow(v, 0.5 - k);
  }
  return f.compose(s.data(), d + 1);
}

Jet sin(const Jet& f) {
  const int d = f.basis()->order();
  std::vector<cdouble> s(d + 1);
  const cdouble sv = std::sin(f.value());
  const cdouble cv = std::cos(f.value());
  double fact = 1.0;
  for (int k = 0; k <= d; ++k) {
    if (k > 0) fact *= k;
    const cdouble cyc[4] = {sv, cv, -sv, -cv};
    s[k] = cyc[k % 4] / fact;
  }
  return f.compose(s.data(), d + 1);
}

Jet cos(const Jet& f) {
  const int d = f.basis()->order();
  std::vector<cdouble> s(d + 1);
  const cdouble sv = std::sin(f.value());
  const cdouble cv = std::cos(f.value());
  double fact = 1.0;
  for (int k = 0; k <= d; ++k) {
    if (k > 0) fact *= k;
    const cdouble cyc[4] = {cv, -sv, -cv, sv};
    s[k] = cyc[k % 4] / fact;
  }
  return f.compose(s.data(), d + 1);
}

Jet pow(const Jet& f, int k) {
  if (k < 0) return pow(f.reciprocal(), -k);
  Jet r = Jet::constant(f.basis(), 1.0);
  Jet base = f;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

}  // namespace curvlab
