#ifndef CURVLAB_RNG_HPP
#define CURVLAB_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace curvlab {

// Deterministic random stream.  All randomized searches take an explicit
// seed; substreams are derived by mixing so that parallel workers and
// repeated runs reproduce bit-identical results regardless of the standard
// library's distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ull) {}

  // Derive an independent substream, e.g. one per grid point or worker.
  Rng substream(std::uint64_t salt) const {
    Rng r(0);
    r.state_ = mix(state_ ^ (salt * 0xbf58476d1ce4e5b9ull + 0x94d049bb133111ebull));
    return r;
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Standard complex normal (real and imaginary parts N(0, 1)).
  std::complex<double> cnormal() { return {normal(), normal()}; }

  std::vector<std::complex<double>> cnormal_vector(int n) {
    std::vector<std::complex<double>> v(n);
    for (auto& x : v) x = cnormal();
    return v;
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace curvlab

#endif
