#ifndef CURVLAB_QUADRATURE_HPP
#define CURVLAB_QUADRATURE_HPP

#include <cstdint>
#include <vector>

#include "curvlab/errors.hpp"
#include "curvlab/geometry.hpp"
#include "curvlab/parallel.hpp"

namespace curvlab {

// Tensor-product trapezoid rule on the periodic cell [0,1)^{2n}: equally
// weighted nodes, spectrally accurate for smooth periodic integrands.
// Nodes are streamed (never materialized) and accumulated per fixed-size
// block with a pairwise block reduction, so results do not depend on the
// worker count.
class TorusQuadrature {
public:
  TorusQuadrature(int n, int per_axis) : n_(n), per_axis_(per_axis) {
    count_ = 1;
    for (int a = 0; a < 2 * n; ++a) count_ *= per_axis;
  }

  std::int64_t node_count() const { return count_; }
  double weight() const { return 1.0 / static_cast<double>(count_); }

  Point node(std::int64_t idx) const {
    Point p;
    p.z.resize(n_);
    const double h = 1.0 / per_axis_;
    for (int j = 0; j < n_; ++j) {
      const int ix = static_cast<int>(idx % per_axis_);
      idx /= per_axis_;
      const int iy = static_cast<int>(idx % per_axis_);
      idx /= per_axis_;
      p.z[j] = {ix * h, iy * h};
    }
    return p;
  }

  // Integrates `dim` scalar fields at once: fn(point, out[dim]) fills the
  // integrand values (already including any volume density).
  std::vector<double> integrate(int dim,
                                const std::function<void(const Point&, double*)>& fn) const {
    constexpr std::int64_t kBlock = 4096;
    const std::int64_t nblocks = (count_ + kBlock - 1) / kBlock;
    std::vector<double> partials(static_cast<std::size_t>(nblocks) * dim, 0.0);

    parallel_chunks(nblocks, [&](std::int64_t b0, std::int64_t b1, int) {
      std::vector<double> vals(dim);
      for (std::int64_t b = b0; b < b1; ++b) {
        double* acc = partials.data() + b * dim;
        const std::int64_t lo = b * kBlock;
        const std::int64_t hi = std::min(count_, lo + kBlock);
        for (std::int64_t i = lo; i < hi; ++i) {
          const Point p = node(i);
          fn(p, vals.data());
          for (int d = 0; d < dim; ++d) acc[d] += vals[d];
        }
      }
    });

    std::vector<double> out(dim);
    for (int d = 0; d < dim; ++d)
      out[d] = weight() * pairwise_sum(0, nblocks, [&](std::int64_t b) {
        return partials[static_cast<std::size_t>(b) * dim + d];
      });
    return out;
  }

private:
  int n_;
  int per_axis_;
  std::int64_t count_;
};

}  // namespace curvlab

#endif
