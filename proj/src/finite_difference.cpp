#include "solitonlab/tensor/finite_difference.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace solitonlab::tensor {

namespace {

double stencil(const PointFn& u, const Point& p, int axis, double h) {
  Point q = p;
  auto at = [&](double s) {
    q[axis] = p[axis] + s;
    return u(q);
  };
  return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
}

// Derivative checks for one family of germs: `germ(q, order)` returns the
// component germs at q carrying `order` derivatives.
using GermFn = std::function<std::vector<Jet>(const Point&, int)>;

OracleReport oracle(const GermFn& germ, const Point& p, int max_order) {
  OracleReport rep;
  const int n = p.dim();
  const auto exact = germ(p, max_order);
  const JetSpace& full = exact[0].space();
  const JetSpace& lower = JetSpace::get(n, max_order - 1);
  for (int axis = 0; axis < n; ++axis) {
    const double h = fd_step(p, axis);
    // germs at the eight shifted points, reused for every multi-index
    std::vector<std::vector<Jet>> shifted;
    const double offs[8] = {2 * h, h, -h, -2 * h, h, h / 2, -h / 2, -h};
    for (double o : offs) {
      Point q = p;
      q[axis] += o;
      shifted.push_back(germ(q, max_order - 1));
    }
    for (std::size_t c = 0; c < exact.size(); ++c) {
      for (std::size_t idx = 1; idx < full.size(); ++idx) {
        const auto alpha = full.exponent(idx);
        if (alpha[axis] == 0) continue;
        std::vector<int> beta(alpha.begin(), alpha.end());
        --beta[axis];
        const std::size_t lidx = lower.index(beta);
        auto val = [&](int k) { return shifted[k][c].coefficient(lidx) * lower.factorial(lidx); };
        const double d1 = (-val(0) + 8 * val(1) - 8 * val(2) + val(3)) / (12 * h);
        const double d2 = (-val(4) + 8 * val(5) - 8 * val(6) + val(7)) / (6 * h);
        const double fd = (16 * d2 - d1) / 15;
        const double ex = exact[c].coefficient(idx) * full.factorial(idx);
        rep.max_rel_error = std::max(rep.max_rel_error, std::abs(ex - fd) / std::max(1.0, std::abs(ex)));
        ++rep.checks;
      }
    }
  }
  return rep;
}

}  // namespace

double fd_step(const Point& p, int axis) { return std::max(1e-4, 1e-4 * std::abs(p[axis])); }

double fd_partial(const PointFn& u, const Point& p, int axis) {
  const double h = fd_step(p, axis);
  const double d1 = stencil(u, p, axis, h);
  const double d2 = stencil(u, p, axis, h / 2);
  return (16 * d2 - d1) / 15;
}

double fd_second(const PointFn& u, const Point& p, int i, int j) {
  const double h = fd_step(p, i);
  PointFn inner = [&](const Point& q) { return stencil(u, q, j, fd_step(q, j)); };
  return stencil(inner, p, i, h);
}

OracleReport metric_oracle(const ChartMetric& metric, const Point& p, int max_order) {
  return oracle([&](const Point& q, int order) { return metric.components(seed(q, order)); }, p, max_order);
}

OracleReport scalar_oracle(const ScalarField& f, const Point& p, int max_order) {
  return oracle([&](const Point& q, int order) { return std::vector<Jet>{f.value(seed(q, order))}; }, p,
                max_order);
}

}  // namespace solitonlab::tensor
