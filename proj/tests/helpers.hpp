#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "solitonlab/catalog/catalog.hpp"
#include "solitonlab/tensor/chart.hpp"
#include "solitonlab/tensor/geometry.hpp"

namespace th {

using solitonlab::Jet;
using namespace solitonlab::tensor;

inline FunctionChart euclidean(int n) {
  return FunctionChart(
      n,
      [n](std::span<const Jet> x) {
        std::vector<Jet> d(static_cast<std::size_t>(n), Jet(x[0].space(), 1.0));
        return diagonal_metric(d);
      },
      [](const Point&) { return true; });
}

// dr^2 + r^2 dtheta^2
inline FunctionChart polar_plane() {
  return FunctionChart(
      2,
      [](std::span<const Jet> x) {
        std::vector<Jet> d{Jet(x[0].space(), 1.0), square(x[0])};
        return diagonal_metric(d);
      },
      [](const Point& p) { return p[0] > 0; });
}

// round unit 2-sphere in stereographic coordinates
inline FunctionChart sphere2() {
  return FunctionChart(
      2,
      [](std::span<const Jet> x) {
        const Jet c = 4.0 / square(1.0 + squared_norm(x, 0, 2));
        std::vector<Jet> d{c, c};
        return diagonal_metric(d);
      },
      [](const Point&) { return true; });
}

// scalar field wrapped as a rank-0 tensor field
class ScalarAsField final : public TensorField {
 public:
  explicit ScalarAsField(ScalarFn fn) : fn_(std::move(fn)) {}
  int rank() const override { return 0; }
  JetTensor components(std::span<const Jet> x) const override {
    JetTensor t(static_cast<int>(x.size()), 0);
    t.at(0) = fn_(x);
    return t;
  }

 private:
  ScalarFn fn_;
};

inline double max_abs(const Tensor& t) {
  double m = 0;
  for (double v : t.data()) m = std::max(m, std::abs(v));
  return m;
}

inline Point at_radius(const solitonlab::catalog::SolitonSpec& s, double r) { return s.radial->ray(r); }

}  // namespace th
