#pragma once

// Finite-difference oracle. Independent of the jet machinery except for
// reading exact lower-order derivatives at shifted points.

#include <functional>

#include "solitonlab/tensor/chart.hpp"

namespace solitonlab::tensor {

using PointFn = std::function<double(const Point&)>;

/// Step used along axis i: max(1e-4, 1e-4 |x_i|).
double fd_step(const Point& p, int axis);

/// d/dx_axis by the 4th-order central stencil with one Richardson level.
double fd_partial(const PointFn& u, const Point& p, int axis);

/// Second partial d_i d_j by nesting the first-derivative stencil
/// (no Richardson on the inner level).
double fd_second(const PointFn& u, const Point& p, int i, int j);

struct OracleReport {
  double max_rel_error = 0.0;
  int checks = 0;
};

/// Compares every exact partial of order 1..max_order of each metric
/// component against the central difference of the exact partial one order
/// lower. Relative errors are taken against max(1, |exact|).
OracleReport metric_oracle(const ChartMetric& metric, const Point& p, int max_order);
OracleReport scalar_oracle(const ScalarField& f, const Point& p, int max_order);

}  // namespace solitonlab::tensor
