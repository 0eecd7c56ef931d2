#pragma once

#include <functional>

namespace solitonlab::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;  // sum of local Richardson error estimates
  long evaluations = 0;
};

/// Adaptive Simpson with Richardson correction. The interval is first cut
/// into `segments` pieces and every piece is refined at least `min_depth`
/// times, so narrow features are not stepped over.
Result adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-9,
                        int segments = 8, int min_depth = 3, int max_depth = 40);

}  // namespace solitonlab::quad
