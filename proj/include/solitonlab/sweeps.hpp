#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "solitonlab/catalog/catalog.hpp"

namespace solitonlab::sweep {

template <class T>
struct Outcome {
  std::optional<T> value;
  std::string error;
  bool ok() const { return value.has_value(); }
};

enum class Mode { serial, parallel };

namespace detail {
template <class F>
using result_t = std::decay_t<std::invoke_result_t<F&, std::size_t>>;

template <class F>
Outcome<result_t<F>> guarded(F& f, std::size_t i) {
  Outcome<result_t<F>> o;
  try {
    o.value = f(i);
  } catch (const std::exception& e) {
    o.error = e.what();
  } catch (...) {
    o.error = "unknown exception";
  }
  return o;
}
}  // namespace detail

/// Reference kernel: f(0..n-1) in order.
template <class F>
std::vector<Outcome<detail::result_t<F>>> map_serial(std::size_t n, F&& f) {
  std::vector<Outcome<detail::result_t<F>>> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::guarded(f, i);
  return out;
}

/// Same contract as map_serial; items run on the OpenMP team and land in
/// their own slot, so the result does not depend on scheduling.
template <class F>
std::vector<Outcome<detail::result_t<F>>> map_omp(std::size_t n, F&& f) {
  std::vector<Outcome<detail::result_t<F>>> out(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = detail::guarded(f, static_cast<std::size_t>(i));
  return out;
}

template <class F>
std::vector<Outcome<detail::result_t<F>>> map(Mode mode, std::size_t n, F&& f) {
  return mode == Mode::serial ? map_serial(n, f) : map_omp(n, f);
}

int max_threads();

/// Per-item seed derived from a run seed (splitmix64), so items can be drawn
/// independently in any order.
std::uint64_t item_seed(std::uint64_t seed, std::uint64_t index);

/// Concrete kernels shared by the suites and the benchmark.
std::vector<Outcome<double>> residual_sweep(const catalog::SolitonSpec& s, const std::vector<tensor::Point>& pts,
                                            Mode mode);
std::vector<Outcome<double>> weitzenbock_sweep(const catalog::SolitonSpec& s, const std::vector<tensor::Point>& pts,
                                               Mode mode);

/// Worst normalized values over `count` generated systems of dimension n.
struct SystemStats {
  double min_gap = 0.0;        // p_est_gap / scale, free and consistent samples
  double min_q = 0.0;          // q_spectrum / scale
  double min_cs = 0.0;         // Cauchy-Schwarz slack / |T|^2
  double max_oracle = 0.0;     // n = 4 brute-force disagreement
  long rigidity_violations = 0;
  long count = 0;
};
SystemStats system_sweep(int n, long count, std::uint64_t seed, Mode mode);

struct TripleStats {
  double min_margin = 0.0;     // (P - 3xyz) / scale^3
  double max_asymmetry = 0.0;  // permutation spread / scale^3
  double max_line_P = 0.0;     // P / scale^3 on the equality lines
  long off_line_zeros = 0;     // P / scale^3 <= 1e-9 but farther than 1e-9 + 2 sqrt(P / scale^3 + 16 eps) from every line
  long count = 0;
};
TripleStats triple_sweep(long count, std::uint64_t seed, Mode mode);

}  // namespace solitonlab::sweep
