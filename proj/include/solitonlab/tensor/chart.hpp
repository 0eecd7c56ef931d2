#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "solitonlab/jet.hpp"
#include "solitonlab/tensor/tensor.hpp"

namespace solitonlab::tensor {

using JetTensor = BasicTensor<Jet>;

/// Derivative order reported by analytic (closed-form) fields.
inline constexpr int kAnalytic = std::numeric_limits<int>::max() / 2;

/// A coordinate chart carrying a Riemannian metric.
///
/// Components are evaluated on coordinate germs: the caller seeds x_i as jets
/// around a point and receives g_ij as jets, which carries every partial
/// derivative the jet order admits.
class ChartMetric {
 public:
  virtual ~ChartMetric() = default;
  virtual int dim() const = 0;
  virtual bool contains(const Point& p) const = 0;
  /// Highest order of exact partial derivatives available.
  virtual int derivative_order() const { return kAnalytic; }
  /// Row-major n*n symmetric matrix of metric component germs.
  virtual std::vector<Jet> components(std::span<const Jet> x) const = 0;
};

class ScalarField {
 public:
  virtual ~ScalarField() = default;
  virtual int derivative_order() const { return kAnalytic; }
  virtual Jet value(std::span<const Jet> x) const = 0;
};

/// Covariant tensor field given by coordinate germs. order_loss() is the
/// number of derivative orders the field consumes from its input germs
/// (2 for curvature fields built from the metric).
class TensorField {
 public:
  virtual ~TensorField() = default;
  virtual int rank() const = 0;
  virtual int order_loss() const { return 0; }
  virtual JetTensor components(std::span<const Jet> x) const = 0;
};

using MetricFn = std::function<std::vector<Jet>(std::span<const Jet>)>;
using DomainFn = std::function<bool(const Point&)>;
using ScalarFn = std::function<Jet(std::span<const Jet>)>;

/// Chart defined by closures.
class FunctionChart final : public ChartMetric {
 public:
  FunctionChart(int dim, MetricFn metric, DomainFn domain, int order = kAnalytic)
      : dim_(dim), metric_(std::move(metric)), domain_(std::move(domain)), order_(order) {}
  int dim() const override { return dim_; }
  bool contains(const Point& p) const override { return domain_(p); }
  int derivative_order() const override { return order_; }
  std::vector<Jet> components(std::span<const Jet> x) const override { return metric_(x); }

 private:
  int dim_;
  MetricFn metric_;
  DomainFn domain_;
  int order_;
};

class FunctionScalar final : public ScalarField {
 public:
  explicit FunctionScalar(ScalarFn fn, int order = kAnalytic) : fn_(std::move(fn)), order_(order) {}
  int derivative_order() const override { return order_; }
  Jet value(std::span<const Jet> x) const override { return fn_(x); }

 private:
  ScalarFn fn_;
  int order_;
};

/// Coordinate germs x_i seeded at p with the requested jet order.
std::vector<Jet> seed(const Point& p, int order);

/// Helpers for writing closed-form metrics.
std::vector<Jet> diagonal_metric(std::span<const Jet> diag);
Jet squared_norm(std::span<const Jet> x, int first, int count);

}  // namespace solitonlab::tensor
