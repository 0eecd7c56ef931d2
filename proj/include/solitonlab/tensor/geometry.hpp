#pragma once

// Chart-based curvature calculus.
//
// Conventions:
//   Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij)
//   R(X,Y)Z   = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
//   R_ijkl    = g(R(d_i, d_j) d_l, d_k), so R_ijij is the sectional curvature
//               of an orthonormal pair (positive on the round sphere)
//   R_ik      = g^jl R_ijkl,  R = g^ik R_ik
// Covariant derivatives append the derivative index last:
//   (nabla T)_{i1..ir k} = nabla_k T_{i1..ir}.

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

#include "solitonlab/tensor/chart.hpp"

namespace solitonlab::tensor {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Germs of the metric and its curvature at one point. `order` is the number
/// of derivatives carried by the curvature germs (Riemann, Ricci, scalar).
struct LocalGeometry {
  int dim = 0;
  int order = 0;
  Point point;
  std::vector<Jet> x;
  JetTensor g;
  JetTensor ginv;
  std::vector<Jet> gamma;  // Gamma^k_ij at (k * n + i) * n + j
  JetTensor riemann;
  JetTensor ricci;
  Jet scalar;

  const Jet& christoffel(int k, int i, int j) const {
    return gamma[(static_cast<std::size_t>(k) * dim + i) * dim + j];
  }
  Matrix metric_value() const;
  Matrix inverse_value() const;
};

/// Checks the domain, positive definiteness and derivative budget, then
/// computes all germs. curvature_order is how many derivatives of curvature
/// the caller needs.
LocalGeometry local_geometry(const ChartMetric& metric, const Point& p, int curvature_order);

/// Same, from already seeded coordinate germs (no domain checks).
LocalGeometry local_geometry_from(const ChartMetric& metric, std::span<const Jet> x);

/// Curvature fields of a metric, usable with cov_deriv and drift_laplacian.
/// The metric must outlive the field.
std::unique_ptr<TensorField> ricci_field(const ChartMetric& metric);
std::unique_ptr<TensorField> scalar_curvature_field(const ChartMetric& metric);
std::unique_ptr<TensorField> metric_field(const ChartMetric& metric);

/// Christoffel symbols Gamma^k_ij at a point.
class Christoffel {
 public:
  explicit Christoffel(int dim) : dim_(dim), v_(static_cast<std::size_t>(dim * dim * dim), 0.0) {}
  int dim() const { return dim_; }
  double operator()(int k, int i, int j) const { return v_[(static_cast<std::size_t>(k) * dim_ + i) * dim_ + j]; }
  double& operator()(int k, int i, int j) { return v_[(static_cast<std::size_t>(k) * dim_ + i) * dim_ + j]; }

 private:
  int dim_;
  std::vector<double> v_;
};

struct CurvatureBundle {
  Christoffel christoffel{0};
  Tensor riemann;  // R_ijkl
  Tensor ricci;    // R_ij
  double scalar = 0.0;
  Matrix metric;
  Matrix inverse;
};

Christoffel christoffel(const ChartMetric& metric, const Point& p);
CurvatureBundle riemann_ricci_scalar(const ChartMetric& metric, const Point& p);

/// Sectional curvature of span{u, v}.
double sectional(const ChartMetric& metric, const Point& p, const Vector& u, const Vector& v);
double sectional(const CurvatureBundle& curv, const Vector& u, const Vector& v);

/// Covariant derivative of a covariant tensor field (rank <= 2 in practice).
Tensor cov_deriv(const ChartMetric& metric, const TensorField& field, const Point& p);

struct HessianGrad {
  Tensor hessian;    // (Hess f)_ij
  Vector gradient;   // (grad f)^i
  double grad_norm2 = 0.0;
  double laplacian = 0.0;
};
HessianGrad hessian_grad(const ChartMetric& metric, const ScalarField& f, const Point& p);

using VectorFieldFn = std::function<Vector(const Point&)>;

/// Delta_X T = Delta T - nabla_X T for scalar (rank 0) or rank-2 fields.
Tensor drift_laplacian(const ChartMetric& metric, const TensorField& field, const VectorFieldFn& X,
                       const Point& p);

// ---- germ-level building blocks ------------------------------------------

/// nabla T with the derivative index appended; one order lower than T.
JetTensor covariant_derivative(const JetTensor& T, const LocalGeometry& geo);
/// g^kl (nabla nabla T)_{.. k l}; needs germs of order >= 2.
Tensor rough_laplacian(const JetTensor& T, const LocalGeometry& geo);
/// Delta u - <X, grad u> ... applied to a covariant germ, X given in coordinates.
Tensor drift_laplacian(const JetTensor& T, const Vector& X, const LocalGeometry& geo);

Tensor values(const JetTensor& T);
JetTensor ricci_germ(const LocalGeometry& geo);

// ---- algebra on values ---------------------------------------------------

/// Orthonormal frame by Gram-Schmidt on the coordinate vectors in index order.
/// Column a holds the coordinate components of e_a.
Matrix orthonormal_frame(const Matrix& g);
/// Components of a covariant tensor in the frame E.
Tensor to_frame(const Tensor& T, const Matrix& E);
/// Raise every index with the inverse metric.
Tensor raise_all(const Tensor& T, const Matrix& ginv);
/// Metric norm squared |T|^2 = g^{i1 j1} ... T_{i..} T_{j..}.
double norm2(const Tensor& T, const Matrix& ginv);
/// g^ij T_ij for rank 2.
double trace(const Tensor& T, const Matrix& ginv);
/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Matrix& m);

}  // namespace solitonlab::tensor
