#include "solitonlab/tensor/geometry.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace solitonlab::tensor {

std::vector<Jet> seed(const Point& p, int order) {
  const JetSpace& space = JetSpace::get(p.dim(), order);
  std::vector<Jet> x;
  x.reserve(static_cast<std::size_t>(p.dim()));
  for (int i = 0; i < p.dim(); ++i) x.push_back(Jet::variable(space, i, p[i]));
  return x;
}

std::vector<Jet> diagonal_metric(std::span<const Jet> diag) {
  const int n = static_cast<int>(diag.size());
  const Jet zero(diag[0].space(), 0.0);
  std::vector<Jet> g(static_cast<std::size_t>(n * n), zero);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i * n + i)] = diag[i];
  return g;
}

Jet squared_norm(std::span<const Jet> x, int first, int count) {
  Jet s(x[0].space(), 0.0);
  for (int i = first; i < first + count; ++i) s += x[i] * x[i];
  return s;
}

Matrix LocalGeometry::metric_value() const {
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = g(i, j).value();
  return m;
}

Matrix LocalGeometry::inverse_value() const {
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = ginv(i, j).value();
  return m;
}

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

namespace {

LocalGeometry from_germs(const ChartMetric& metric, const Point& p, std::vector<Jet> x) {
  const int n = metric.dim();
  const int K = x[0].order();
  LocalGeometry geo;
  geo.dim = n;
  geo.order = K - 2;
  geo.point = p;

  auto comps = metric.components(x);
  const Jet zero(x[0].space(), 0.0);
  geo.g = JetTensor(n, 2, zero);
  Matrix G0(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Jet& c = comps[static_cast<std::size_t>(i * n + j)];
      geo.g(i, j) = c;
      G0(i, j) = c.value();
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(G0(i, j))) throw DomainError("metric component is not finite");
    }
  }
  const double lmin = min_eigenvalue(0.5 * (G0 + G0.transpose()));
  if (!(lmin >= 1e-12)) {
    std::ostringstream os;
    os << "metric not positive definite: smallest eigenvalue " << lmin;
    throw DegenerateMetricError(os.str(), lmin);
  }

  // (G0 + D)^-1 = sum_k (-G0^-1 D)^k G0^-1, exact once k exceeds the jet order.
  const Matrix G0inv = G0.inverse();
  std::vector<Jet> B(static_cast<std::size_t>(n * n), zero);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Jet acc = zero;
      for (int k = 0; k < n; ++k) {
        Jet dkj = geo.g(k, j);
        dkj -= G0(k, j);
        acc -= G0inv(i, k) * dkj;
      }
      B[static_cast<std::size_t>(i * n + j)] = acc;
    }
  }
  std::vector<Jet> S(static_cast<std::size_t>(n * n), zero), P(static_cast<std::size_t>(n * n), zero);
  for (int i = 0; i < n; ++i) {
    S[static_cast<std::size_t>(i * n + i)] += 1.0;
    P[static_cast<std::size_t>(i * n + i)] += 1.0;
  }
  for (int power = 1; power <= K; ++power) {
    std::vector<Jet> next(static_cast<std::size_t>(n * n), zero);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Jet acc = zero;
        for (int k = 0; k < n; ++k) acc += P[static_cast<std::size_t>(i * n + k)] * B[static_cast<std::size_t>(k * n + j)];
        next[static_cast<std::size_t>(i * n + j)] = acc;
      }
    P = std::move(next);
    for (std::size_t t = 0; t < S.size(); ++t) S[t] += P[t];
  }
  geo.ginv = JetTensor(n, 2, zero);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Jet acc = zero;
      for (int k = 0; k < n; ++k) acc += S[static_cast<std::size_t>(i * n + k)] * G0inv(k, j);
      geo.ginv(i, j) = acc;
      if (i != j) geo.ginv(j, i) = acc;
    }
  }

  // Christoffel symbols of the first kind, then raised.
  std::vector<Jet> dg;  // d_l g_ij at (l * n + i) * n + j
  dg.reserve(static_cast<std::size_t>(n * n * n));
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dg.push_back(geo.g(i, j).d(l));
  auto DG = [&](int l, int i, int j) -> const Jet& { return dg[(static_cast<std::size_t>(l) * n + i) * n + j]; };
  const Jet zero1 = zero.truncated(K - 1);
  std::vector<Jet> first(static_cast<std::size_t>(n * n * n), zero1);  // Gamma_lij
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Jet v = DG(i, j, l) + DG(j, i, l) - DG(l, i, j);
        v *= 0.5;
        first[(static_cast<std::size_t>(l) * n + i) * n + j] = v;
        first[(static_cast<std::size_t>(l) * n + j) * n + i] = v;
      }
  geo.gamma.assign(static_cast<std::size_t>(n * n * n), zero1);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Jet acc = zero1;
        for (int l = 0; l < n; ++l) acc += geo.ginv(k, l) * first[(static_cast<std::size_t>(l) * n + i) * n + j];
        geo.gamma[(static_cast<std::size_t>(k) * n + i) * n + j] = acc;
        geo.gamma[(static_cast<std::size_t>(k) * n + j) * n + i] = acc;
      }

  // R^m_ijl = d_i G^m_jl - d_j G^m_il + G^m_ia G^a_jl - G^m_ja G^a_il
  const Jet zero2 = zero.truncated(K - 2);
  std::vector<Jet> dgamma;  // d_s Gamma^k_ij at ((s * n + k) * n + i) * n + j
  dgamma.reserve(static_cast<std::size_t>(n * n * n * n));
  for (int s = 0; s < n; ++s)
    for (const Jet& gm : geo.gamma) dgamma.push_back(gm.d(s));
  auto DGam = [&](int s, int k, int i, int j) -> const Jet& {
    return dgamma[((static_cast<std::size_t>(s) * n + k) * n + i) * n + j];
  };
  auto Gam = [&](int k, int i, int j) -> const Jet& { return geo.christoffel(k, i, j); };
  std::vector<Jet> up(static_cast<std::size_t>(n * n * n * n), zero2);  // R^m_ijl at ((m*n+i)*n+j)*n+l
  auto UP = [&](int m, int i, int j, int l) -> Jet& { return up[((static_cast<std::size_t>(m) * n + i) * n + j) * n + l]; };
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          Jet v = DGam(i, m, j, l) - DGam(j, m, i, l);
          for (int a = 0; a < n; ++a) {
            v += Gam(m, i, a) * Gam(a, j, l);
            v -= Gam(m, j, a) * Gam(a, i, l);
          }
          UP(m, j, i, l) = -v;
          UP(m, i, j, l) = std::move(v);
        }
  geo.riemann = JetTensor(n, 4, zero2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Jet acc = zero2;
          for (int m = 0; m < n; ++m) acc += geo.g(k, m) * UP(m, i, j, l);
          geo.riemann(j, i, k, l) = -acc;
          geo.riemann(i, j, k, l) = std::move(acc);
        }

  geo.ricci = JetTensor(n, 2, zero2);
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k) {
      Jet acc = zero2;
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) acc += geo.ginv(j, l) * geo.riemann(i, j, k, l);
      geo.ricci(i, k) = acc;
      if (i != k) geo.ricci(k, i) = acc;
    }
  geo.scalar = zero2;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) geo.scalar += geo.ginv(i, k) * geo.ricci(i, k);
  geo.x = std::move(x);
  return geo;
}

void check_point(const ChartMetric& metric, const Point& p) {
  if (p.dim() != metric.dim()) throw DimensionError("point dimension does not match the chart");
  for (double c : p.coords()) {
    if (!std::isfinite(c)) throw DomainError("point has a non-finite coordinate");
  }
  if (!metric.contains(p)) throw DomainError("point outside the chart validity domain");
}

LocalGeometry geometry_with_order(const ChartMetric& metric, const Point& p, int jet_order) {
  check_point(metric, p);
  if (jet_order > metric.derivative_order()) {
    throw DerivativeOrderError("chart provides derivatives up to order " +
                               std::to_string(metric.derivative_order()) + ", " +
                               std::to_string(jet_order) + " required");
  }
  return from_germs(metric, p, seed(p, jet_order));
}

// Applies M to index position pos: out(..a..) = sum_i M(i, a) T(..i..).
Tensor transform_index(const Tensor& T, const Matrix& M, int pos) {
  const int n = T.dim();
  Tensor out(n, T.rank(), 0.0);
  std::size_t stride = 1;
  for (int r = T.rank() - 1; r > pos; --r) stride *= static_cast<std::size_t>(n);
  for (std::size_t f = 0; f < out.size(); ++f) {
    const std::size_t a = (f / stride) % static_cast<std::size_t>(n);
    const std::size_t base = f - a * stride;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += M(i, static_cast<Eigen::Index>(a)) * T.at(base + static_cast<std::size_t>(i) * stride);
    out.at(f) = acc;
  }
  return out;
}

}  // namespace

LocalGeometry local_geometry_from(const ChartMetric& metric, std::span<const Jet> x) {
  std::vector<double> c;
  for (const Jet& xi : x) c.push_back(xi.value());
  return from_germs(metric, Point(std::move(c)), std::vector<Jet>(x.begin(), x.end()));
}

namespace {

class RicciField final : public TensorField {
 public:
  explicit RicciField(const ChartMetric& m) : m_(m) {}
  int rank() const override { return 2; }
  int order_loss() const override { return 2; }
  JetTensor components(std::span<const Jet> x) const override { return local_geometry_from(m_, x).ricci; }

 private:
  const ChartMetric& m_;
};

class ScalarCurvatureField final : public TensorField {
 public:
  explicit ScalarCurvatureField(const ChartMetric& m) : m_(m) {}
  int rank() const override { return 0; }
  int order_loss() const override { return 2; }
  JetTensor components(std::span<const Jet> x) const override {
    const auto geo = local_geometry_from(m_, x);
    return JetTensor(geo.dim, 0, geo.scalar);
  }

 private:
  const ChartMetric& m_;
};

class MetricField final : public TensorField {
 public:
  explicit MetricField(const ChartMetric& m) : m_(m) {}
  int rank() const override { return 2; }
  JetTensor components(std::span<const Jet> x) const override {
    const auto c = m_.components(x);
    JetTensor g(m_.dim(), 2, c[0]);
    for (std::size_t i = 0; i < c.size(); ++i) g.at(i) = c[i];
    return g;
  }

 private:
  const ChartMetric& m_;
};

}  // namespace

std::unique_ptr<TensorField> ricci_field(const ChartMetric& metric) { return std::make_unique<RicciField>(metric); }
std::unique_ptr<TensorField> scalar_curvature_field(const ChartMetric& metric) {
  return std::make_unique<ScalarCurvatureField>(metric);
}
std::unique_ptr<TensorField> metric_field(const ChartMetric& metric) { return std::make_unique<MetricField>(metric); }

LocalGeometry local_geometry(const ChartMetric& metric, const Point& p, int curvature_order) {
  return geometry_with_order(metric, p, curvature_order + 2);
}

Christoffel christoffel(const ChartMetric& metric, const Point& p) {
  const auto geo = local_geometry(metric, p, 0);
  Christoffel c(geo.dim);
  for (int k = 0; k < geo.dim; ++k)
    for (int i = 0; i < geo.dim; ++i)
      for (int j = 0; j < geo.dim; ++j) c(k, i, j) = geo.christoffel(k, i, j).value();
  return c;
}

Tensor values(const JetTensor& T) {
  Tensor out(T.dim(), T.rank(), 0.0);
  for (std::size_t f = 0; f < T.size(); ++f) out.at(f) = T.at(f).value();
  return out;
}

JetTensor ricci_germ(const LocalGeometry& geo) { return geo.ricci; }

CurvatureBundle riemann_ricci_scalar(const ChartMetric& metric, const Point& p) {
  const auto geo = local_geometry(metric, p, 0);
  CurvatureBundle b;
  b.christoffel = Christoffel(geo.dim);
  for (int k = 0; k < geo.dim; ++k)
    for (int i = 0; i < geo.dim; ++i)
      for (int j = 0; j < geo.dim; ++j) b.christoffel(k, i, j) = geo.christoffel(k, i, j).value();
  b.riemann = values(geo.riemann);
  b.ricci = values(geo.ricci);
  b.scalar = geo.scalar.value();
  b.metric = geo.metric_value();
  b.inverse = geo.inverse_value();
  return b;
}

double sectional(const CurvatureBundle& curv, const Vector& u, const Vector& v) {
  const Matrix& g = curv.metric;
  const double guu = u.dot(g * u), gvv = v.dot(g * v), guv = u.dot(g * v);
  const double gram = guu * gvv - guv * guv;
  if (!(gram > 1e-12 * std::max(1.0, guu * gvv))) {
    throw InvalidArgument("degenerate plane: Gram determinant " + std::to_string(gram));
  }
  const int n = curv.riemann.dim();
  double num = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) num += curv.riemann(i, j, k, l) * u(i) * v(j) * u(k) * v(l);
  return num / gram;
}

double sectional(const ChartMetric& metric, const Point& p, const Vector& u, const Vector& v) {
  return sectional(riemann_ricci_scalar(metric, p), u, v);
}

JetTensor covariant_derivative(const JetTensor& T, const LocalGeometry& geo) {
  const int n = T.dim();
  const int r = T.rank();
  const Jet& probe = T.at(0);
  const Jet zero = Jet(probe.space(), 0.0).truncated(probe.order() - 1);
  JetTensor out(n, r + 1, zero);
  std::vector<int> idx(static_cast<std::size_t>(r) + 1);
  for (std::size_t f = 0; f < out.size(); ++f) {
    std::size_t rem = f;
    for (int q = r; q >= 0; --q) {
      idx[q] = static_cast<int>(rem % static_cast<std::size_t>(n));
      rem /= static_cast<std::size_t>(n);
    }
    const int k = idx[r];
    std::size_t base = 0;
    for (int q = 0; q < r; ++q) base = base * n + idx[q];
    Jet acc = T.at(base).d(k);
    for (int a = 0; a < r; ++a) {
      std::size_t stride = 1;
      for (int q = r - 1; q > a; --q) stride *= static_cast<std::size_t>(n);
      const std::size_t without = base - static_cast<std::size_t>(idx[a]) * stride;
      for (int m = 0; m < n; ++m) {
        acc -= geo.christoffel(m, k, idx[a]) * T.at(without + static_cast<std::size_t>(m) * stride);
      }
    }
    out.at(f) = std::move(acc);
  }
  return out;
}

Tensor rough_laplacian(const JetTensor& T, const LocalGeometry& geo) {
  if (T.at(0).order() < 2) throw DerivativeOrderError("Laplacian needs germs of order 2");
  const auto ddT = values(covariant_derivative(covariant_derivative(T, geo), geo));
  const Matrix ginv = geo.inverse_value();
  const int n = T.dim();
  Tensor out(n, T.rank(), 0.0);
  const std::size_t nn = static_cast<std::size_t>(n * n);
  for (std::size_t f = 0; f < out.size(); ++f) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) acc += ginv(k, l) * ddT.at(f * nn + static_cast<std::size_t>(k * n + l));
    out.at(f) = acc;
  }
  return out;
}

Tensor drift_laplacian(const JetTensor& T, const Vector& X, const LocalGeometry& geo) {
  Tensor out = rough_laplacian(T, geo);
  const auto dT = values(covariant_derivative(T, geo));
  const int n = T.dim();
  for (std::size_t f = 0; f < out.size(); ++f) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += X(k) * dT.at(f * static_cast<std::size_t>(n) + static_cast<std::size_t>(k));
    out.at(f) -= acc;
  }
  return out;
}

Tensor cov_deriv(const ChartMetric& metric, const TensorField& field, const Point& p) {
  const int jet_order = std::max(2, field.order_loss() + 1);
  const auto geo = geometry_with_order(metric, p, jet_order);
  const auto T = field.components(geo.x);
  if (T.at(0).order() < 1) throw DerivativeOrderError("field germ too short for a covariant derivative");
  return values(covariant_derivative(T, geo));
}

HessianGrad hessian_grad(const ChartMetric& metric, const ScalarField& f, const Point& p) {
  if (f.derivative_order() < 2) throw DerivativeOrderError("Hessian needs order-2 derivatives of f");
  const auto geo = local_geometry(metric, p, 0);
  const Jet fj = f.value(geo.x);
  const int n = geo.dim;
  HessianGrad out;
  out.hessian = Tensor(n, 2, 0.0);
  Vector df(n);
  for (int i = 0; i < n; ++i) df(i) = fj.partial({i});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double h = fj.partial({i, j});
      for (int k = 0; k < n; ++k) h -= geo.christoffel(k, i, j).value() * df(k);
      out.hessian(i, j) = h;
    }
  const Matrix ginv = geo.inverse_value();
  out.gradient = ginv * df;
  out.grad_norm2 = df.dot(out.gradient);
  out.laplacian = trace(out.hessian, ginv);
  return out;
}

Tensor drift_laplacian(const ChartMetric& metric, const TensorField& field, const VectorFieldFn& X,
                       const Point& p) {
  if (field.rank() != 0 && field.rank() != 2) {
    throw InvalidArgument("drift Laplacian supports scalar and rank-2 fields");
  }
  const auto geo = geometry_with_order(metric, p, field.order_loss() + 2);
  const auto T = field.components(geo.x);
  return drift_laplacian(T, X(p), geo);
}

Matrix orthonormal_frame(const Matrix& g) {
  const int n = static_cast<int>(g.rows());
  Matrix E = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    Vector v = Vector::Unit(n, a);
    for (int b = 0; b < a; ++b) {
      const Vector eb = E.col(b);
      v -= (v.dot(g * eb)) * eb;
    }
    const double len2 = v.dot(g * v);
    if (!(len2 > 0.0)) throw DegenerateMetricError("Gram-Schmidt met a null vector", len2);
    E.col(a) = v / std::sqrt(len2);
  }
  return E;
}

Tensor to_frame(const Tensor& T, const Matrix& E) {
  Tensor out = T;
  for (int pos = 0; pos < T.rank(); ++pos) out = transform_index(out, E, pos);
  return out;
}

Tensor raise_all(const Tensor& T, const Matrix& ginv) {
  Tensor out = T;
  for (int pos = 0; pos < T.rank(); ++pos) out = transform_index(out, ginv, pos);
  return out;
}

double norm2(const Tensor& T, const Matrix& ginv) {
  const Tensor up = raise_all(T, ginv);
  double acc = 0.0;
  for (std::size_t f = 0; f < T.size(); ++f) acc += up.at(f) * T.at(f);
  return acc;
}

double trace(const Tensor& T, const Matrix& ginv) {
  double acc = 0.0;
  for (int i = 0; i < T.dim(); ++i)
    for (int j = 0; j < T.dim(); ++j) acc += ginv(i, j) * T(i, j);
  return acc;
}

}  // namespace solitonlab::tensor
