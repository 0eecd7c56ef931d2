#include "solitonlab/identity/identities.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "solitonlab/tensor/finite_difference.hpp"

namespace solitonlab::identity {

using tensor::JetTensor;
using tensor::Matrix;
using tensor::Vector;

namespace {

struct Local {
  tensor::LocalGeometry geo;
  Jet f;
  Matrix g, ginv, E;
  Tensor rm, ric;  // coordinate values
  double R = 0.0, weight = 1.0;
  int n = 0;
};

Local local(const SolitonSpec& s, const Point& p, int curvature_order) {
  Local L;
  L.geo = tensor::local_geometry(*s.metric, p, curvature_order);
  if (s.potential->derivative_order() < L.geo.order + 2) {
    throw DerivativeOrderError("potential lacks the derivatives this identity needs");
  }
  L.f = s.potential->value(L.geo.x);
  L.n = L.geo.dim;
  L.g = L.geo.metric_value();
  L.ginv = L.geo.inverse_value();
  L.E = tensor::orthonormal_frame(L.g);
  L.rm = tensor::values(L.geo.riemann);
  L.ric = tensor::values(L.geo.ricci);
  L.R = L.geo.scalar.value();
  L.weight = std::exp(-L.f.value());
  return L;
}

JetTensor weighted_einstein_germ(const Local& L) {
  const Jet w = exp(-L.f);
  JetTensor out = L.geo.ricci;
  for (int i = 0; i < L.n; ++i)
    for (int j = 0; j < L.n; ++j) out(i, j) = (L.geo.ricci(i, j) - 0.5 * L.geo.scalar * L.geo.g(i, j)) * w;
  return out;
}

// g^{ia} g^{jb} S_ij S_ab as a germ
Jet norm2_germ(const JetTensor& S, const tensor::LocalGeometry& geo) {
  const int n = S.dim();
  JetTensor up(n, 2, S.at(0));
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < n; ++b) {
      Jet acc = S.at(0) * 0.0;
      for (int j = 0; j < n; ++j) acc += S(i, j) * geo.ginv(j, b);
      up(i, b) = acc;
    }
  Jet out = S.at(0) * 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Jet acc = S.at(0) * 0.0;
      for (int i = 0; i < n; ++i) acc += geo.ginv(a, i) * up(i, b);
      out += acc * S(a, b);
    }
  return out;
}

Vector gradient_values(const Jet& u, int n) {
  Vector d(n);
  for (int i = 0; i < n; ++i) d(i) = u.partial({i});
  return d;
}

double laplacian_value(const Jet& u, const tensor::LocalGeometry& geo) {
  const int n = geo.dim;
  double acc = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      double h = u.partial({k, l});
      for (int m = 0; m < n; ++m) h -= geo.christoffel(m, k, l).value() * u.partial({m});
      acc += geo.ginv(k, l).value() * h;
    }
  return acc;
}

Tensor frame_rank2(const Tensor& T, const Matrix& E) { return tensor::to_frame(T, E); }

double max_abs(const Tensor& T) {
  double m = 0.0;
  for (double v : T.data()) m = std::max(m, std::abs(v));
  return m;
}

double scaled(double diff, std::initializer_list<double> terms) {
  double sc = 1.0;
  for (double t : terms) sc = std::max(sc, std::abs(t));
  return std::abs(diff) / sc;
}

double tensor_norm(const Tensor& T, const Matrix& ginv) { return std::sqrt(std::max(0.0, tensor::norm2(T, ginv))); }

// lhs - rhs residual of two tensors, scaled by the largest of the supplied norms
double tensor_residual(const Tensor& lhs, const Tensor& rhs, const Matrix& ginv, std::initializer_list<double> norms) {
  Tensor d = lhs;
  for (std::size_t i = 0; i < d.size(); ++i) d.at(i) -= rhs.at(i);
  double sc = std::max({1.0, tensor_norm(lhs, ginv), tensor_norm(rhs, ginv)});
  for (double v : norms) sc = std::max(sc, std::abs(v));
  return tensor_norm(d, ginv) / sc;
}

Tensor raise2(const Tensor& T, const Matrix& ginv) { return tensor::raise_all(T, ginv); }

// Rm(S)_ij = R_ikjt S^{kt}
Tensor rm_contract(const Tensor& rm, const Tensor& S_up) {
  const int n = rm.dim();
  Tensor out(n, 2, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k)
        for (int t = 0; t < n; ++t) acc += rm(i, k, j, t) * S_up(k, t);
      out(i, j) = acc;
    }
  return out;
}

}  // namespace

WeightedEinstein weighted_einstein(const SolitonSpec& s, const Point& p) {
  const Local L = local(s, p, 0);
  const int n = L.n;
  WeightedEinstein we;
  we.weight = L.weight;
  const Tensor ric = frame_rank2(L.ric, L.E);
  we.frame = Tensor(n, 2, 0.0);
  double ric2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      we.frame(i, j) = (ric(i, j) - (i == j ? 0.5 * L.R : 0.0)) * L.weight;
      we.norm += we.frame(i, j) * we.frame(i, j);
      ric2 += ric(i, j) * ric(i, j);
    }
  we.norm = std::sqrt(we.norm);
  for (int i = 0; i < n; ++i) we.trace += we.frame(i, i);
  const double tr_expected = -(n - 2) / 2.0 * L.R * L.weight;
  we.trace_residual = scaled(we.trace - tr_expected, {we.trace, tr_expected});
  const double e2f = 1.0 / (L.weight * L.weight);
  const double rhs = e2f * we.norm * we.norm - (n - 4) / 4.0 * L.R * L.R;
  we.ricci_norm_residual = scaled(ric2 - rhs, {ric2, e2f * we.norm * we.norm, L.R * L.R});
  return we;
}

double q_bracket_ndim(const Tensor& rm, const Tensor& ric) {
  const int n = ric.dim();
  double R = 0.0;
  for (int i = 0; i < n; ++i) R += ric(i, i);
  Tensor T = ric;
  for (int i = 0; i < n; ++i) T(i, i) -= R / n;
  double contr = 0.0, T2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T2 += T(i, j) * T(i, j);
      for (int k = 0; k < n; ++k)
        for (int t = 0; t < n; ++t) contr += rm(i, k, j, t) * T(i, j) * T(k, t);
    }
  const double nn = n;
  return std::pow(nn - 2, 3) / (4 * nn * nn) * R * R * R - 2 * contr - (nn - 2) * (nn - 4) / (2 * nn) * R * T2;
}

double q_bracket_threedim(const Tensor& ric) {
  if (ric.dim() != 3) throw DimensionError("three-dimensional Q needs n = 3");
  double R = 0.0, ric2 = 0.0, cube = 0.0;
  for (int i = 0; i < 3; ++i) R += ric(i, i);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      ric2 += ric(i, j) * ric(i, j);
      for (int k = 0; k < 3; ++k) cube += ric(i, j) * ric(j, k) * ric(k, i);
    }
  return 4 * cube - 3.5 * R * ric2 + 0.75 * R * R * R;
}

double q_bracket_rm(const Tensor& rm, const Tensor& ric) {
  const int n = ric.dim();
  double R = 0.0;
  for (int i = 0; i < n; ++i) R += ric(i, i);
  Tensor E = ric;
  for (int i = 0; i < n; ++i) E(i, i) -= R / 2;
  double rmee = 0.0, E2 = 0.0, tr = 0.0;
  for (int i = 0; i < n; ++i) {
    tr += E(i, i);
    for (int j = 0; j < n; ++j) {
      E2 += E(i, j) * E(i, j);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) rmee += rm(i, j, k, l) * E(i, k) * E(j, l);
    }
  }
  return -2 * rmee - (n - 2) / 2.0 * R * E2 + 0.5 * R * tr * tr;
}

FrameCurvature frame_curvature(const SolitonSpec& s, const Point& p) {
  const Local L = local(s, p, 0);
  return {tensor::to_frame(L.rm, L.E), frame_rank2(L.ric, L.E), L.weight};
}

double q_term(const SolitonSpec& s, const Point& p, QVariant variant) {
  if (variant == QVariant::threedim && s.dim != 3) throw DimensionError("three-dimensional Q needs n = 3");
  const Local L = local(s, p, 0);
  const Tensor ric = frame_rank2(L.ric, L.E);
  const double b = variant == QVariant::ndim ? q_bracket_ndim(tensor::to_frame(L.rm, L.E), ric)
                                             : q_bracket_threedim(ric);
  return L.weight * L.weight * b;
}

WeitzenbockTerms weitzenbock(const SolitonSpec& s, const Point& p) {
  const Local L = local(s, p, 2);
  const int n = L.n;
  const JetTensor Eh = weighted_einstein_germ(L);
  const Jet u = norm2_germ(Eh, L.geo);
  const Vector du = gradient_values(u, n);
  const Vector df = gradient_values(L.f, n);
  WeitzenbockTerms w;
  w.half_laplacian = 0.5 * laplacian_value(u, L.geo);
  w.grad_norm2 = tensor::norm2(tensor::values(tensor::covariant_derivative(Eh, L.geo)), L.ginv);
  w.drift = 0.5 * du.dot(L.ginv * df);
  w.lambda_term = (n - 2) * s.lambda * u.value();
  const Tensor rm = tensor::to_frame(L.rm, L.E), ric = frame_rank2(L.ric, L.E);
  const double w2 = L.weight * L.weight;
  w.q_ndim = w2 * q_bracket_ndim(rm, ric);
  w.q_rm = w2 * q_bracket_rm(rm, ric);
  const double base = w.grad_norm2 - w.drift - w.lambda_term;
  w.scale = std::max({1.0, std::abs(w.half_laplacian), std::abs(w.grad_norm2), std::abs(w.drift),
                      std::abs(w.lambda_term), std::abs(w.q_ndim), std::abs(w.q_rm)});
  w.residual_q = std::abs(w.half_laplacian - base - w.q_ndim) / w.scale;
  w.residual_rm = std::abs(w.half_laplacian - base - w.q_rm) / w.scale;
  return w;
}

double weitzenbock_residual(const SolitonSpec& s, const Point& p) {
  const auto w = weitzenbock(s, p);
  return std::max(w.residual_q, w.residual_rm);
}

double weitzenbock_residual_fd(const SolitonSpec& s, const Point& p) {
  const auto w = weitzenbock(s, p);
  const Local L = local(s, p, 0);
  const int n = L.n;
  tensor::PointFn u = [&](const Point& q) {
    const Local Lq = local(s, q, 0);
    return norm2_germ(weighted_einstein_germ(Lq), Lq.geo).value();
  };
  Vector du(n);
  for (int i = 0; i < n; ++i) du(i) = tensor::fd_partial(u, p, i);
  double lap = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      double h = tensor::fd_second(u, p, k, l);
      for (int m = 0; m < n; ++m) h -= L.geo.christoffel(m, k, l).value() * du(m);
      lap += L.ginv(k, l) * h;
    }
  const Vector df = gradient_values(L.f, n);
  const double drift = 0.5 * du.dot(L.ginv * df);
  const double rhs = w.grad_norm2 - drift - w.lambda_term + w.q_ndim;
  // second differences carry rounding of order |u| |g^-1|, which dominates
  // where every term of the identity is small (|E^| constant on products)
  const double floor = std::abs(u(p)) * L.ginv.cwiseAbs().maxCoeff();
  return std::abs(0.5 * lap - rhs) / std::max(w.scale, floor);
}

bool IdentityReport::pass() const {
  return std::all_of(records.begin(), records.end(), [](const IdentityRecord& r) { return r.pass; });
}

IdentityReport soliton_identity_residuals(const SolitonSpec& s, const Point& p) {
  const Local L = local(s, p, 2);
  const int n = L.n;
  const double lam = s.lambda;
  const double tol = s.identity_tolerance();
  IdentityReport rep;
  rep.soliton = s.name;
  rep.point = p;
  auto add = [&](const std::string& name, double r) {
    rep.records.push_back({name, r, tol, std::isfinite(r) && r < tol});
  };

  const Vector df = gradient_values(L.f, n);
  const Vector gradf = L.ginv * df;
  const JetTensor Rg(n, 0, L.geo.scalar);
  const JetTensor dRic_g = tensor::covariant_derivative(L.geo.ricci, L.geo);
  const Tensor dRic = tensor::values(dRic_g);
  const Tensor ddRic = tensor::values(tensor::covariant_derivative(dRic_g, L.geo));
  const Vector dR = gradient_values(L.geo.scalar, n);
  const Tensor ric_up = raise2(L.ric, L.ginv);
  double ric2 = 0.0;
  for (std::size_t i = 0; i < L.ric.size(); ++i) ric2 += L.ric.at(i) * ric_up.at(i);

  // Delta R = <grad f, grad R> + 2 lambda R - 2 |Ric|^2
  {
    const double lap = laplacian_value(L.geo.scalar, L.geo);
    const double fr = gradf.dot(dR);
    add("laplacian_R", scaled(lap - fr - 2 * lam * L.R + 2 * ric2, {lap, fr, 2 * lam * L.R, 2 * ric2}));
  }
  // R_ij,kk = f_k R_ij,k + 2 lambda R_ij - 2 R_kt R_ikjt
  const Tensor rmric = rm_contract(L.rm, ric_up);
  {
    Tensor lhs(n, 2, 0.0), rhs(n, 2, 0.0), drift(n, 2, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double a = 0.0, b = 0.0;
        for (int k = 0; k < n; ++k) {
          b += gradf(k) * dRic(i, j, k);
          for (int l = 0; l < n; ++l) a += L.ginv(k, l) * ddRic(i, j, k, l);
        }
        lhs(i, j) = a;
        drift(i, j) = b;
        rhs(i, j) = b + 2 * lam * L.ric(i, j) - 2 * rmric(i, j);
      }
    add("ricci_laplacian", tensor_residual(lhs, rhs, L.ginv,
                                           {tensor_norm(drift, L.ginv), 2 * lam * tensor_norm(L.ric, L.ginv),
                                            2 * tensor_norm(rmric, L.ginv)}));
  }
  // R + Delta f = n lambda
  {
    double lapf = 0.0;
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        double h = L.f.partial({k, l});
        for (int m = 0; m < n; ++m) h -= L.geo.christoffel(m, k, l).value() * df(m);
        lapf += L.ginv(k, l) * h;
      }
    add("trace", scaled(L.R + lapf - n * lam, {L.R, lapf, n * lam}));
  }
  // grad R = 2 Ric(grad f)
  {
    Tensor lhs(n, 1, 0.0), rhs(n, 1, 0.0);
    for (int i = 0; i < n; ++i) {
      lhs(i) = dR(i);
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += L.ric(i, j) * gradf(j);
      rhs(i) = 2 * acc;
    }
    add("gradient_R", tensor_residual(lhs, rhs, L.ginv, {}));
  }
  // nabla_k R_ij - nabla_j R_ik = R_kjli nabla_l f in this curvature convention
  {
    Tensor lhs(n, 3, 0.0), rhs(n, 3, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          lhs(i, j, k) = dRic(i, j, k) - dRic(i, k, j);
          double acc = 0.0;
          for (int l = 0; l < n; ++l) acc += L.rm(k, j, l, i) * gradf(l);
          rhs(i, j, k) = acc;
        }
    add("ricci_commutation", tensor_residual(lhs, rhs, L.ginv, {tensor_norm(dRic, L.ginv)}));
  }
  // Delta_{grad f} R_ij = 2 lambda R_ij - 2 R_iljt R_lt, through the field-level drift Laplacian
  {
    const auto field = tensor::ricci_field(*s.metric);
    const Vector X = gradf;
    const Tensor lhs = tensor::drift_laplacian(*s.metric, *field, [&](const Point&) { return X; }, p);
    Tensor rhs(n, 2, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rhs(i, j) = 2 * lam * L.ric(i, j) - 2 * rmric(i, j);
    add("drift_laplacian_ricci",
        tensor_residual(lhs, rhs, L.ginv, {2 * lam * tensor_norm(L.ric, L.ginv), 2 * tensor_norm(rmric, L.ginv)}));
  }
  return rep;
}

double codazzi_residual_3d(const SolitonSpec& s, const Point& p) {
  if (s.dim != 3) throw DimensionError("Codazzi check is three-dimensional");
  const Local L = local(s, p, 1);
  const Tensor dE = tensor::to_frame(tensor::values(tensor::covariant_derivative(weighted_einstein_germ(L), L.geo)), L.E);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(dE(i, j, k) - dE(i, k, j)));
  return worst / std::max(1.0, max_abs(dE));
}

double reconstruction_residual_3d(const SolitonSpec& s, const Point& p) {
  if (s.dim != 3) throw DimensionError("Riemann reconstruction is three-dimensional");
  const Local L = local(s, p, 0);
  const Tensor rm = tensor::to_frame(L.rm, L.E), ric = frame_rank2(L.ric, L.E);
  auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          const double v = ric(i, k) * d(j, l) - ric(i, l) * d(j, k) + ric(j, l) * d(i, k) - ric(j, k) * d(i, l) -
                           0.5 * L.R * (d(i, k) * d(j, l) - d(i, l) * d(j, k));
          worst = std::max(worst, std::abs(v - rm(i, j, k, l)));
        }
  return worst / std::max(1.0, max_abs(rm));
}

KatoCheck kato_check(const SolitonSpec& s, const Point& p) {
  const Local L = local(s, p, 1);
  const int n = L.n;
  KatoCheck out;
  auto slack = [&](const JetTensor& S) {
    const Jet u = norm2_germ(S, L.geo);
    const double norm = std::sqrt(std::max(0.0, u.value()));
    if (norm <= 1e-8) {
      out.applicable = false;
      return 0.0;
    }
    const Vector du = gradient_values(u, n);
    const double grad_abs = std::sqrt(std::max(0.0, du.dot(L.ginv * du))) / (2 * norm);
    const double grad_S = std::sqrt(std::max(0.0, tensor::norm2(tensor::values(tensor::covariant_derivative(S, L.geo)), L.ginv)));
    return (grad_S - grad_abs) / std::max(1.0, grad_S);
  };
  out.weighted_einstein_slack = slack(weighted_einstein_germ(L));
  out.ricci_slack = slack(L.geo.ricci);
  const double gric = std::sqrt(std::max(0.0, tensor::norm2(tensor::values(tensor::covariant_derivative(L.geo.ricci, L.geo)), L.ginv)));
  const Vector dR = gradient_values(L.geo.scalar, n);
  const double gR = std::sqrt(std::max(0.0, dR.dot(L.ginv * dR)));
  out.gradient_ricci_slack = (gric - gR / std::sqrt(n)) / std::max(1.0, gric);
  return out;
}

double bianchi_residual(const SolitonSpec& s, const Point& p) {
  const auto field = tensor::ricci_field(*s.metric);
  const Tensor dRic = tensor::cov_deriv(*s.metric, *field, p);
  const Local L = local(s, p, 1);
  const int n = L.n;
  const Vector dR = gradient_values(L.geo.scalar, n);
  Tensor lhs(n, 1, 0.0), rhs(n, 1, 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) acc += L.ginv(j, k) * dRic(i, j, k);
    lhs(i) = acc;
    rhs(i) = 0.5 * dR(i);
  }
  return tensor_residual(lhs, rhs, L.ginv, {});
}

double symmetry_residual(const SolitonSpec& s, const Point& p) {
  const auto b = tensor::riemann_ricci_scalar(*s.metric, p);
  const Tensor& r = b.riemann;
  const int n = r.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          worst = std::max({worst, std::abs(r(i, j, k, l) + r(j, i, k, l)), std::abs(r(i, j, k, l) + r(i, j, l, k)),
                            std::abs(r(i, j, k, l) - r(k, l, i, j)),
                            std::abs(r(i, j, k, l) + r(i, k, l, j) + r(i, l, j, k))});
        }
  // trace consistency
  double R = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double ric = 0.0;
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) ric += b.inverse(j, l) * r(i, j, k, l);
      worst = std::max(worst, std::abs(ric - b.ricci(i, k)));
      R += b.inverse(i, k) * b.ricci(i, k);
    }
  worst = std::max(worst, std::abs(R - b.scalar));
  return worst / std::max(1.0, max_abs(r));
}

}  // namespace solitonlab::identity
