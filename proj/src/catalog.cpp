#include "solitonlab/catalog/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "solitonlab/quadrature.hpp"

namespace solitonlab::catalog {

using tensor::FunctionChart;
using tensor::FunctionScalar;
using tensor::Matrix;
using tensor::Vector;

namespace {

constexpr double kPi = std::numbers::pi;

// Polar chart (r, theta_1, ..., theta_{n-1}) over a warped profile.
class ProfileChart final : public tensor::ChartMetric {
 public:
  ProfileChart(std::shared_ptr<const rotsym::WarpedProfile> p, int flat) : p_(std::move(p)), flat_(flat) {}
  int dim() const override { return p_->dim() + flat_; }
  bool contains(const Point& q) const override {
    if (q[0] < p_->r_min() || q[0] > p_->r_max()) return false;
    for (int i = 1; i + 1 < p_->dim(); ++i) {
      if (!(q[i] > 0.0 && q[i] < kPi)) return false;
    }
    return true;
  }
  int derivative_order() const override { return p_->config().taylor_order; }
  std::vector<Jet> components(std::span<const Jet> x) const override {
    const int n = p_->dim();
    std::vector<double> wc, fc;
    p_->series(x[0].value(), x[0].order(), wc, fc);
    const Jet w = compose(x[0], wc);
    std::vector<Jet> diag;
    diag.reserve(static_cast<std::size_t>(n + flat_));
    diag.emplace_back(x[0].space(), 1.0);
    Jet g = w * w;
    for (int i = 1; i < n; ++i) {
      diag.push_back(g);
      if (i + 1 < n) g = g * square(sin(x[i]));
    }
    for (int i = 0; i < flat_; ++i) diag.emplace_back(x[0].space(), 1.0);
    return tensor::diagonal_metric(diag);
  }

 private:
  std::shared_ptr<const rotsym::WarpedProfile> p_;
  int flat_;
};

class ProfilePotential final : public tensor::ScalarField {
 public:
  explicit ProfilePotential(std::shared_ptr<const rotsym::WarpedProfile> p) : p_(std::move(p)) {}
  int derivative_order() const override { return p_->config().taylor_order; }
  Jet value(std::span<const Jet> x) const override {
    std::vector<double> wc, fc;
    p_->series(x[0].value(), x[0].order(), wc, fc);
    return compose(x[0], fc);
  }

 private:
  std::shared_ptr<const rotsym::WarpedProfile> p_;
};

bool always(const Point&) { return true; }

Jet cigar_factor(std::span<const Jet> x) { return 1.0 / (1.0 + tensor::squared_norm(x, 0, 2)); }

double symmetric(std::mt19937_64& rng, double a) { return a * (2 * uniform01(rng) - 1); }

// Chart point of the cigar at geodesic radius s and angle t.
Point cigar_point(double s, double t, int extra) {
  std::vector<double> c(static_cast<std::size_t>(2 + extra), 0.0);
  c[0] = std::sinh(s) * std::cos(t);
  c[1] = std::sinh(s) * std::sin(t);
  return Point(std::move(c));
}

void check_dim(int n, int lo, const char* what) {
  if (n < lo) throw DimensionError(std::string(what) + " needs n >= " + std::to_string(lo));
}

}  // namespace

std::string to_string(Kind k) {
  switch (k) {
    case Kind::expanding: return "expanding";
    case Kind::steady: return "steady";
    case Kind::shrinking: return "shrinking";
    case Kind::einstein: return "einstein";
  }
  return "?";
}

std::string to_string(Tier t) { return t == Tier::closed_form ? "closed-form" : "profile"; }

Kind kind_for(double lambda, bool constant_potential) {
  if (constant_potential) return Kind::einstein;
  if (lambda < 0) return Kind::expanding;
  if (lambda > 0) return Kind::shrinking;
  return Kind::steady;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

SolitonSpec gaussian(int n, double lambda) {
  check_dim(n, 2, "gaussian");
  SolitonSpec s;
  s.name = "gaussian_" + std::to_string(n);
  s.dim = n;
  s.lambda = lambda;
  s.kind = kind_for(lambda, lambda == 0.0);
  s.flags = {true, true, true};
  s.origin = Point(std::vector<double>(static_cast<std::size_t>(n), 0.0));
  s.metric = std::make_shared<FunctionChart>(
      n,
      [n](std::span<const Jet> x) {
        std::vector<Jet> d(static_cast<std::size_t>(n), Jet(x[0].space(), 1.0));
        return tensor::diagonal_metric(d);
      },
      always);
  s.potential = std::make_shared<FunctionScalar>(
      [n, lambda](std::span<const Jet> x) { return 0.5 * lambda * tensor::squared_norm(x, 0, n); });
  s.radial = RadialModel{n, 0, 1e6, [](double r) { return r; },
                         [n](double r) {
                           std::vector<double> c(static_cast<std::size_t>(n), 0.0);
                           c[0] = r;
                           return Point(std::move(c));
                         }};
  s.sample_lo = 0.0;
  s.sample_hi = 2.0 * std::sqrt(n);
  s.sampler = [n](std::mt19937_64& rng) {
    std::vector<double> c(static_cast<std::size_t>(n));
    for (auto& v : c) v = symmetric(rng, 2.0);
    return Point(std::move(c));
  };
  return s;
}

namespace {

SolitonSpec cigar_like(int n, const std::string& name) {
  SolitonSpec s;
  s.name = name;
  s.dim = n;
  s.lambda = 0.0;
  s.kind = Kind::steady;
  s.flags = {true, true, false};
  s.normalization = 4.0;
  s.origin = Point(std::vector<double>(static_cast<std::size_t>(n), 0.0));
  s.metric = std::make_shared<FunctionChart>(
      n,
      [n](std::span<const Jet> x) {
        const Jet c = cigar_factor(x);
        std::vector<Jet> d(static_cast<std::size_t>(n), Jet(x[0].space(), 1.0));
        d[0] = c;
        d[1] = c;
        return tensor::diagonal_metric(d);
      },
      always);
  s.potential = std::make_shared<FunctionScalar>(
      [](std::span<const Jet> x) { return -log(1.0 + tensor::squared_norm(x, 0, 2)); });
  s.radial = RadialModel{2, n - 2, 300.0, [](double r) { return std::tanh(r); },
                         [n](double r) { return cigar_point(r, 0.0, n - 2); }};
  s.sample_lo = 0.0;
  s.sample_hi = 6.0;
  s.sampler = [n](std::mt19937_64& rng) {
    const double r = 6.0 * uniform01(rng), t = 2 * kPi * uniform01(rng);
    Point p = cigar_point(r, t, n - 2);
    for (int i = 2; i < n; ++i) p[i] = symmetric(rng, 3.0);
    return p;
  };
  return s;
}

}  // namespace

SolitonSpec cigar() { return cigar_like(2, "cigar"); }

SolitonSpec cigar_cylinder(int n) {
  check_dim(n, 3, "cigar_cylinder");
  return cigar_like(n, "cigar_cylinder_" + std::to_string(n));
}

SolitonSpec sphere_shrinker(int n) {
  check_dim(n, 2, "sphere_shrinker");
  SolitonSpec s;
  s.name = "sphere_" + std::to_string(n);
  s.dim = n;
  s.lambda = n - 1.0;  // R / n on the unit sphere
  s.kind = Kind::einstein;
  s.flags = {true, true, false};
  s.origin = Point(std::vector<double>(static_cast<std::size_t>(n), 0.0));
  s.metric = std::make_shared<FunctionChart>(
      n,
      [n](std::span<const Jet> x) {
        const Jet c = 4.0 / square(1.0 + tensor::squared_norm(x, 0, n));
        std::vector<Jet> d(static_cast<std::size_t>(n), c);
        return tensor::diagonal_metric(d);
      },
      always);
  s.potential = std::make_shared<FunctionScalar>([](std::span<const Jet> x) { return Jet(x[0].space(), 0.0); });
  // stereographic radius rho sits at geodesic distance 2 atan(rho)
  s.radial = RadialModel{n, 0, kPi, [](double r) { return std::sin(r); },
                         [n](double r) {
                           std::vector<double> c(static_cast<std::size_t>(n), 0.0);
                           c[0] = std::tan(r / 2);
                           return Point(std::move(c));
                         }};
  s.sample_lo = 0.0;
  s.sample_hi = 2 * std::atan(1.5 * std::sqrt(n));
  s.sampler = [n](std::mt19937_64& rng) {
    std::vector<double> c(static_cast<std::size_t>(n));
    for (auto& v : c) v = symmetric(rng, 1.5);
    return Point(std::move(c));
  };
  return s;
}

SolitonSpec from_profile(std::shared_ptr<const rotsym::WarpedProfile> profile, std::string name, int flat_dim) {
  if (!profile) throw InvalidArgument("null profile");
  const double e = profile->config().series_start;
  if (profile->radii().size() < 2 || profile->r_max() < 10 * e) {
    throw RangeError("insufficient range: profile ends at r = " + std::to_string(profile->r_max()));
  }
  const int m = profile->dim();
  const int n = m + flat_dim;
  SolitonSpec s;
  s.name = std::move(name);
  s.dim = n;
  s.lambda = profile->lambda();
  s.kind = kind_for(s.lambda, false);
  s.tier = Tier::profile;
  s.normalization = profile->normalization();
  s.flags = {true, true, profile->normalization() == 0.0};
  s.profile = profile;
  s.metric = std::make_shared<ProfileChart>(profile, flat_dim);
  s.potential = std::make_shared<ProfilePotential>(profile);
  auto ray = [m, n](double r) {
    std::vector<double> c(static_cast<std::size_t>(n), 0.0);
    for (int i = 1; i + 1 < m; ++i) c[i] = kPi / 2;
    c[0] = r;
    return Point(std::move(c));
  };
  s.origin = ray(profile->r_min());
  s.radial = RadialModel{m, flat_dim, profile->r_max(), [profile](double r) { return profile->state(r).w; }, ray};
  s.sample_lo = std::max(0.05, profile->r_min());
  s.sample_hi = std::min(20.0, profile->r_max());
  if (s.lambda < 0) s.sample_hi = std::min(10.0, s.sample_hi);  // e^{-f} grows like e^{r^2/4}
  const double lo = s.sample_lo, hi = s.sample_hi;
  s.sampler = [m, n, lo, hi](std::mt19937_64& rng) {
    std::vector<double> c(static_cast<std::size_t>(n));
    c[0] = lo + (hi - lo) * uniform01(rng);
    for (int i = 1; i < m; ++i) c[i] = (i + 1 < m) ? 0.3 + (kPi - 0.6) * uniform01(rng) : symmetric(rng, kPi);
    for (int i = m; i < n; ++i) c[i] = symmetric(rng, 3.0);
    return Point(std::move(c));
  };
  return s;
}

std::shared_ptr<const rotsym::WarpedProfile> cigar_polar_profile() {
  static const auto p = std::make_shared<const rotsym::WarpedProfile>(rotsym::cigar_profile(300.0));
  return p;
}

SolitonSpec polar_view(const SolitonSpec& s) {
  if (s.tier == Tier::profile) return s;
  if (!s.radial || s.kind == Kind::einstein) throw InvalidArgument(s.name + ": no polar view (not a radial soliton)");
  std::shared_ptr<const rotsym::WarpedProfile> p;
  if (s.radial->rot_dim == 2 && s.normalization == 4.0) {
    p = cigar_polar_profile();
  } else if (s.flags.flat) {
    rotsym::OdeConfig cfg;
    cfg.r_max = 400.0;
    p = std::make_shared<const rotsym::WarpedProfile>(rotsym::integrate_profile(s.dim, s.lambda, 0.0, cfg));
  } else {
    throw InvalidArgument(s.name + ": no polar view");
  }
  SolitonSpec out = from_profile(p, s.name, s.radial->flat_dim);
  out.tier = s.tier;
  out.flags = s.flags;
  return out;
}

SolitonSpec perturbed_control() {
  SolitonSpec s = cigar_like(2, "perturbed_control");
  s.metric = std::make_shared<FunctionChart>(
      2,
      [](std::span<const Jet> x) {
        const Jet r2 = tensor::squared_norm(x, 0, 2);
        const Jet c = (1.0 + 0.01 * r2) / (1.0 + r2);
        std::vector<Jet> d{c, c};
        return tensor::diagonal_metric(d);
      },
      always);
  s.flags = {};
  s.normalization = 0.0;
  s.radial.reset();
  return s;
}

std::shared_ptr<const rotsym::WarpedProfile> bryant_profile(bool steady) {
  // -w''/w decays like r^-4 and is recovered from the state by cancelling
  // O(1) terms, so the state needs more than the default 1e-10 far out.
  // Steps are capped by 0.3 r anyway; the tighter tolerance is free.
  static std::once_flag once_s, once_e;
  static std::shared_ptr<const rotsym::WarpedProfile> ps, pe;
  if (steady) {
    std::call_once(once_s, [] {
      rotsym::OdeConfig cfg;
      cfg.r_max = 1000.0;
      cfg.rel_tol = 1e-13;
      cfg.abs_tol = 1e-15;
      ps = std::make_shared<rotsym::WarpedProfile>(rotsym::integrate_profile(3, 0.0, 1.0, cfg));
    });
    return ps;
  }
  std::call_once(once_e, [] {
    rotsym::OdeConfig cfg;
    cfg.r_max = 300.0;
    cfg.rel_tol = 1e-13;
    cfg.abs_tol = 1e-15;
    pe = std::make_shared<rotsym::WarpedProfile>(rotsym::integrate_profile(3, -0.5, 1.0, cfg));
  });
  return pe;
}

SolitonSpec bryant_steady_3() { return from_profile(bryant_profile(true), "bryant_steady_3"); }
SolitonSpec bryant_expanding_3() { return from_profile(bryant_profile(false), "bryant_expanding_3"); }

std::vector<std::string> catalog_names() {
  return {"gaussian_3",       "cigar",    "cigar_cylinder_3", "cigar_cylinder_4",   "cigar_cylinder_5",
          "sphere_2",         "sphere_3", "bryant_steady_3",  "bryant_expanding_3", "perturbed_control"};
}

SolitonSpec make_soliton(const std::string& name) {
  auto suffix = [&](const std::string& prefix) -> std::optional<int> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    const std::string rest = name.substr(prefix.size());
    if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    return std::stoi(rest);
  };
  if (name == "cigar") return cigar();
  if (name == "perturbed_control") return perturbed_control();
  if (name == "bryant_steady_3") return bryant_steady_3();
  if (name == "bryant_expanding_3") return bryant_expanding_3();
  if (auto n = suffix("gaussian_")) return gaussian(*n, -0.5);
  if (auto n = suffix("cigar_cylinder_")) return cigar_cylinder(*n);
  if (auto n = suffix("sphere_")) return sphere_shrinker(*n);
  throw InvalidArgument("unknown catalog entry '" + name + "'");
}

std::vector<Point> sample_points(const SolitonSpec& s, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) pts.push_back(s.sampler(rng));
  return pts;
}

double potential_value(const SolitonSpec& s, const Point& p) {
  return s.potential->value(tensor::seed(p, 0)).value();
}

double soliton_residual(const SolitonSpec& s, const Point& p) {
  const auto curv = tensor::riemann_ricci_scalar(*s.metric, p);
  const auto hf = tensor::hessian_grad(*s.metric, *s.potential, p);
  tensor::Tensor res(s.dim, 2, 0.0);
  for (int i = 0; i < s.dim; ++i)
    for (int j = 0; j < s.dim; ++j) res(i, j) = curv.ricci(i, j) + hf.hessian(i, j) - s.lambda * curv.metric(i, j);
  return std::sqrt(std::max(0.0, tensor::norm2(res, curv.inverse)));
}

HamiltonRecord hamilton_constant(const SolitonSpec& s, const std::vector<Point>& sample) {
  if (sample.size() < 2) throw InvalidArgument("Hamilton constant needs at least two sample points");
  std::vector<double> v;
  for (const auto& p : sample) {
    const auto curv = tensor::riemann_ricci_scalar(*s.metric, p);
    const auto hf = tensor::hessian_grad(*s.metric, *s.potential, p);
    v.push_back(curv.scalar + hf.grad_norm2 - 2 * s.lambda * potential_value(s, p));
  }
  HamiltonRecord rec;
  rec.lambda = s.lambda;
  for (double x : v) rec.c += x;
  rec.c /= static_cast<double>(v.size());
  for (double x : v) rec.sample_spread = std::max(rec.sample_spread, std::abs(x - rec.c));
  return rec;
}

double pinching_alpha(const SolitonSpec& s, const std::vector<Point>& sample) {
  double alpha = 0.0;
  for (const auto& p : sample) {
    const auto curv = tensor::riemann_ricci_scalar(*s.metric, p);
    if (curv.scalar < 1e-12) throw DomainError("flat: pinching undefined (R < 1e-12)");
    alpha = std::max(alpha, std::sqrt(tensor::norm2(curv.riemann, curv.inverse)) / curv.scalar);
  }
  return alpha;
}

FlagCheck verify_flags(const SolitonSpec& s, const std::vector<Point>& sample, double tol) {
  FlagCheck out;
  out.min_sectional = out.min_ricci = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(0x5eed);
  const int n = s.dim;
  for (const auto& p : sample) {
    const auto curv = tensor::riemann_ricci_scalar(*s.metric, p);
    const Matrix E = tensor::orthonormal_frame(curv.metric);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const double k = tensor::sectional(curv, E.col(a), E.col(b));
        out.min_sectional = std::min(out.min_sectional, k);
        out.max_curvature = std::max(out.max_curvature, std::abs(k));
      }
    for (int t = 0; t < 10; ++t) {
      Vector u(n), v(n);
      for (int i = 0; i < n; ++i) {
        u(i) = symmetric(rng, 1.0);
        v(i) = symmetric(rng, 1.0);
      }
      out.min_sectional = std::min(out.min_sectional, tensor::sectional(curv, E * u, E * v));
    }
    const tensor::Tensor ric = tensor::to_frame(curv.ricci, E);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = ric(i, j);
    out.min_ricci = std::min(out.min_ricci, tensor::min_eigenvalue(m));
    out.max_curvature = std::max(out.max_curvature, m.cwiseAbs().maxCoeff());
  }
  if (s.flags.nonneg_sectional && out.min_sectional < -tol) out.consistent = false;
  if (s.flags.nonneg_ricci && out.min_ricci < -tol) out.consistent = false;
  if (s.flags.flat && out.max_curvature > tol) out.consistent = false;
  return out;
}

QuadraticFit potential_quadratic_fit(const SolitonSpec& s, double s_lo, double s_hi) {
  if (!s.radial) throw InvalidArgument("potential fit needs a rotationally symmetric entry");
  if (!(s_hi > s_lo) || s_hi > s.radial->s_max) throw RangeError("potential fit window outside the radial range");
  // least squares of y = k x with x = s^2
  constexpr int m = 64;
  double sxy = 0, sxx = 0;
  std::vector<double> xs, ys;
  for (int i = 0; i < m; ++i) {
    const double r = s_lo + (s_hi - s_lo) * i / (m - 1.0);
    const double y = -potential_value(s, s.radial->ray(r));
    xs.push_back(r * r);
    ys.push_back(y);
    sxy += r * r * y;
    sxx += r * r * r * r;
  }
  QuadraticFit fit;
  fit.coefficient = sxy / sxx;
  double ss = 0, yy = 0;
  for (int i = 0; i < m; ++i) {
    ss += std::pow(ys[i] - fit.coefficient * xs[i], 2);
    yy += ys[i] * ys[i];
  }
  fit.rel_misfit = yy > 0 ? std::sqrt(ss / yy) : 0.0;
  return fit;
}

double geodesic_radius(const std::function<double(double)>& speed, double rho) {
  if (rho < 0) throw InvalidArgument("negative chart radius");
  return quad::adaptive_simpson(speed, 0.0, rho, 1e-12).value;
}

nlohmann::json describe(const SolitonSpec& s) {
  nlohmann::json j;
  j["name"] = s.name;
  j["dim"] = s.dim;
  j["lambda"] = s.lambda;
  j["kind"] = to_string(s.kind);
  j["tier"] = to_string(s.tier);
  j["normalization"] = s.normalization;
  j["flags"] = {{"nonneg_sectional", s.flags.nonneg_sectional},
                {"nonneg_ricci", s.flags.nonneg_ricci},
                {"flat", s.flags.flat}};
  j["origin"] = s.origin.coords();
  j["domain"] = {{"sample_radius_lo", s.sample_lo}, {"sample_radius_hi", s.sample_hi}};
  if (s.radial) {
    j["domain"]["radial_max"] = s.radial->s_max;
    j["domain"]["rot_dim"] = s.radial->rot_dim;
    j["domain"]["flat_dim"] = s.radial->flat_dim;
  }
  return j;
}

}  // namespace solitonlab::catalog
