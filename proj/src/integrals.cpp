#include "solitonlab/integral/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "solitonlab/algebra/algebra.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/jet.hpp"
#include "solitonlab/quadrature.hpp"

namespace solitonlab::integral {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

double smoothstep(double x) {
  if (x <= 0) return 0.0;
  if (x >= 1) return 1.0;
  return x * x * x * (x * (6 * x - 15) + 10);
}
double smoothstep_d1(double x) { return (x <= 0 || x >= 1) ? 0.0 : 30 * x * x * (x - 1) * (x - 1); }
double smoothstep_d2(double x) { return (x <= 0 || x >= 1) ? 0.0 : 60 * x * (x - 1) * (2 * x - 1); }

double omega(int k) { return WarpedProfile::sphere_area(k); }
double unit_ball(int m) { return m == 0 ? 1.0 : omega(m - 1) / m; }

struct Accum {
  double value = 0.0, error = 0.0;
  void add(const quad::Result& r) {
    value += r.value;
    error += r.error;
  }
};

/// int over {rho <= rho_max} of G(d, rho, s / rho) d(vol), d the radial data
/// at s and rho the product distance. Products are integrated with s outside
/// (one RadialData per node) and the flat radius y inside.
template <class G>
quad::Result region_integral(const RadialGeometry& g, double rho_max, G&& integrand, double abs_tol) {
  const int k = g.rot_dim(), m = g.flat_dim();
  const double wk = omega(k - 1);
  if (m == 0) {
    return quad::adaptive_simpson(
        [&](double s) { return integrand(g.at(s), s, 1.0) * wk * std::pow(g.warp(s), k - 1); }, 0.0, rho_max,
        abs_tol);
  }
  const double wm = omega(m - 1);
  long evals = 0;
  auto outer = [&](double s) {
    const RadialData d = g.at(s);
    const double ymax = std::sqrt(std::max(0.0, rho_max * rho_max - s * s));
    if (ymax == 0.0) return 0.0;
    auto inner = [&](double y) {
      const double rho = std::hypot(s, y);
      return integrand(d, rho, rho > 0 ? s / rho : 1.0) * wm * std::pow(y, m - 1);
    };
    const auto r = quad::adaptive_simpson(inner, 0.0, ymax, abs_tol * 0.1, 4, 2);
    evals += r.evaluations;
    return r.value * wk * std::pow(g.warp(s), k - 1);
  };
  auto res = quad::adaptive_simpson(outer, 0.0, rho_max, abs_tol, 8, 2);
  res.evaluations += evals;
  return res;
}

void check_radius(const RadialGeometry& g, double r) {
  if (!(r > 0) || r > g.s_max()) {
    std::ostringstream os;
    os << "radius " << r << " outside (0, " << g.s_max() << "]";
    throw RangeError(os.str());
  }
}

/// Largest s with -f(s) <= u, by bisection (-f increasing on proper expanders).
double potential_level_radius(const RadialGeometry& g, double u) {
  double lo = 0.0, hi = g.s_max();
  if (-g.potential(hi) < u) throw RangeError("potential level beyond the profile range");
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (-g.potential(mid) <= u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

RadialGeometry::RadialGeometry(std::shared_ptr<const WarpedProfile> profile, int flat_dim)
    : profile_(std::move(profile)), k_(profile_->dim()), m_(flat_dim) {
  if (flat_dim < 0) throw InvalidArgument("negative flat dimension");
}

RadialGeometry RadialGeometry::from(const SolitonSpec& s) {
  if (!s.radial) throw InvalidArgument(s.name + ": unsupported geometry (not rotationally symmetric or a product)");
  const SolitonSpec p = catalog::polar_view(s);
  if (!p.profile || !p.radial) throw InvalidArgument(s.name + ": unsupported geometry");
  return RadialGeometry(p.profile, p.radial->flat_dim);
}

double RadialGeometry::warp(double s) const {
  if (s < profile_->r_min()) return s;
  return profile_->state(s).w;
}

double RadialGeometry::potential(double s) const {
  if (s < profile_->r_min()) s = profile_->r_min();
  return profile_->state(s).f;
}

RadialData RadialGeometry::at(double s_in) const {
  // curvature quantities are frozen inside the first node, where 1 - w'^2 and
  // w lose all digits together
  const double s = std::max(s_in, profile_->r_min());
  std::vector<double> wc, fc;
  profile_->series(s, 4, wc, fc);
  const JetSpace& sp = JetSpace::get(1, 1);
  const Jet t = Jet::variable(sp, 0, s);
  const double w_t[2] = {wc[0], wc[1]};
  const double wp_t[2] = {wc[1], 2 * wc[2]};
  const double wpp_t[2] = {2 * wc[2], 6 * wc[3]};
  const Jet w = compose(t, w_t), wp = compose(t, wp_t), wpp = compose(t, wpp_t);
  const int k = k_, n = k_ + m_;
  const Jet krad = -wpp / w;
  const Jet ksph = (1.0 - square(wp)) / square(w);
  const Jet a = (k - 1.0) * krad;
  const Jet b = krad + (k - 2.0) * ksph;
  const Jet R = a + (k - 1.0) * b;
  const Jet ea = a - 0.5 * R, eb = b - 0.5 * R, ef = -0.5 * R;
  const Jet e2 = square(ea) + (k - 1.0) * square(eb) + static_cast<double>(m_) * square(ef);

  RadialData d;
  d.s = s_in;
  d.w = warp(s_in);
  d.f = fc[0];
  d.fp = fc[1];
  d.ric_radial = a.value();
  d.ric_sphere = b.value();
  d.R = R.value();
  d.dR = R.partial({0});
  d.e_norm = std::sqrt(std::max(0.0, e2.value()));
  d.de_norm = d.e_norm > 0 ? 0.5 * e2.partial({0}) / d.e_norm : 0.0;
  const double ap = a.partial({0}), bp = b.partial({0});
  const double h = wp.value() / w.value();
  d.grad_ric2 = ap * ap + (k - 1) * bp * bp + 2 * (k - 1) * std::pow((a.value() - b.value()) * h, 2);

  if (n >= 3) {
    algebra::EigenSystem es;
    es.n = n;
    es.sigma.assign(static_cast<std::size_t>(n * n), 0.0);
    es.lambda.assign(static_cast<std::size_t>(n), 0.0);
    const double mag = std::abs(krad.value()) + std::abs(ksph.value());
    auto clip = [mag](double v) { return (v < 0 && v > -1e-12 * mag) ? 0.0 : v; };
    for (int i = 1; i < k; ++i) {
      es.s(0, i) = es.s(i, 0) = clip(krad.value());
      for (int j = i + 1; j < k; ++j) es.s(i, j) = es.s(j, i) = clip(ksph.value());
    }
    const double Rv = es.scalar();
    for (int i = 0; i < n; ++i) {
      const double ric = i == 0 ? a.value() : (i < k ? b.value() : 0.0);
      es.lambda[i] = ric - Rv / n;
    }
    double tr = 0.0;
    for (double l : es.lambda) tr += l;
    for (double& l : es.lambda) l -= tr / n;
    d.q_bracket = algebra::q_spectrum(es);
  }
  return d;
}

BallIntegrals ball_integrals(const RadialGeometry& g, double r, double abs_tol) {
  check_radius(g, r);
  const int k = g.rot_dim(), m = g.flat_dim();
  const double wk = omega(k - 1);
  BallIntegrals b;
  b.r = r;
  auto wpow = [&](double s) { return wk * std::pow(g.warp(s), k - 1); };
  if (m == 0) {
    const auto v = quad::adaptive_simpson(wpow, 0.0, r, abs_tol);
    const auto c = quad::adaptive_simpson([&](double s) { return g.at(s).R * wpow(s); }, 0.0, r, abs_tol);
    b.volume = v.value;
    b.error_volume = v.error;
    b.total_R = c.value;
    b.error_R = c.error;
    b.area = wpow(r);
    return b;
  }
  // s = r sin(theta), flat radius r cos(theta)
  const double cm = unit_ball(m);
  auto vol = [&](double th) {
    const double ct = std::cos(th);
    return wpow(r * std::sin(th)) * cm * std::pow(r * ct, m) * r * ct;
  };
  auto curv = [&](double th) { return g.at(r * std::sin(th)).R * vol(th); };
  auto area = [&](double th) { return wpow(r * std::sin(th)) * cm * m * r * std::pow(r * std::cos(th), m - 1); };
  const auto v = quad::adaptive_simpson(vol, 0.0, kHalfPi, abs_tol);
  const auto c = quad::adaptive_simpson(curv, 0.0, kHalfPi, abs_tol);
  const auto a = quad::adaptive_simpson(area, 0.0, kHalfPi, abs_tol);
  b.volume = v.value;
  b.error_volume = v.error;
  b.total_R = c.value;
  b.error_R = c.error;
  b.area = a.value;
  b.error_area = a.error;
  return b;
}

BallIntegrals ball_integrals(const SolitonSpec& s, double r, double abs_tol) {
  return ball_integrals(RadialGeometry::from(s), r, abs_tol);
}

BallIntegrals ball_integrals(std::shared_ptr<const WarpedProfile> p, double r, double abs_tol) {
  return ball_integrals(RadialGeometry(std::move(p), 0), r, abs_tol);
}

DeruelleResult deruelle_check(const SolitonSpec& s, double r) {
  if (s.kind != catalog::Kind::steady) throw InvalidArgument(s.name + ": Deruelle bound needs a steady soliton");
  if (!s.flags.nonneg_ricci) throw InvalidArgument(s.name + ": Deruelle bound needs nonnegative Ricci curvature");
  const RadialGeometry g = RadialGeometry::from(s);
  const auto b = ball_integrals(g, r);
  const auto d1 = g.at(1.0);
  DeruelleResult out;
  out.r = r;
  out.hamilton_c = d1.R + d1.fp * d1.fp;
  const double sc = std::sqrt(out.hamilton_c);
  out.lhs = b.total_R;
  out.rhs = g.dim() * sc * b.volume / r;
  out.margin = out.rhs - out.lhs;
  out.area_bound_margin = sc * b.area - b.total_R;
  out.bishop_gromov = r * b.area / b.volume;
  out.error = b.error_R + g.dim() * sc * b.error_volume / r;
  return out;
}

std::vector<RatioPoint> liminf_ratio(const RadialGeometry& g, const std::vector<double>& radii, double shift) {
  if (radii.empty()) throw InvalidArgument("empty sweep");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) throw InvalidArgument("radii must be increasing");
  std::vector<RatioPoint> out;
  for (double r : radii) {
    RatioPoint p;
    p.r = r;
    p.ratio = ball_integrals(g, r).total_R / r;
    p.lower = r > shift ? ball_integrals(g, r - shift).total_R / r : 0.0;
    p.upper = ball_integrals(g, std::min(r + shift, g.s_max())).total_R / r;
    out.push_back(p);
  }
  return out;
}

std::vector<RatioPoint> liminf_ratio(const SolitonSpec& s, const std::vector<double>& radii, double shift) {
  return liminf_ratio(RadialGeometry::from(s), radii, shift);
}

std::string to_string(CutoffKind k) { return k == CutoffKind::radial ? "radial" : "potential"; }

double CutoffSpec::value(double u) const {
  const double x = (u - scale) / scale;
  if (kind == CutoffKind::radial) return 1.0 - smoothstep(x);
  return std::pow(1.0 - smoothstep(x), 4);
}

double CutoffSpec::d1(double u) const {
  const double x = (u - scale) / scale;
  if (kind == CutoffKind::radial) return -smoothstep_d1(x) / scale;
  return -4 * std::pow(1.0 - smoothstep(x), 3) * smoothstep_d1(x) / scale;
}

double CutoffSpec::d2(double u) const {
  const double x = (u - scale) / scale;
  if (kind == CutoffKind::radial) return -smoothstep_d2(x) / (scale * scale);
  const double q = 1.0 - smoothstep(x), sp = smoothstep_d1(x);
  return (12 * q * q * sp * sp - 4 * q * q * q * smoothstep_d2(x)) / (scale * scale);
}

CutoffSpec build_cutoff(CutoffKind kind, double scale, const SolitonSpec& s) {
  if (!(scale > 0)) throw InvalidArgument("cutoff scale must be positive");
  CutoffSpec c;
  c.kind = kind;
  c.scale = scale;
  c.samples = 10000;
  const RadialGeometry g = RadialGeometry::from(s);
  if (kind == CutoffKind::potential) {
    bool proper = s.lambda < 0;
    if (proper) {
      const double hi = std::min(40.0, g.s_max()), lo = hi / 2;
      const auto fit = catalog::potential_quadratic_fit(catalog::polar_view(s), lo, hi);
      proper = std::abs(fit.coefficient + s.lambda / 2) <= 0.1 * std::abs(s.lambda / 2);
    }
    if (!proper) throw DomainError(s.name + ": non-proper potential");
    c.support_radius = potential_level_radius(g, c.outer());
  } else {
    c.support_radius = c.outer();
    if (c.support_radius > g.s_max() && g.flat_dim() == 0) throw RangeError("cutoff support beyond the profile range");
  }

  // dense sampling of the support
  const int N = c.samples;
  for (int i = 0; i <= N; ++i) {
    const double u = c.outer() * i / N;
    const double v = c.value(u);
    if (v < 0 || v > 1 || (u <= c.inner() && v != 1.0)) throw Error("cutoff profile out of [0, 1] or not 1 inside");
    if (kind == CutoffKind::radial) {
      c.c = std::max(c.c, std::abs(c.d1(u)) * scale);
    } else if (v > 0) {
      c.c = std::max({c.c, std::abs(c.d1(u)) * u / std::pow(v, 0.75), std::abs(c.d2(u)) * u * u / std::sqrt(v)});
    }
  }
  if (c.value(c.outer()) != 0.0) throw Error("cutoff does not vanish at the outer edge");
  if (kind == CutoffKind::radial) {
    c.gradient_bound = c.c;
    if (c.gradient_bound > 2.0) throw Error("radial cutoff gradient exceeds 2/r");
  } else {
    // |grad phi| = |psi'(-f)| |f'| on the geodesic support
    for (int i = 0; i <= N; ++i) {
      const double sr = c.support_radius * i / N;
      const auto d = g.at(std::max(sr, 1e-9));
      c.gradient_bound = std::max(c.gradient_bound, std::abs(c.d1(-g.potential(sr)) * d.fp) * std::sqrt(scale));
    }
  }
  if (!std::isfinite(c.c) || !std::isfinite(c.gradient_bound)) throw Error("cutoff bounds are not finite");
  return c;
}

IntMainResult intmain_check(const SolitonSpec& s, const CutoffSpec& cut) {
  if (s.flags.flat) throw DomainError(s.name + ": flat input, E^ vanishes identically");
  const RadialGeometry g = RadialGeometry::from(s);
  const int n = g.dim();
  const double lambda = g.lambda();
  const double rho_max = cut.support_radius;
  if (cut.kind == CutoffKind::potential && g.flat_dim() != 0) throw InvalidArgument("potential cutoff needs a rotationally symmetric entry");
  if (rho_max > g.s_max() && g.flat_dim() == 0) throw RangeError("cutoff support beyond the profile range");

  // phi and d phi / d rho along the product radius (potential: along s)
  auto phi = [&](const RadialData& d, double rho) {
    return cut.kind == CutoffKind::radial ? cut.value(rho) : cut.value(-d.f);
  };
  auto dphi = [&](const RadialData& d, double rho, double st) {
    return cut.kind == CutoffKind::radial ? cut.d1(rho) * st : -cut.d1(-d.f) * d.fp;
  };
  auto check = [&](const RadialData& d) {
    if (!(d.e_norm > 0)) {
      std::ostringstream os;
      os << s.name << ": |E^| vanishes at geodesic radius " << d.s;
      throw DomainError(os.str());
    }
  };
  // e^{-f} cancels from both sides, so everything is written with the
  // unweighted E: Q e^f / |E^| = e^{2f} Q / |E| and <grad|E^|, grad phi> e^f
  // = (d|E| - |E| f') dphi along s.
  const auto L = region_integral(
      g, rho_max,
      [&](const RadialData& d, double rho, double) {
        check(d);
        const double p = phi(d, rho);
        return (d.q_bracket - (n - 2) * lambda * d.e_norm * d.e_norm) / d.e_norm * p * p * p;
      },
      1e-9);
  const auto Rr = region_integral(
      g, rho_max,
      [&](const RadialData& d, double rho, double st) {
        const double p = phi(d, rho);
        return -3 * (d.de_norm - d.e_norm * d.fp) * dphi(d, rho, st) * p * p;
      },
      1e-9);
  IntMainResult out;
  out.lhs = L.value;
  out.rhs = Rr.value;
  out.slack = out.rhs - out.lhs;
  out.error = L.error + Rr.error;
  out.boundary = std::abs(out.rhs) / 3;
  const double r1 = cut.kind == CutoffKind::radial ? cut.inner() : potential_level_radius(g, cut.inner());
  out.annulus_R = ball_integrals(g, rho_max).total_R - ball_integrals(g, r1).total_R;
  return out;
}

std::vector<GradRicPoint> gradric_ratio(const SolitonSpec& s, const std::vector<double>& radii) {
  if (s.kind != catalog::Kind::steady) throw InvalidArgument(s.name + ": gradient Ricci ratio needs a steady soliton");
  if (radii.empty()) throw InvalidArgument("empty sweep");
  const RadialGeometry g = RadialGeometry::from(s);
  std::vector<GradRicPoint> out;
  for (double r : radii) {
    CutoffSpec cut;
    cut.kind = CutoffKind::radial;
    cut.scale = r;
    const auto num = region_integral(
        g, 2 * r,
        [&](const RadialData& d, double rho, double) {
          if (!(d.R > 0)) {
            std::ostringstream os;
            os << s.name << ": R <= 0 at geodesic radius " << d.s;
            throw DomainError(os.str());
          }
          const double p = cut.value(rho);
          return d.grad_ric2 * p * p / d.R;
        },
        1e-10);
    const auto den = region_integral(
        g, 2 * r,
        [&](const RadialData& d, double rho, double) {
          const double p = cut.value(rho), dp = cut.d1(rho);
          return (d.R + d.R * dp * dp) * p * p;
        },
        1e-10);
    out.push_back({r, num.value, den.value, num.value / den.value});
  }
  return out;
}

}  // namespace solitonlab::integral
