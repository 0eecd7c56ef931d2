#include "solitonlab/rotsym/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace solitonlab::rotsym {

namespace {

constexpr int kGauss = 16;

struct GaussRule {
  std::array<double, kGauss> x{}, w{};
  GaussRule() {
    for (int i = 0; i < kGauss; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (kGauss + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= kGauss; ++k) {
          const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        const double dp = kGauss * (z * p1 - p0) / (z * z - 1);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) {
          x[i] = z;
          w[i] = 2 / ((1 - z * z) * dp * dp);
          break;
        }
      }
    }
  }
};

const GaussRule& gauss() {
  static const GaussRule rule;
  return rule;
}

double horner(const double* c, int order, double t) {
  double v = c[order];
  for (int k = order - 1; k >= 0; --k) v = v * t + c[k];
  return v;
}

double horner_d(const double* c, int order, double t) {
  double v = order * c[order];
  for (int k = order - 1; k >= 1; --k) v = v * t + k * c[k];
  return v;
}

double horner_dd(const double* c, int order, double t) {
  double v = 0.0;
  for (int k = order; k >= 2; --k) v = v * t + k * (k - 1) * c[k];
  return v;
}

void check_dim(int n) {
  if (n < 2) throw DimensionError("warped-product solitons need n >= 2");
}

}  // namespace

Rhs soliton_ode_rhs(int n, double lambda, double w, double wp, double fp) {
  check_dim(n);
  if (!(w > 0.0)) throw DomainError("w <= 0: coordinate singularity of the warped product");
  Rhs out;
  out.wpp = (n - 2) * (1 - wp * wp) / w + fp * wp - lambda * w;
  out.fpp = lambda + (n - 1) * out.wpp / w;
  return out;
}

State origin_series(int n, double lambda, double R0, double r) {
  check_dim(n);
  const double K = R0 / (n * (n - 1));
  const double a5 = K * (13 * K * n - 10 * K - 12 * lambda) / (120.0 * (n + 2));
  const double b2 = (lambda - (n - 1) * K) / 2;
  const double b4 = K * (n - 1) * (K * n - K - lambda) / (6.0 * (n + 2));
  const double r2 = r * r;
  State s;
  s.w = r * (1 - K * r2 / 6 + a5 * r2 * r2);
  s.wp = 1 - K * r2 / 2 + 5 * a5 * r2 * r2;
  s.f = b2 * r2 + b4 * r2 * r2;
  s.fp = 2 * b2 * r + 4 * b4 * r2 * r;
  return s;
}

void ode_series(int n, double lambda, const State& s, int order, std::vector<double>& w,
                std::vector<double>& f) {
  check_dim(n);
  if (!(s.w > 0.0)) throw DomainError("w <= 0: coordinate singularity of the warped product");
  w.assign(static_cast<std::size_t>(order) + 1, 0.0);
  f.assign(static_cast<std::size_t>(order) + 1, 0.0);
  w[0] = s.w;
  f[0] = s.f;
  if (order >= 1) {
    w[1] = s.wp;
    f[1] = s.fp;
  }
  std::vector<double> q(static_cast<std::size_t>(order) + 1), sw(static_cast<std::size_t>(order) + 1);
  std::vector<double> wpp(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k + 2 <= order; ++k) {
    double wp2 = 0.0, fw = 0.0;
    for (int j = 0; j <= k; ++j) {
      const double a = (j + 1) * w[j + 1];
      wp2 += a * (k - j + 1) * w[k - j + 1];
      fw += (j + 1) * f[j + 1] * (k - j + 1) * w[k - j + 1];
    }
    double num = (k == 0 ? 1.0 : 0.0) - wp2;
    for (int j = 1; j <= k; ++j) num -= w[j] * q[k - j];
    q[k] = num / w[0];
    wpp[k] = (n - 2) * q[k] + fw - lambda * w[k];
    double sv = wpp[k];
    for (int j = 1; j <= k; ++j) sv -= w[j] * sw[k - j];
    sw[k] = sv / w[0];
    const double denom = (k + 1.0) * (k + 2.0);
    w[k + 2] = wpp[k] / denom;
    f[k + 2] = ((k == 0 ? lambda : 0.0) + (n - 1) * sw[k]) / denom;
  }
}

WarpedProfile::WarpedProfile(int n, double lambda, double normalization, OdeConfig cfg,
                             std::vector<double> radii, std::vector<State> states)
    : n_(n), lambda_(lambda), normalization_(normalization), cfg_(cfg), r_(std::move(radii)),
      s_(std::move(states)) {
  check_dim(n);
  if (r_.size() < 2 || r_.size() != s_.size()) throw RangeError("insufficient range: profile needs two nodes");
  for (std::size_t k = 1; k < r_.size(); ++k) {
    if (!(r_[k] > r_[k - 1])) throw InvalidArgument("profile radii must increase");
  }
  if (!(r_.front() > 0.0)) throw InvalidArgument("profile must start at r > 0");
  const int N = cfg_.taylor_order;
  const std::size_t stride = static_cast<std::size_t>(N) + 1;
  wc_.resize(stride * r_.size());
  fc_.resize(stride * r_.size());
  std::vector<double> w, f;
  for (std::size_t k = 0; k < r_.size(); ++k) {
    ode_series(n_, lambda_, s_[k], N, w, f);
    std::copy(w.begin(), w.end(), wc_.begin() + static_cast<std::ptrdiff_t>(k * stride));
    std::copy(f.begin(), f.end(), fc_.begin() + static_cast<std::ptrdiff_t>(k * stride));
  }
  // Ball integrals from the origin. Below the first node w = r and R = R0 up
  // to terms far below the quadrature tolerance.
  const double e = r_.front();
  const double omega = sphere_area(n_ - 1);
  vol_.assign(r_.size(), 0.0);
  curv_.assign(r_.size(), 0.0);
  vol_[0] = omega * std::pow(e, n_) / n_;
  curv_[0] = normalization_ * vol_[0];
  for (std::size_t k = 0; k + 1 < r_.size(); ++k) {
    vol_[k + 1] = vol_[k] + cell_integral(k, r_[k], r_[k + 1], false);
    curv_[k + 1] = curv_[k] + cell_integral(k, r_[k], r_[k + 1], true);
  }
}

double WarpedProfile::sphere_area(int k) {
  return 2 * std::pow(std::numbers::pi, (k + 1) / 2.0) / std::tgamma((k + 1) / 2.0);
}

std::size_t WarpedProfile::cell(double r) const {
  if (!(r >= r_.front() && r <= r_.back())) {
    std::ostringstream os;
    os << "radius " << r << " outside the profile range [" << r_.front() << ", " << r_.back() << "]";
    throw RangeError(os.str());
  }
  auto it = std::upper_bound(r_.begin(), r_.end(), r);
  std::size_t k = static_cast<std::size_t>(it - r_.begin());
  return k == 0 ? 0 : std::min(k - 1, r_.size() - 2);
}

State WarpedProfile::state(double r) const {
  const std::size_t k = cell(r);
  const int N = cfg_.taylor_order;
  const double* w = &wc_[k * (static_cast<std::size_t>(N) + 1)];
  const double* f = &fc_[k * (static_cast<std::size_t>(N) + 1)];
  const double t = r - r_[k];
  return {horner(w, N, t), horner_d(w, N, t), horner(f, N, t), horner_d(f, N, t)};
}

void WarpedProfile::series(double r, int order, std::vector<double>& w, std::vector<double>& f) const {
  const std::size_t k = cell(r);
  const int N = cfg_.taylor_order;
  const double* wc = &wc_[k * (static_cast<std::size_t>(N) + 1)];
  const double* fc = &fc_[k * (static_cast<std::size_t>(N) + 1)];
  const double t = r - r_[k];
  w.assign(static_cast<std::size_t>(order) + 1, 0.0);
  f.assign(static_cast<std::size_t>(order) + 1, 0.0);
  // Taylor shift of the cell polynomial: d_j = sum_k C(k, j) c_k t^(k-j)
  std::vector<double> a(wc, wc + N + 1), b(fc, fc + N + 1);
  for (int j = 0; j <= std::min(order, N); ++j) {
    w[j] = horner(a.data(), N - j, t);
    f[j] = horner(b.data(), N - j, t);
    // differentiate and divide by (j+1)
    for (int m = 0; m < N - j; ++m) {
      a[m] = a[m + 1] * (m + 1) / (j + 1);
      b[m] = b[m + 1] * (m + 1) / (j + 1);
    }
  }
}

double WarpedProfile::wpp(double r) const {
  const std::size_t k = cell(r);
  const int N = cfg_.taylor_order;
  return horner_dd(&wc_[k * (static_cast<std::size_t>(N) + 1)], N, r - r_[k]);
}

double WarpedProfile::radial_curvature(double r) const { return -wpp(r) / state(r).w; }

double WarpedProfile::spherical_curvature(double r) const {
  const State s = state(r);
  return (1 - s.wp * s.wp) / (s.w * s.w);
}

double WarpedProfile::scalar_curvature(double r) const {
  return 2 * (n_ - 1) * radial_curvature(r) + (n_ - 1) * (n_ - 2) * spherical_curvature(r);
}

double WarpedProfile::cell_integral(std::size_t k, double a, double b, bool weight_R) const {
  const auto& g = gauss();
  const int N = cfg_.taylor_order;
  const double* wc = &wc_[k * (static_cast<std::size_t>(N) + 1)];
  const double half = (b - a) / 2, mid = (a + b) / 2;
  double acc = 0.0;
  for (int i = 0; i < kGauss; ++i) {
    const double t = mid + half * g.x[i] - r_[k];
    const double w = horner(wc, N, t);
    double v = std::pow(w, n_ - 1);
    if (weight_R) {
      const double wp = horner_d(wc, N, t);
      const double wpp = horner_dd(wc, N, t);
      v *= -2 * (n_ - 1) * wpp / w + (n_ - 1) * (n_ - 2) * (1 - wp * wp) / (w * w);
    }
    acc += g.w[i] * v;
  }
  return sphere_area(n_ - 1) * half * acc;
}

double WarpedProfile::volume(double r) const {
  if (r <= r_.front()) return sphere_area(n_ - 1) * std::pow(std::max(r, 0.0), n_) / n_;
  const std::size_t k = cell(r);
  return vol_[k] + cell_integral(k, r_[k], r, false);
}

double WarpedProfile::total_curvature(double r) const {
  if (r <= r_.front()) return normalization_ * volume(r);
  const std::size_t k = cell(r);
  return curv_[k] + cell_integral(k, r_[k], r, true);
}

double WarpedProfile::area(double r) const {
  if (r <= r_.front()) return sphere_area(n_ - 1) * std::pow(std::max(r, 0.0), n_ - 1);
  return sphere_area(n_ - 1) * std::pow(state(r).w, n_ - 1);
}

WarpedProfile integrate_profile(int n, double lambda, double normalization, const OdeConfig& cfg) {
  check_dim(n);
  if (!(normalization >= 0.0) || !std::isfinite(normalization)) {
    throw InvalidArgument("normalization (origin scalar curvature) must be finite and >= 0");
  }
  if (!std::isfinite(lambda)) throw InvalidArgument("lambda must be finite");
  if (!(cfg.series_start > 0.0) || !(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || !(cfg.max_step > 0.0)) {
    throw InvalidArgument("ODE config: series start, tolerances and max step must be positive");
  }
  if (cfg.taylor_order < 6) throw InvalidArgument("ODE config: Taylor order must be at least 6");
  if (!(cfg.r_max > cfg.series_start)) throw RangeError("insufficient range: r_max <= series start");

  const double e = cfg.series_start;
  const double K = normalization / (n * (n - 1));
  // the neglected series terms are O(K^3 e^7); insist the kept ones are small
  if (std::abs(K) * e * e > 1e-3 || std::abs(lambda) * e * e > 1e-3) {
    throw ConvergenceError("series matching fails: series start too large for the curvature scale");
  }

  const int N = cfg.taylor_order;
  std::vector<double> radii{e};
  std::vector<State> states{origin_series(n, lambda, normalization, e)};
  std::vector<double> w, f;
  double r = e;
  long steps = 0;
  const double floor = cfg.abs_tol / cfg.rel_tol;
  while (r < cfg.r_max) {
    if (++steps > cfg.max_steps) throw ConvergenceError("tolerance not met: step budget exhausted");
    const State& s = states.back();
    ode_series(n, lambda, s, N, w, f);
    const double sw = std::max(floor, std::abs(s.w)), sf = std::max(floor, std::abs(s.f));
    // the series about r has convergence radius ~r (singular solutions at the origin)
    double h = std::min(cfg.max_step, 0.3 * r);
    for (int k : {N - 1, N}) {
      const double c = std::max(std::abs(w[k]) / sw, std::abs(f[k]) / sf);
      if (c > 0.0) h = std::min(h, 0.9 * std::pow(cfg.rel_tol / c, 1.0 / k));
    }
    if (!(h > 1e-14 * std::max(1.0, r))) {
      std::ostringstream os;
      os << "tolerance not met: step size underflow at r = " << r;
      throw ConvergenceError(os.str());
    }
    if (r + h >= cfg.r_max || cfg.r_max - (r + h) < 1e-9 * h) h = cfg.r_max - r;
    State next{horner(w.data(), N, h), horner_d(w.data(), N, h), horner(f.data(), N, h),
               horner_d(f.data(), N, h)};
    if (!std::isfinite(next.w) || !std::isfinite(next.wp) || !std::isfinite(next.f) ||
        !std::isfinite(next.fp) || !(next.w > 0.0)) {
      std::ostringstream os;
      os << "blow-up before max radius at r = " << r;
      throw ConvergenceError(os.str());
    }
    r = (h == cfg.r_max - r) ? cfg.r_max : r + h;
    radii.push_back(r);
    states.push_back(next);
  }
  return WarpedProfile(n, lambda, normalization, cfg, std::move(radii), std::move(states));
}

std::vector<State> integrate_reference_rk45(int n, double lambda, double normalization, const OdeConfig& cfg,
                                            std::span<const double> radii) {
  // Dormand-Prince 5(4) tableau (autonomous system, the nodes c_i are not needed)
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                          b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
  using V = std::array<double, 4>;
  auto F = [&](const V& y) {
    const Rhs d = soliton_ode_rhs(n, lambda, y[0], y[1], y[3]);
    return V{y[1], d.wpp, y[3], d.fpp};
  };
  auto comb = [](const V& y, double h, std::initializer_list<std::pair<double, const V*>> terms) {
    V out = y;
    for (auto [c, k] : terms)
      for (int i = 0; i < 4; ++i) out[i] += h * c * (*k)[i];
    return out;
  };
  const State s0 = origin_series(n, lambda, normalization, cfg.series_start);
  V y{s0.w, s0.wp, s0.f, s0.fp};
  double r = cfg.series_start;
  double h = 1e-3;
  std::vector<State> out;
  long steps = 0;
  for (double target : radii) {
    if (target < r) throw InvalidArgument("reference radii must increase from the series start");
    while (r < target) {
      if (++steps > cfg.max_steps) throw ConvergenceError("tolerance not met: step budget exhausted");
      h = std::min({h, cfg.max_step, target - r});
      const V k1 = F(y);
      const V k2 = F(comb(y, h, {{a21, &k1}}));
      const V k3 = F(comb(y, h, {{a31, &k1}, {a32, &k2}}));
      const V k4 = F(comb(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
      const V k5 = F(comb(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
      const V k6 = F(comb(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
      const V y5 = comb(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      const V k7 = F(y5);
      double err = 0.0;
      for (int i = 0; i < 4; ++i) {
        const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
        err = std::max(err, std::abs(ei) / sc);
      }
      if (err <= 1.0) {
        r = (h == target - r) ? target : r + h;
        y = y5;
      }
      const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h *= fac;
      if (h < 1e-14 * std::max(1.0, r)) throw ConvergenceError("tolerance not met: step size underflow");
    }
    out.push_back({y[0], y[1], y[2], y[3]});
  }
  return out;
}

WarpedProfile cigar_profile(double r_max, double spacing) {
  if (!(r_max > 1.0)) throw RangeError("insufficient range for the cigar profile");
  OdeConfig cfg;
  cfg.r_max = r_max;
  cfg.max_step = spacing;
  std::vector<double> radii;
  std::vector<State> states;
  auto push = [&](double r) {
    const double t = std::tanh(r), c = std::cosh(r);
    radii.push_back(r);
    // log cosh r without overflow
    const double lc = r > 20 ? r - std::numbers::ln2 + std::log1p(std::exp(-2 * r)) : std::log(c);
    const double sech2 = r > 20 ? 4 * std::exp(-2 * r) / std::pow(1 + std::exp(-2 * r), 2) : 1 / (c * c);
    states.push_back({t, sech2, -2 * lc, -2 * t});
  };
  double r = cfg.series_start;
  while (r < spacing) {
    push(r);
    r *= 1.3;
  }
  const int cells = static_cast<int>(std::ceil((r_max - r) / spacing));
  for (int k = 0; k <= cells; ++k) push(r + (r_max - r) * k / cells);
  return WarpedProfile(2, 0.0, 4.0, cfg, std::move(radii), std::move(states));
}

namespace {

struct LineFit {
  double slope = 0.0, intercept = 0.0, se = 0.0, rms = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - fit.intercept - fit.slope * x[i];
    ss += e * e;
  }
  fit.rms = std::sqrt(ss / m);
  fit.se = std::sqrt(ss / (m - 2) / sxx);
  return fit;
}

}  // namespace

AsymptoticExponents asymptotic_exponents(const WarpedProfile& p) {
  if (!(p.normalization() > 0.0)) throw RangeError("insufficient range: flat profile has no curvature scale");
  const double scale = 1 / std::sqrt(p.normalization());
  if (p.r_max() < 100 * scale) {
    std::ostringstream os;
    os << "insufficient range: r_max " << p.r_max() << " below 100 curvature scales (" << 100 * scale << ")";
    throw RangeError(os.str());
  }
  AsymptoticExponents out;
  out.fit_lo = std::max(p.r_max() / 10, 10 * scale);
  out.fit_hi = p.r_max();
  constexpr int m = 200;
  std::vector<double> lr, r, lR, lV, lF;
  for (int i = 0; i < m; ++i) {
    const double rr = out.fit_lo * std::pow(out.fit_hi / out.fit_lo, i / (m - 1.0));
    const double R = p.scalar_curvature(rr);
    const double V = p.volume(rr);
    const double F = -p.state(rr).f;
    if (!(R > 0.0) || !(V > 0.0)) throw DomainError("non-monotone data: curvature or volume not positive");
    r.push_back(rr);
    lr.push_back(std::log(rr));
    lR.push_back(std::log(R));
    lV.push_back(std::log(V));
    lF.push_back(F > 0.0 ? std::log(F) : std::nan(""));
  }
  for (std::size_t i = 1; i < lV.size(); ++i) {
    if (lV[i] < lV[i - 1]) throw DomainError("non-monotone data: volume decreased");
  }
  const LineFit a = fit_line(lr, lR), b = fit_line(lr, lV);
  out.curvature_decay = {-a.slope, a.se, a.rms, m};
  out.volume_growth = {b.slope, b.se, b.rms, m};
  if (std::none_of(lF.begin(), lF.end(), [](double v) { return std::isnan(v); })) {
    const LineFit c = fit_line(lr, lF);
    out.potential_growth = {c.slope, c.se, c.rms, m};
  } else {
    out.potential_growth = {std::nan(""), std::nan(""), std::nan(""), 0};
  }
  const LineFit ex = fit_line(r, lR);
  out.exponential_rate = -ex.slope;
  out.exponential_decay = ex.slope < 0 && ex.rms < 0.1 * a.rms;
  return out;
}

void write_csv(const WarpedProfile& p, std::ostream& out) {
  nlohmann::json h;
  const auto& c = p.config();
  h["n"] = p.dim();
  h["lambda"] = p.lambda();
  h["normalization"] = p.normalization();
  h["series_start"] = c.series_start;
  h["abs_tol"] = c.abs_tol;
  h["rel_tol"] = c.rel_tol;
  h["r_max"] = c.r_max;
  h["max_step"] = c.max_step;
  h["taylor_order"] = c.taylor_order;
  out << "# " << h.dump() << "\n";
  out << "r,w,wp,f,fp,R\n";
  char buf[512];
  for (std::size_t k = 0; k < p.radii().size(); ++k) {
    const State& s = p.states()[k];
    const double r = p.radii()[k];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r, s.w, s.wp, s.f, s.fp,
                  p.scalar_curvature(r));
    out << buf;
  }
}

WarpedProfile read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw InvalidArgument("profile CSV: missing JSON header");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(line.substr(2));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("profile CSV: bad JSON header: ") + e.what());
  }
  OdeConfig cfg;
  cfg.series_start = h.at("series_start").get<double>();
  cfg.abs_tol = h.at("abs_tol").get<double>();
  cfg.rel_tol = h.at("rel_tol").get<double>();
  cfg.r_max = h.at("r_max").get<double>();
  cfg.max_step = h.at("max_step").get<double>();
  cfg.taylor_order = h.at("taylor_order").get<int>();
  if (!std::getline(in, line) || line != "r,w,wp,f,fp,R") throw InvalidArgument("profile CSV: bad column header");
  std::vector<double> radii;
  std::vector<State> states;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double v[6];
    const char* s = line.c_str();
    for (int i = 0; i < 6; ++i) {
      char* end = nullptr;
      v[i] = std::strtod(s, &end);
      if (end == s) throw InvalidArgument("profile CSV: malformed row");
      s = (*end == ',') ? end + 1 : end;
    }
    radii.push_back(v[0]);
    states.push_back({v[1], v[2], v[3], v[4]});
  }
  return WarpedProfile(h.at("n").get<int>(), h.at("lambda").get<double>(), h.at("normalization").get<double>(),
                       cfg, std::move(radii), std::move(states));
}

}  // namespace solitonlab::rotsym
