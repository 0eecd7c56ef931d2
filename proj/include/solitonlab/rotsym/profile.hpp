#pragma once

// Rotationally symmetric solitons g = dr^2 + w(r)^2 g_{S^{n-1}} with
// potential f(r), integrated from a series start near the origin.
//
// The integrator is a Taylor-series method: on each step the local
// polynomials of w and f are generated from the ODE itself, and the same
// polynomials serve as the interpolant. Between nodes every derivative of
// the profile is therefore consistent with the ODE, not with a spline fit.

#include <iosfwd>
#include <span>
#include <vector>

#include "solitonlab/error.hpp"

namespace solitonlab::rotsym {

struct OdeConfig {
  double series_start = 1e-3;  // epsilon
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  double r_max = 100.0;
  double max_step = 0.5;
  int taylor_order = 20;
  long max_steps = 1'000'000;
};

struct State {
  double w = 0.0, wp = 0.0, f = 0.0, fp = 0.0;
};

struct Rhs {
  double wpp = 0.0, fpp = 0.0;
};

/// Solves the warped-product soliton system for (w'', f'').
Rhs soliton_ode_rhs(int n, double lambda, double w, double wp, double fp);

/// Origin Taylor data at radius r for origin scalar curvature R0 (f(0) = 0).
State origin_series(int n, double lambda, double R0, double r);

class WarpedProfile {
 public:
  /// Builds a profile from node states. Each node is expanded into its local
  /// polynomial with the ODE recursion.
  WarpedProfile(int n, double lambda, double normalization, OdeConfig cfg, std::vector<double> radii,
                std::vector<State> states);

  int dim() const { return n_; }
  double lambda() const { return lambda_; }
  double normalization() const { return normalization_; }
  const OdeConfig& config() const { return cfg_; }
  const std::vector<double>& radii() const { return r_; }
  const std::vector<State>& states() const { return s_; }
  double r_min() const { return r_.front(); }
  double r_max() const { return r_.back(); }

  State state(double r) const;
  /// Taylor coefficients (d^k/dr^k / k!) of w and f at r, k = 0..order.
  void series(double r, int order, std::vector<double>& w, std::vector<double>& f) const;

  double wpp(double r) const;
  double scalar_curvature(double r) const;
  double radial_curvature(double r) const;     // -w''/w
  double spherical_curvature(double r) const;  // (1 - w'^2)/w^2

  /// Ball quantities about the centre of symmetry.
  double volume(double r) const;
  double total_curvature(double r) const;
  double area(double r) const;
  static double sphere_area(int k);  // |S^k|

 private:
  std::size_t cell(double r) const;
  double cell_integral(std::size_t k, double a, double b, bool weight_R) const;

  int n_;
  double lambda_;
  double normalization_;
  OdeConfig cfg_;
  std::vector<double> r_;
  std::vector<State> s_;
  std::vector<double> wc_, fc_;  // per node coefficients, stride order+1
  std::vector<double> vol_, curv_;
};

/// Local ODE Taylor coefficients at a state, up to `order`.
void ode_series(int n, double lambda, const State& s, int order, std::vector<double>& w,
                std::vector<double>& f);

/// Integrates from the origin series out to cfg.r_max. normalization is the
/// scalar curvature at the origin (0 gives the Gaussian branch).
WarpedProfile integrate_profile(int n, double lambda, double normalization, const OdeConfig& cfg = {});

/// Independent Dormand-Prince 5(4) integration of the same problem, sampled
/// at the given increasing radii. Used as a cross-check.
std::vector<State> integrate_reference_rk45(int n, double lambda, double normalization, const OdeConfig& cfg,
                                            std::span<const double> radii);

/// The cigar as a 2-d profile built from its closed form.
WarpedProfile cigar_profile(double r_max, double spacing = 0.25);

struct ExponentFit {
  double value = 0.0;
  double std_error = 0.0;
  double rms_residual = 0.0;
  int points = 0;
};

struct AsymptoticExponents {
  double fit_lo = 0.0, fit_hi = 0.0;
  ExponentFit curvature_decay;    // R ~ r^-a
  ExponentFit volume_growth;      // Vol(B_r) ~ r^b
  ExponentFit potential_growth;   // -f ~ r^c
  bool exponential_decay = false; // log R is linear in r: the power law is rejected
  double exponential_rate = 0.0;
};

AsymptoticExponents asymptotic_exponents(const WarpedProfile& profile);

/// CSV with a "# {json}" header line, columns r,w,wp,f,fp,R.
void write_csv(const WarpedProfile& profile, std::ostream& out);
WarpedProfile read_csv(std::istream& in);

}  // namespace solitonlab::rotsym
