#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "solitonlab/rotsym/profile.hpp"
#include "solitonlab/tensor/geometry.hpp"

namespace solitonlab::catalog {

using tensor::Point;

enum class Kind { expanding, steady, shrinking, einstein };
enum class Tier { closed_form, profile };

std::string to_string(Kind k);
std::string to_string(Tier t);
Kind kind_for(double lambda, bool constant_potential);

struct CurvatureFlags {
  bool nonneg_sectional = false;
  bool nonneg_ricci = false;
  bool flat = false;
};

/// A rotationally symmetric factor of dimension rot_dim, possibly times a
/// flat R^flat_dim, in terms of the geodesic radius s of the rotational
/// factor. ray(s) is the chart point at radius s on a fixed ray with all flat
/// coordinates zero.
struct RadialModel {
  int rot_dim = 0;
  int flat_dim = 0;
  double s_max = 0.0;
  std::function<double(double)> warp;
  std::function<Point(double)> ray;
};

using Sampler = std::function<Point(std::mt19937_64&)>;

struct SolitonSpec {
  std::string name;
  int dim = 0;
  double lambda = 0.0;
  Kind kind = Kind::steady;
  Tier tier = Tier::closed_form;
  CurvatureFlags flags;
  Point origin;
  double normalization = 0.0;  // origin scalar curvature where it pins a family
  std::shared_ptr<const tensor::ChartMetric> metric;
  std::shared_ptr<const tensor::ScalarField> potential;
  std::shared_ptr<const rotsym::WarpedProfile> profile;
  std::optional<RadialModel> radial;
  Sampler sampler;
  double sample_lo = 0.0, sample_hi = 0.0;  // geodesic radius window used by the sampler

  /// Residual tolerance of the soliton equation for this tier.
  double residual_tolerance() const { return tier == Tier::closed_form ? 1e-9 : 1e-5; }
  /// Tolerance for identities carrying third derivatives.
  double identity_tolerance() const { return tier == Tier::closed_form ? 1e-7 : 1e-4; }
};

SolitonSpec gaussian(int n, double lambda);
SolitonSpec cigar();
SolitonSpec cigar_cylinder(int n);
SolitonSpec sphere_shrinker(int n);
/// Polar chart (r, angles) over the profile, times R^flat_dim.
SolitonSpec from_profile(std::shared_ptr<const rotsym::WarpedProfile> profile, std::string name = "profile",
                         int flat_dim = 0);
/// The same soliton in a polar chart over a warped profile, valid out to
/// large radii (cigar-type entries use the closed-form cigar profile, flat
/// entries the Gaussian branch). Profile entries are returned unchanged.
SolitonSpec polar_view(const SolitonSpec& s);
std::shared_ptr<const rotsym::WarpedProfile> cigar_polar_profile();
/// g(1 + 0.01|x|^2) with the cigar potential; not a soliton.
SolitonSpec perturbed_control();
SolitonSpec bryant_steady_3();
SolitonSpec bryant_expanding_3();

/// The shared steady (R0 = 1, r_max = 1000) and expanding (lambda = -1/2,
/// R0 = 1, r_max = 300) Bryant profiles, integrated once.
std::shared_ptr<const rotsym::WarpedProfile> bryant_profile(bool steady);

/// CLI names: gaussian_3, cigar, cigar_cylinder_3/4/5, sphere_2/3,
/// bryant_steady_3, bryant_expanding_3, perturbed_control.
SolitonSpec make_soliton(const std::string& name);
std::vector<std::string> catalog_names();

std::vector<Point> sample_points(const SolitonSpec& s, int count, std::uint64_t seed);

/// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
double uniform01(std::mt19937_64& rng);

/// |Ric + Hess f - lambda g| in the metric norm.
double soliton_residual(const SolitonSpec& s, const Point& p);

struct HamiltonRecord {
  double c = 0.0;
  double lambda = 0.0;
  double sample_spread = 0.0;
};
HamiltonRecord hamilton_constant(const SolitonSpec& s, const std::vector<Point>& sample);

double pinching_alpha(const SolitonSpec& s, const std::vector<Point>& sample);

struct FlagCheck {
  double min_sectional = 0.0;
  double min_ricci = 0.0;
  double max_curvature = 0.0;
  bool consistent = true;
};
/// Samples sectional curvatures (frame planes plus random planes) and Ricci
/// eigenvalues and compares them with the declared flags.
FlagCheck verify_flags(const SolitonSpec& s, const std::vector<Point>& sample, double tol);

/// Least-squares coefficient k in -f(s) ~ k s^2 along the radial ray over
/// [s_lo, s_hi]; also reports the relative rms misfit.
struct QuadraticFit {
  double coefficient = 0.0;
  double rel_misfit = 0.0;
};
QuadraticFit potential_quadratic_fit(const SolitonSpec& s, double s_lo, double s_hi);

/// Geodesic radius of a rotationally symmetric chart by quadrature of the
/// radial speed sqrt(g_rr) from 0 to rho.
double geodesic_radius(const std::function<double(double)>& speed, double rho);

double potential_value(const SolitonSpec& s, const Point& p);

nlohmann::json describe(const SolitonSpec& s);

}  // namespace solitonlab::catalog
