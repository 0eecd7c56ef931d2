#pragma once

#include <memory>
#include <string>
#include <vector>

#include "solitonlab/catalog/catalog.hpp"
#include "solitonlab/rotsym/profile.hpp"

namespace solitonlab::integral {

using catalog::SolitonSpec;
using rotsym::WarpedProfile;

/// Curvature data of a warped product dr^2 + w^2 g_sphere (rotational
/// dimension k) times a flat R^m, at geodesic radius s of the warped factor.
struct RadialData {
  double s = 0.0;
  double w = 0.0, f = 0.0, fp = 0.0;
  double ric_radial = 0.0, ric_sphere = 0.0;  // Ricci eigenvalues; flat directions carry 0
  double R = 0.0, dR = 0.0;
  double e_norm = 0.0, de_norm = 0.0;  // |E| and d|E|/ds, E = Ric - R g / 2 (unweighted)
  double q_bracket = 0.0;              // e^{2f} Q
  double grad_ric2 = 0.0;              // |nabla Ric|^2
};

class RadialGeometry {
 public:
  RadialGeometry(std::shared_ptr<const WarpedProfile> profile, int flat_dim);
  /// Rotationally symmetric or product catalog entries (through their polar view).
  static RadialGeometry from(const SolitonSpec& s);

  int dim() const { return k_ + m_; }
  int rot_dim() const { return k_; }
  int flat_dim() const { return m_; }
  double lambda() const { return profile_->lambda(); }
  double s_max() const { return profile_->r_max(); }
  const WarpedProfile& profile() const { return *profile_; }

  RadialData at(double s) const;
  /// w(s), using w = s inside the first node.
  double warp(double s) const;
  double potential(double s) const;

 private:
  std::shared_ptr<const WarpedProfile> profile_;
  int k_, m_;
};

struct BallIntegrals {
  double r = 0.0;
  double total_R = 0.0;
  double volume = 0.0;
  double area = 0.0;
  double error_R = 0.0;
  double error_volume = 0.0;
  double error_area = 0.0;
};

BallIntegrals ball_integrals(const RadialGeometry& g, double r, double abs_tol = 1e-9);
BallIntegrals ball_integrals(const SolitonSpec& s, double r, double abs_tol = 1e-9);
BallIntegrals ball_integrals(std::shared_ptr<const WarpedProfile> p, double r, double abs_tol = 1e-9);

struct DeruelleResult {
  double r = 0.0;
  double lhs = 0.0;     // int_{B_r} R
  double rhs = 0.0;     // n sqrt(c) Vol / r
  double margin = 0.0;  // rhs - lhs
  double hamilton_c = 0.0;
  double area_bound_margin = 0.0;  // sqrt(c) A - int R
  double bishop_gromov = 0.0;      // r A / Vol, at most n
  double error = 0.0;
};
DeruelleResult deruelle_check(const SolitonSpec& s, double r);

struct RatioPoint {
  double r = 0.0;
  double ratio = 0.0;  // (1/r) int_{B_r(o)} R
  // A centre moved by `shift` has ball B_r(o') between B_{r-shift}(o) and
  // B_{r+shift}(o), so its ratio lies in [lower, upper].
  double lower = 0.0;
  double upper = 0.0;
};
std::vector<RatioPoint> liminf_ratio(const RadialGeometry& g, const std::vector<double>& radii, double shift = 1.0);
std::vector<RatioPoint> liminf_ratio(const SolitonSpec& s, const std::vector<double>& radii, double shift = 1.0);

enum class CutoffKind { radial, potential };
std::string to_string(CutoffKind k);

/// Radial: phi = 1 - S((rho - r)/r) of the product distance rho, S the quintic
/// smoothstep. Potential: psi(u) = (1 - S((u - t)/t))^4 evaluated at u = -f.
struct CutoffSpec {
  CutoffKind kind = CutoffKind::radial;
  double scale = 0.0;
  double c = 0.0;                // sampled constant in the derivative bounds
  double gradient_bound = 0.0;   // sup |grad phi| times r (radial) or sqrt(t) (potential)
  double support_radius = 0.0;   // geodesic radius where the support ends
  int samples = 0;

  double inner() const { return scale; }
  double outer() const { return 2 * scale; }
  double value(double u) const;
  double d1(double u) const;
  double d2(double u) const;
};

CutoffSpec build_cutoff(CutoffKind kind, double scale, const SolitonSpec& s);

struct IntMainResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double error = 0.0;
  // |int <grad|E^|, grad phi> phi^2 e^f| against int R over the transition region
  double boundary = 0.0;
  double annulus_R = 0.0;
};
IntMainResult intmain_check(const SolitonSpec& s, const CutoffSpec& cutoff);

struct GradRicPoint {
  double r = 0.0;
  double numerator = 0.0;    // int |grad Ric|^2 phi^2 / R
  double denominator = 0.0;  // int (R + R |grad phi|^2) phi^2
  double ratio = 0.0;
};
std::vector<GradRicPoint> gradric_ratio(const SolitonSpec& s, const std::vector<double>& radii);

}  // namespace solitonlab::integral
