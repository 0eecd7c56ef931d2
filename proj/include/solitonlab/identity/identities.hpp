#pragma once

#include <string>
#include <vector>

#include "solitonlab/catalog/catalog.hpp"

namespace solitonlab::identity {

using catalog::SolitonSpec;
using tensor::Point;
using tensor::Tensor;

/// Weighted Einstein tensor E^ = (Ric - R g / 2) e^{-f} at a point.
struct WeightedEinstein {
  Tensor frame;  // components in the Gram-Schmidt orthonormal frame
  double norm = 0.0;
  double trace = 0.0;
  double weight = 0.0;  // e^{-f}
  // type invariants: tr = -(n-2)/2 R e^{-f} and |Ric|^2 = e^{2f}|E^|^2 - (n-4)/4 R^2
  double trace_residual = 0.0;
  double ricci_norm_residual = 0.0;
};

WeightedEinstein weighted_einstein(const SolitonSpec& s, const Point& p);

/// Rm and Ric in the orthonormal frame, plus e^{-f}.
struct FrameCurvature {
  Tensor rm;
  Tensor ric;
  double weight = 1.0;
};
FrameCurvature frame_curvature(const SolitonSpec& s, const Point& p);

enum class QVariant { ndim, threedim };

double q_term(const SolitonSpec& s, const Point& p, QVariant variant);

/// Unweighted cubic brackets, so that Q = e^{-2f} * bracket. Inputs are frame
/// components of Rm and Ric.
double q_bracket_ndim(const Tensor& rm, const Tensor& ric);
double q_bracket_threedim(const Tensor& ric);
/// -2 Rm(E,E) - (n-2)/2 R |E|^2 + 1/2 R (tr E)^2 with E = Ric - R g / 2.
double q_bracket_rm(const Tensor& rm, const Tensor& ric);

struct WeitzenbockTerms {
  double half_laplacian = 0.0;  // 1/2 Delta |E^|^2
  double grad_norm2 = 0.0;      // |nabla E^|^2
  double drift = 0.0;           // 1/2 <nabla |E^|^2, nabla f>
  double lambda_term = 0.0;     // (n-2) lambda |E^|^2
  double q_ndim = 0.0;
  double q_rm = 0.0;            // the Rm(E^,E^) right side
  double residual_q = 0.0;      // scaled |lhs - rhs|, Q form
  double residual_rm = 0.0;     // scaled |lhs - rhs|, Rm form
  double scale = 1.0;
};

/// Both Weitzenbock forms with Delta|E^|^2 and its gradient taken from the
/// germ of the scalar |E^|^2.
WeitzenbockTerms weitzenbock(const SolitonSpec& s, const Point& p);
double weitzenbock_residual(const SolitonSpec& s, const Point& p);

/// Same left side with Delta|E^|^2 and <nabla|E^|^2, nabla f> taken by finite
/// differences of p -> |E^(p)|^2. Limited by rounding to ~1e-6 relative; the
/// residual is scaled by max(largest term, |E^|^2 max|g^kl|).
double weitzenbock_residual_fd(const SolitonSpec& s, const Point& p);

struct IdentityRecord {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct IdentityReport {
  std::string soliton;
  Point point;
  std::vector<IdentityRecord> records;
  bool pass() const;
};

/// Scaled residuals of the soliton identities: laplacian_R, ricci_laplacian,
/// trace, gradient_R, ricci_commutation, drift_laplacian_ricci.
IdentityReport soliton_identity_residuals(const SolitonSpec& s, const Point& p);

/// max |nabla_k E^_ij - nabla_j E^_ik| in the orthonormal frame (scaled).
double codazzi_residual_3d(const SolitonSpec& s, const Point& p);

/// Dimension 3: Rm rebuilt from Ric and R, compared in the frame (scaled).
double reconstruction_residual_3d(const SolitonSpec& s, const Point& p);

/// Kato: |nabla |S|| <= |nabla S| for S = E^ and S = Ric, and
/// |nabla Ric| >= |nabla R| / sqrt(n). Returns the worst slack (>= 0 holds).
struct KatoCheck {
  double weighted_einstein_slack = 0.0;
  double ricci_slack = 0.0;
  double gradient_ricci_slack = 0.0;
  bool applicable = true;  // |S| > 1e-8
};
KatoCheck kato_check(const SolitonSpec& s, const Point& p);

/// Contracted Bianchi: |div Ric - dR/2| (scaled).
double bianchi_residual(const SolitonSpec& s, const Point& p);

/// Curvature symmetries and first Bianchi (max abs, scaled by |Rm|).
double symmetry_residual(const SolitonSpec& s, const Point& p);

}  // namespace solitonlab::identity
