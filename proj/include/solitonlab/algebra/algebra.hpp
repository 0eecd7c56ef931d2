#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "solitonlab/tensor/tensor.hpp"

namespace solitonlab::algebra {

/// Trace-free eigenvalues lambda_i of T together with the sectional
/// curvatures sigma_ij of the coordinate planes of the T-eigenframe.
struct EigenSystem {
  int n = 0;
  std::vector<double> lambda;
  std::vector<double> sigma;  // n*n, symmetric, zero diagonal

  double s(int i, int j) const { return sigma[static_cast<std::size_t>(i * n + j)]; }
  double& s(int i, int j) { return sigma[static_cast<std::size_t>(i * n + j)]; }
  double scalar() const;   // R = sum_{i != j} sigma_ij
  double t_norm2() const;  // |T|^2
  double scale() const;    // R + |T|
  /// Throws InvalidArgument when an invariant fails.
  void validate() const;
};

struct RicciSpectrum {
  double mu[3] = {0, 0, 0};
};

double poly_P(double x, double y, double z);

/// The pieces of P = Pbar + 3xyz: the cyclic form and the sorted-variable
/// form of Pbar.
struct PolyDecomposition {
  double P = 0.0;
  double pbar_cyclic = 0.0;
  double pbar_sorted = 0.0;
};
PolyDecomposition poly_P_decomposition(double x, double y, double z);

/// ((n-2)/2n) R |T|^2 - sum_ij lambda_i lambda_j sigma_ij
double p_est_gap(const EigenSystem& es);

/// (n-2)^3/(4n^2) R^3 - 2 sum lambda_i lambda_j sigma_ij - (n-2)(n-4)/(2n) R |T|^2
double q_spectrum(const EigenSystem& es);

/// Same quantity by explicit four-index contraction of the curvature tensor
/// built from sigma, after a random rotation of the frame.
double q_spectrum_bruteforce(const EigenSystem& es, std::uint64_t rotation_seed);

/// Smallest slack of the Cauchy-Schwarz step over all pairs i < j:
/// sum_{k != i,j} lambda_k^2 - (lambda_i + lambda_j)^2 / (n - 2).
double cauchy_schwarz_slack(const EigenSystem& es);

/// 4 R_ij R_jk R_ki - 7/2 R |Ric|^2 + 3/4 R^3 for a diagonal Ricci.
double q_ricci_3d(const RicciSpectrum& rs);

enum class EqualityCase { flat, split_case, generic };
std::string to_string(EqualityCase c);

/// Classifies a Ricci spectrum: flat (all |mu| < 1e-8), split_case
/// ({0 x (n-2), R/2, R/2} within 1e-8 R) or generic. The second algebraic
/// branch Lambda = 2R/n is reported as generic.
EqualityCase equality_case_detect(std::vector<double> spectrum, double R);

/// Ricci eigenvalues of a system: lambda_i + R/n.
std::vector<double> ricci_spectrum(const EigenSystem& es);

enum class Family { generic, near_equality, boundary };
std::string to_string(Family f);

/// Deterministic sample. Eigenvalues are those of the traceless Ricci tensor
/// the sigma data induce, lambda_i = sum_j sigma_ij - R/n.
EigenSystem gen_sample(int n, std::uint64_t seed, Family family);

/// System with sigma given and trace-free lambda drawn freely, for checks
/// that do not need the Ricci consistency.
EigenSystem gen_free_sample(int n, std::uint64_t seed);

/// Extracts the system from frame components of Rm and Ric at a point.
EigenSystem extract(const tensor::Tensor& rm_frame, const tensor::Tensor& ric_frame);

}  // namespace solitonlab::algebra
