#include "solitonlab/algebra/algebra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "solitonlab/error.hpp"

namespace solitonlab::algebra {

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void consistent_lambda(EigenSystem& es) {
  const double R = es.scalar();
  es.lambda.assign(static_cast<std::size_t>(es.n), 0.0);
  for (int i = 0; i < es.n; ++i) {
    double r = 0.0;
    for (int j = 0; j < es.n; ++j) r += es.s(i, j);
    es.lambda[i] = r - R / es.n;
  }
}

EigenSystem empty(int n) {
  if (n < 3) throw DimensionError("eigen systems need n >= 3");
  EigenSystem es;
  es.n = n;
  es.sigma.assign(static_cast<std::size_t>(n * n), 0.0);
  es.lambda.assign(static_cast<std::size_t>(n), 0.0);
  return es;
}

double sum_ll_sigma(const EigenSystem& es) {
  double acc = 0.0;
  for (int i = 0; i < es.n; ++i)
    for (int j = 0; j < es.n; ++j) acc += es.lambda[i] * es.lambda[j] * es.s(i, j);
  return acc;
}

}  // namespace

double EigenSystem::scalar() const {
  double R = 0.0;
  for (double v : sigma) R += v;
  return R;
}

double EigenSystem::t_norm2() const {
  double t = 0.0;
  for (double l : lambda) t += l * l;
  return t;
}

double EigenSystem::scale() const { return scalar() + std::sqrt(t_norm2()); }

void EigenSystem::validate() const {
  if (n < 3 || static_cast<int>(lambda.size()) != n || static_cast<int>(sigma.size()) != n * n) {
    throw InvalidArgument("eigen system: inconsistent sizes");
  }
  double tr = 0.0, mag = 0.0;
  for (double l : lambda) {
    tr += l;
    mag = std::max(mag, std::abs(l));
  }
  if (std::abs(tr) > 1e-12 * std::max(1.0, mag) * n) throw InvalidArgument("eigen system: eigenvalues not trace-free");
  for (int i = 0; i < n; ++i) {
    if (s(i, i) != 0.0) throw InvalidArgument("eigen system: sigma has a nonzero diagonal");
    for (int j = 0; j < n; ++j) {
      if (s(i, j) < 0.0) throw InvalidArgument("eigen system: negative sectional curvature");
      if (s(i, j) != s(j, i)) throw InvalidArgument("eigen system: sigma not symmetric");
    }
  }
}

PolyDecomposition poly_P_decomposition(double x, double y, double z) {
  if (x < 0 || y < 0 || z < 0) throw InvalidArgument("poly_P needs nonnegative arguments");
  PolyDecomposition d;
  d.P = 5 * (x * x * x + y * y * y + z * z * z) -
        5 * (x * x * y + x * y * y + x * x * z + x * z * z + y * y * z + y * z * z) + 18 * x * y * z;
  d.pbar_cyclic = 5 * x * (x - z) * (x - y) + 5 * y * (y - z) * (y - x) + 5 * z * (z - x) * (z - y);
  double v[3] = {x, y, z};
  std::sort(v, v + 3);
  const double a = v[0], b = v[1], c = v[2];
  d.pbar_sorted = 5 * a * (a - c) * (a - b) + 5 * (c - b) * (c - b) * (c + b - a);
  return d;
}

double poly_P(double x, double y, double z) {
  const auto d = poly_P_decomposition(x, y, z);
  const double s = std::max({x, y, z});
  if (std::abs(d.P - d.pbar_sorted - 3 * x * y * z) > 1e-12 * 64 * s * s * s) {
    throw Error("poly_P: decomposition mismatch");
  }
  return d.P;
}

double p_est_gap(const EigenSystem& es) {
  es.validate();
  const int n = es.n;
  return (n - 2.0) / (2.0 * n) * es.scalar() * es.t_norm2() - sum_ll_sigma(es);
}

double q_spectrum(const EigenSystem& es) {
  es.validate();
  const double n = es.n, R = es.scalar();
  return std::pow(n - 2, 3) / (4 * n * n) * R * R * R - 2 * sum_ll_sigma(es) -
         (n - 2) * (n - 4) / (2 * n) * R * es.t_norm2();
}

double q_spectrum_bruteforce(const EigenSystem& es, std::uint64_t rotation_seed) {
  es.validate();
  const int n = es.n;
  // curvature tensor with R_ijij = sigma_ij in the eigenframe
  tensor::Tensor rm(n, 4, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      rm(i, j, i, j) = es.s(i, j);
      rm(i, j, j, i) = -es.s(i, j);
    }
  std::mt19937_64 rng(rotation_seed);
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = 2 * uniform01(rng) - 1;
  const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(A).householderQ();
  // rotate: X'_{abcd} = Q_ia Q_jb Q_kc Q_ld X_ijkl
  tensor::Tensor r2 = rm;
  for (int pos = 0; pos < 4; ++pos) {
    tensor::Tensor next(n, 4, 0.0);
    for (std::size_t f = 0; f < next.size(); ++f) {
      auto idx = next.unflat(f);
      const int a = idx[pos];
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        idx[pos] = i;
        acc += Q(i, a) * r2(idx[0], idx[1], idx[2], idx[3]);
      }
      next.at(f) = acc;
    }
    r2 = next;
  }
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) T(i, i) = es.lambda[i];
  T = Q.transpose() * T * Q;
  double R = 0.0, contr = 0.0, T2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      R += r2(i, j, i, j);
      T2 += T(i, j) * T(i, j);
      for (int k = 0; k < n; ++k)
        for (int t = 0; t < n; ++t) contr += r2(i, k, j, t) * T(i, j) * T(k, t);
    }
  const double nn = n;
  return std::pow(nn - 2, 3) / (4 * nn * nn) * R * R * R - 2 * contr - (nn - 2) * (nn - 4) / (2 * nn) * R * T2;
}

double cauchy_schwarz_slack(const EigenSystem& es) {
  const int n = es.n;
  double worst = std::numeric_limits<double>::infinity();
  const double total = es.t_norm2();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double rest = total - es.lambda[i] * es.lambda[i] - es.lambda[j] * es.lambda[j];
      const double s = es.lambda[i] + es.lambda[j];
      worst = std::min(worst, rest - s * s / (n - 2));
    }
  return worst;
}

double q_ricci_3d(const RicciSpectrum& rs) {
  double R = 0, r2 = 0, r3 = 0;
  for (double m : rs.mu) {
    if (m < 0) throw InvalidArgument("q_ricci_3d needs nonnegative Ricci eigenvalues");
    R += m;
    r2 += m * m;
    r3 += m * m * m;
  }
  return 4 * r3 - 3.5 * R * r2 + 0.75 * R * R * R;
}

std::string to_string(EqualityCase c) {
  switch (c) {
    case EqualityCase::flat: return "flat";
    case EqualityCase::split_case: return "split_case";
    case EqualityCase::generic: return "generic";
  }
  return "?";
}

EqualityCase equality_case_detect(std::vector<double> spectrum, double R) {
  const std::size_t n = spectrum.size();
  double mag = 0.0;
  for (double m : spectrum) mag = std::max(mag, std::abs(m));
  if (mag < 1e-8) return EqualityCase::flat;
  if (n < 2) return EqualityCase::generic;
  std::sort(spectrum.begin(), spectrum.end());
  const double tol = 1e-8 * std::abs(R);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    if (std::abs(spectrum[i]) > tol) return EqualityCase::generic;
  }
  if (std::abs(spectrum[n - 2] - R / 2) > tol || std::abs(spectrum[n - 1] - R / 2) > tol) {
    return EqualityCase::generic;
  }
  return EqualityCase::split_case;
}

std::vector<double> ricci_spectrum(const EigenSystem& es) {
  std::vector<double> mu(es.lambda);
  const double R = es.scalar();
  for (double& m : mu) m += R / es.n;
  return mu;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::generic: return "generic";
    case Family::near_equality: return "near_equality";
    case Family::boundary: return "boundary";
  }
  return "?";
}

EigenSystem gen_sample(int n, std::uint64_t seed, Family family) {
  EigenSystem es = empty(n);
  std::mt19937_64 rng(seed);
  switch (family) {
    case Family::generic:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.s(i, j) = es.s(j, i) = uniform01(rng);
      break;
    case Family::near_equality: {
      // split witness: a single positive plane, then nonnegative noise <= 1e-3
      const double s12 = 0.5;  // R = 1 before the noise
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.s(i, j) = es.s(j, i) = 1e-3 * uniform01(rng);
      es.s(0, 1) += s12;
      es.s(1, 0) = es.s(0, 1);
      break;
    }
    case Family::boundary: {
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.s(i, j) = es.s(j, i) = uniform01(rng);
      bool zeroed = false;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (uniform01(rng) < 0.5) {
            es.s(i, j) = es.s(j, i) = 0.0;
            zeroed = true;
          }
      if (!zeroed) es.s(0, 1) = es.s(1, 0) = 0.0;
      break;
    }
  }
  consistent_lambda(es);
  return es;
}

EigenSystem gen_free_sample(int n, std::uint64_t seed) {
  EigenSystem es = gen_sample(n, seed, Family::generic);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  double mean = 0.0;
  for (auto& l : es.lambda) {
    l = 2 * uniform01(rng) - 1;
    mean += l;
  }
  mean /= n;
  for (auto& l : es.lambda) l -= mean;
  return es;
}

EigenSystem extract(const tensor::Tensor& rm, const tensor::Tensor& ric) {
  const int n = ric.dim();
  Eigen::MatrixXd M(n, n);
  double R = 0.0;
  for (int i = 0; i < n; ++i) R += ric(i, i);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = 0.5 * (ric(i, j) + ric(j, i)) - (i == j ? R / n : 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  const Eigen::MatrixXd V = es.eigenvectors();
  EigenSystem out = empty(n);
  double mean = 0.0;
  for (int i = 0; i < n; ++i) mean += es.eigenvalues()(i);
  for (int i = 0; i < n; ++i) out.lambda[i] = es.eigenvalues()(i) - mean / n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) acc += rm(i, j, k, l) * V(i, a) * V(j, b) * V(k, a) * V(l, b);
      out.s(a, b) = acc;
    }
  // symmetrize and clip rounding-level negatives so the system validates
  double mag = 0.0;
  for (double v : out.sigma) mag = std::max(mag, std::abs(v));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      double v = 0.5 * (out.s(a, b) + out.s(b, a));
      if (v < 0.0 && v > -1e-12 * std::max(1.0, mag)) v = 0.0;
      out.s(a, b) = out.s(b, a) = v;
    }
  return out;
}

}  // namespace solitonlab::algebra
