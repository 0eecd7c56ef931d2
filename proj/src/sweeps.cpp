#include "solitonlab/sweeps.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "solitonlab/algebra/algebra.hpp"
#include "solitonlab/identity/identities.hpp"

namespace solitonlab::sweep {

int max_threads() { return omp_get_max_threads(); }

std::uint64_t item_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<Outcome<double>> residual_sweep(const catalog::SolitonSpec& s, const std::vector<tensor::Point>& pts,
                                            Mode mode) {
  return map(mode, pts.size(), [&](std::size_t i) { return catalog::soliton_residual(s, pts[i]); });
}

std::vector<Outcome<double>> weitzenbock_sweep(const catalog::SolitonSpec& s, const std::vector<tensor::Point>& pts,
                                               Mode mode) {
  return map(mode, pts.size(), [&](std::size_t i) { return identity::weitzenbock_residual(s, pts[i]); });
}

namespace {

// work is cut into fixed blocks so serial and parallel runs see the same seeds
constexpr long kBlock = 256;

struct BlockSystems {
  double gap = std::numeric_limits<double>::infinity();
  double q = std::numeric_limits<double>::infinity();
  double cs = std::numeric_limits<double>::infinity();
  double oracle = 0.0;
  long rigidity = 0;
};

BlockSystems system_block(int n, long first, long last, std::uint64_t seed) {
  using namespace algebra;
  BlockSystems b;
  constexpr Family fams[3] = {Family::generic, Family::near_equality, Family::boundary};
  for (long i = first; i < last; ++i) {
    const std::uint64_t sd = item_seed(seed, static_cast<std::uint64_t>(i));
    const EigenSystem es = gen_sample(n, sd, fams[i % 3]);
    const double sc = es.scale();
    const double q = q_spectrum(es);
    b.gap = std::min(b.gap, p_est_gap(es) / std::max(sc, 1e-300));
    b.q = std::min(b.q, q / std::max(sc, 1e-300));
    const EigenSystem fr = gen_free_sample(n, sd);
    b.gap = std::min(b.gap, p_est_gap(fr) / std::max(fr.scale(), 1e-300));
    b.cs = std::min(b.cs, cauchy_schwarz_slack(fr) / std::max(fr.t_norm2(), 1e-300));
    b.cs = std::min(b.cs, cauchy_schwarz_slack(es) / std::max(es.t_norm2(), 1e-300));
    if (n == 4) {
      const double bf = q_spectrum_bruteforce(es, sd);
      b.oracle = std::max(b.oracle, std::abs(bf - q) / std::max(1.0, std::abs(q)));
    }
    // equality forces the flat or split spectrum
    if (q <= 1e-12 * sc * sc * sc) {
      const auto c = equality_case_detect(ricci_spectrum(es), es.scalar());
      if (c == EqualityCase::generic) ++b.rigidity;
    }
  }
  return b;
}

struct BlockTriple {
  double margin = std::numeric_limits<double>::infinity();
  double asym = 0.0;
  double line = 0.0;
  long off = 0;
};

double line_distance(double x, double y, double z) {
  // lines {x = 0, y = z} and permutations, for nonnegative data
  auto d = [](double a, double b, double c) { return std::hypot(a, (b - c) / std::sqrt(2.0)); };
  return std::min({d(x, y, z), d(y, x, z), d(z, x, y)});
}

BlockTriple triple_block(long first, long last, std::uint64_t seed) {
  BlockTriple b;
  for (long i = first; i < last; ++i) {
    std::mt19937_64 rng(item_seed(seed, static_cast<std::uint64_t>(i)));
    std::array<double, 3> v{};
    const int kind = static_cast<int>(i % 10);
    if (kind < 8) {
      for (auto& x : v) x = catalog::uniform01(rng);
    } else {
      // on an equality line, optionally nudged by <= 1e-9 relative
      const double y = catalog::uniform01(rng) + 1e-3;
      const int slot = static_cast<int>(rng() % 3);
      v = {y, y, y};
      v[slot] = 0.0;
      if (kind == 9) {
        for (auto& x : v) x = std::max(0.0, x + 1e-9 * y * (2 * catalog::uniform01(rng) - 1));
      }
    }
    const double sc = std::max({v[0], v[1], v[2], 1e-300});
    const double s3 = sc * sc * sc;
    const double P = algebra::poly_P(v[0], v[1], v[2]);
    b.margin = std::min(b.margin, (P - 3 * v[0] * v[1] * v[2]) / s3);
    std::array<int, 3> perm{0, 1, 2};
    double lo = P, hi = P;
    do {
      const double q = algebra::poly_P(v[perm[0]], v[perm[1]], v[perm[2]]);
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    } while (std::next_permutation(perm.begin(), perm.end()));
    b.asym = std::max(b.asym, (hi - lo) / s3);
    const double dist = line_distance(v[0], v[1], v[2]) / sc;
    if (kind == 8) b.line = std::max(b.line, std::abs(P) / s3);
    // P grows linearly off the lines except along {x = 0, y != z}, where it is
    // quadratic: P(0,y,z) = 5 (y + z)(y - z)^2, so rounding in P (~eps) hides
    // distances up to ~sqrt(eps) there
    const double pn = P / s3;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (pn <= 1e-9 && dist > 1e-9 + 2 * std::sqrt(std::max(pn, 0.0) + 16 * eps)) ++b.off;
  }
  return b;
}

template <class B, class K>
std::vector<B> blocks(long count, Mode mode, K&& kernel) {
  const long nb = (count + kBlock - 1) / kBlock;
  auto res = map(mode, static_cast<std::size_t>(nb), [&](std::size_t k) {
    const long first = static_cast<long>(k) * kBlock;
    return kernel(first, std::min(count, first + kBlock));
  });
  std::vector<B> out;
  for (auto& r : res) {
    if (!r.ok()) throw Error("property sweep block failed: " + r.error);
    out.push_back(*r.value);
  }
  return out;
}

}  // namespace

SystemStats system_sweep(int n, long count, std::uint64_t seed, Mode mode) {
  const auto bs = blocks<BlockSystems>(count, mode, [&](long a, long b) { return system_block(n, a, b, seed); });
  SystemStats st;
  st.min_gap = st.min_q = st.min_cs = std::numeric_limits<double>::infinity();
  for (const auto& b : bs) {
    st.min_gap = std::min(st.min_gap, b.gap);
    st.min_q = std::min(st.min_q, b.q);
    st.min_cs = std::min(st.min_cs, b.cs);
    st.max_oracle = std::max(st.max_oracle, b.oracle);
    st.rigidity_violations += b.rigidity;
  }
  st.count = count;
  return st;
}

TripleStats triple_sweep(long count, std::uint64_t seed, Mode mode) {
  const auto bs = blocks<BlockTriple>(count, mode, [&](long a, long b) { return triple_block(a, b, seed); });
  TripleStats st;
  st.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& b : bs) {
    st.min_margin = std::min(st.min_margin, b.margin);
    st.max_asymmetry = std::max(st.max_asymmetry, b.asym);
    st.max_line_P = std::max(st.max_line_P, b.line);
    st.off_line_zeros += b.off;
  }
  st.count = count;
  return st;
}

}  // namespace solitonlab::sweep
