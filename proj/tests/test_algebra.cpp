#include <cmath>

#include "doctest.h"
#include "solitonlab/algebra/algebra.hpp"
#include "solitonlab/error.hpp"

namespace al = solitonlab::algebra;

namespace {

al::EigenSystem sys(int n, std::vector<double> lambda) {
  al::EigenSystem e;
  e.n = n;
  e.lambda = std::move(lambda);
  e.sigma.assign(static_cast<std::size_t>(n * n), 0.0);
  return e;
}

void set(al::EigenSystem& e, int i, int j, double v) {
  e.s(i, j) = v;
  e.s(j, i) = v;
}

// P rebuilt from the sorted-variable form of Pbar
double pbar_sorted_plus(double x, double y, double z) {
  const auto d = al::poly_P_decomposition(x, y, z);
  return d.pbar_sorted + 3 * x * y * z;
}

}  // namespace

TEST_CASE("polynomial P") {
  CHECK(al::poly_P(0, 1, 1) == 0.0);
  CHECK(al::poly_P(1, 1, 1) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(al::poly_P(2, 1, 0) == doctest::Approx(15.0).epsilon(1e-15));
  CHECK(pbar_sorted_plus(2, 1, 0) == doctest::Approx(15.0).epsilon(1e-15));
  CHECK(al::poly_P_decomposition(1.3, 0.2, 0.7).pbar_cyclic ==
        doctest::Approx(al::poly_P_decomposition(1.3, 0.2, 0.7).pbar_sorted).epsilon(1e-13));
  // quadratic vanishing across the line x = 0, y = z
  CHECK(al::poly_P(0, 1, 1 + 1e-3) == doctest::Approx(5 * (2 + 1e-3) * 1e-6).epsilon(1e-9));
  CHECK_THROWS_AS(al::poly_P(-1, 1, 1), solitonlab::InvalidArgument);
}

TEST_CASE("contraction gap") {
  const double t = 0.37;
  auto e = sys(3, {2 * t, -t, -t});
  set(e, 0, 1, 1);
  set(e, 0, 2, 1);
  set(e, 1, 2, 1);
  CHECK(e.scalar() == 6.0);
  CHECK(e.t_norm2() == doctest::Approx(6 * t * t));
  CHECK(al::p_est_gap(e) == doctest::Approx(12 * t * t).epsilon(1e-14));

  auto z = sys(4, {1, -2, 0.5, 0.5});
  CHECK(al::p_est_gap(z) == 0.0);

  // lambda_1 = lambda_2, the rest equal, only sigma_12 > 0
  auto w = sys(5, {0.3, 0.3, -0.2, -0.2, -0.2});
  set(w, 0, 1, 0.8);
  CHECK(std::abs(al::p_est_gap(w)) < 1e-15);
}

TEST_CASE("Q from the spectrum") {
  CHECK(al::q_spectrum(sys(4, {0, 0, 0, 0})) == 0.0);
  for (int n = 3; n <= 6; ++n) {
    // Ric spectrum {0, .., 0, R/2, R/2} with a single sigma_12 = R/2
    const double R = 2.0;
    std::vector<double> lam(static_cast<std::size_t>(n), -R / n);
    lam[0] = lam[1] = R / 2 - R / n;
    auto e = sys(n, lam);
    set(e, 0, 1, R / 2);
    e.validate();
    CHECK(std::abs(al::q_spectrum(e)) < 1e-14);
    CHECK(al::equality_case_detect(al::ricci_spectrum(e), R) == al::EqualityCase::split_case);
  }
}

TEST_CASE("brute-force oracle, n = 4") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto e = al::gen_sample(4, seed, al::Family::generic);
    const double q = al::q_spectrum(e);
    CHECK(std::abs(q - al::q_spectrum_bruteforce(e, seed + 100)) < 1e-10 * std::max(1.0, std::pow(e.scale(), 3)));
  }
}

TEST_CASE("three-dimensional bridge") {
  const auto q3 = [](double a, double b, double c) {
    al::RicciSpectrum r;
    r.mu[0] = a;
    r.mu[1] = b;
    r.mu[2] = c;
    return al::q_ricci_3d(r);
  };
  CHECK(std::abs(q3(0, 1, 1)) < 1e-15);
  CHECK(q3(1, 1, 1) == doctest::Approx(0.75));
  CHECK(q3(0, 1, 2) == doctest::Approx(3.75));
  for (double a : {0.1, 0.9, 2.3})
    for (double b : {0.0, 0.4, 1.7}) {
      const double c = 0.6;
      const double p = al::poly_P(a, b, c);
      CHECK(std::abs(4 * q3(a, b, c) - p) <= 1e-12 * std::max(std::abs(p), std::pow(a + b + c, 3)));
    }
}

TEST_CASE("equality classification") {
  CHECK(al::equality_case_detect({0, 2, 2}, 4) == al::EqualityCase::split_case);
  CHECK(al::equality_case_detect({0, 0, 0}, 0) == al::EqualityCase::flat);
  CHECK(al::equality_case_detect({1, 1, 1}, 3) == al::EqualityCase::generic);
}

TEST_CASE("sample generators") {
  const auto a = al::gen_sample(3, 42, al::Family::generic), b = al::gen_sample(3, 42, al::Family::generic);
  CHECK(a.lambda == b.lambda);
  CHECK(a.sigma == b.sigma);
  CHECK(a.sigma != al::gen_sample(3, 43, al::Family::generic).sigma);

  const auto bd = al::gen_sample(4, 1, al::Family::boundary);
  int zeros = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) zeros += bd.s(i, j) == 0.0;
  CHECK(zeros >= 1);

  const auto ne = al::gen_sample(5, 7, al::Family::near_equality);
  CHECK(al::q_spectrum(ne) <= 1e-2 * ne.scale());
  CHECK(al::q_spectrum(ne) >= -1e-12 * std::pow(ne.scale(), 3));

  for (int n = 3; n <= 6; ++n)
    for (std::uint64_t s = 0; s < 50; ++s) {
      const auto e = al::gen_sample(n, s, static_cast<al::Family>(s % 3));
      e.validate();
      const double sc3 = std::pow(e.scale(), 3);
      CHECK(al::p_est_gap(e) >= -1e-12 * sc3);
      CHECK(al::q_spectrum(e) >= -1e-12 * sc3);
      const auto f = al::gen_free_sample(n, s);
      CHECK(al::p_est_gap(f) >= -1e-12 * std::pow(f.scale(), 3));
    }
}

TEST_CASE("invariant violations") {
  auto e = sys(3, {1, 1, 1});
  CHECK_THROWS_AS(e.validate(), solitonlab::InvalidArgument);
  auto f = sys(3, {1, -1, 0});
  set(f, 0, 1, -0.5);
  CHECK_THROWS_AS(f.validate(), solitonlab::InvalidArgument);
}
