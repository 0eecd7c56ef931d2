#include <cmath>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/rotsym/profile.hpp"

using namespace th;
namespace cat = solitonlab::catalog;
namespace rs = solitonlab::rotsym;

TEST_CASE("gaussian branch") {
  rs::OdeConfig cfg;
  cfg.r_max = 10;
  const auto p = std::make_shared<rs::WarpedProfile>(rs::integrate_profile(3, -0.5, 0.0, cfg));
  for (double r : {0.01, 0.5, 2.0, 7.5}) {
    const auto st = p->state(r);
    CHECK(std::abs(st.w - r) < 1e-9);
    CHECK(std::abs(st.f + 0.25 * r * r) < 1e-9);
  }
  const auto s = cat::from_profile(p, "flat");
  for (double r : {0.5, 3.0}) CHECK(cat::soliton_residual(s, at_radius(s, r)) < 1e-9);
}

TEST_CASE("cigar from the ODE") {
  rs::OdeConfig cfg;
  cfg.r_max = 8;
  const auto p = rs::integrate_profile(2, 0.0, 4.0, cfg);
  for (double r : {0.5, 2.0, 6.0}) {
    CHECK(p.state(r).w == doctest::Approx(std::tanh(r)).epsilon(1e-9));
    CHECK(p.state(r).f == doctest::Approx(-2 * std::log(std::cosh(r))).epsilon(1e-9));
  }
}

TEST_CASE("steady Bryant") {
  const auto s = cat::bryant_steady_3();
  for (double r : {1.0, 5.0, 20.0}) CHECK(cat::soliton_residual(s, at_radius(s, r)) < 1e-5);
  const auto& p = *cat::bryant_profile(true);
  for (double r = 0.05; r < 900; r *= 1.7) {
    CHECK(p.radial_curvature(r) > 0);
    CHECK(p.spherical_curvature(r) > 0);
  }
  std::vector<Point> pts = cat::sample_points(s, 20, 2);
  CHECK(cat::hamilton_constant(s, pts).sample_spread < 1e-5);
}

TEST_CASE("expanding Bryant is positively curved") {
  const auto& p = *cat::bryant_profile(false);
  for (double r = 0.05; r < 290; r *= 1.7) {
    CHECK(p.radial_curvature(r) > 0);
    CHECK(p.spherical_curvature(r) > 0);
  }
}

TEST_CASE("asymptotic exponents") {
  const auto st = rs::asymptotic_exponents(*cat::bryant_profile(true));
  CHECK(std::abs(st.curvature_decay.value - 1.0) < 0.15);
  CHECK(std::abs(st.volume_growth.value - 2.0) < 0.15);
  CHECK_FALSE(st.exponential_decay);
  const auto ex = rs::asymptotic_exponents(*cat::bryant_profile(false));
  CHECK(std::abs(ex.curvature_decay.value - 2.0) < 0.2);
  CHECK(std::abs(ex.volume_growth.value - 3.0) < 0.2);
  const auto cg = rs::asymptotic_exponents(rs::cigar_profile(60));
  CHECK(cg.exponential_decay);
  CHECK(std::abs(cg.volume_growth.value - 1.0) < 0.05);
}

TEST_CASE("integrator cross-check") {
  rs::OdeConfig cfg;
  cfg.r_max = 30;
  const auto p = rs::integrate_profile(3, 0.0, 1.0, cfg);
  const std::vector<double> radii{0.5, 1, 5, 12, 30};
  const auto ref = rs::integrate_reference_rk45(3, 0.0, 1.0, cfg, radii);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const auto a = p.state(radii[i]);
    CHECK(std::abs(a.w - ref[i].w) < 1e-7 * std::max(1.0, a.w));
    CHECK(std::abs(a.f - ref[i].f) < 1e-7 * std::max(1.0, std::abs(a.f)));
  }
}

TEST_CASE("profile guards") {
  rs::OdeConfig cfg;
  cfg.r_max = 5e-3;
  const auto p = std::make_shared<rs::WarpedProfile>(rs::integrate_profile(3, 0.0, 1.0, cfg));
  CHECK_THROWS_WITH_AS(cat::from_profile(p), doctest::Contains("insufficient range"), solitonlab::RangeError);
  CHECK_THROWS_AS(rs::integrate_profile(3, 0.0, -1.0), solitonlab::InvalidArgument);
  CHECK_THROWS_AS(p->state(1.0), solitonlab::RangeError);
}

TEST_CASE("csv round trip") {
  rs::OdeConfig cfg;
  cfg.r_max = 5;
  const auto p = rs::integrate_profile(3, -0.5, 1.0, cfg);
  std::stringstream ss;
  rs::write_csv(p, ss);
  const auto q = rs::read_csv(ss);
  CHECK(q.radii().size() == p.radii().size());
  for (double r : {0.3, 1.7, 4.9}) {
    CHECK(q.state(r).w == doctest::Approx(p.state(r).w).epsilon(1e-14));
    CHECK(q.state(r).fp == doctest::Approx(p.state(r).fp).epsilon(1e-14));
  }
}
