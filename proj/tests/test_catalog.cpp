#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "solitonlab/error.hpp"

using namespace th;
namespace cat = solitonlab::catalog;

TEST_CASE("gaussian soliton") {
  const auto s = cat::gaussian(3, -0.5);
  CHECK(s.kind == cat::Kind::expanding);
  for (const auto& p : cat::sample_points(s, 50, 3)) CHECK(cat::soliton_residual(s, p) < 1e-12);
  const auto h = cat::hamilton_constant(s, cat::sample_points(s, 20, 4));
  CHECK(std::abs(h.c) < 1e-12);
  CHECK(h.sample_spread < 1e-12);
  CHECK_THROWS_WITH_AS(cat::pinching_alpha(s, cat::sample_points(s, 5, 1)), doctest::Contains("flat: pinching undefined"),
                       solitonlab::DomainError);
}

TEST_CASE("cigar") {
  const auto s = cat::cigar();
  CHECK(cat::soliton_residual(s, at_radius(s, 3.0)) <= 1e-9);
  const auto h = cat::hamilton_constant(s, cat::sample_points(s, 50, 9));
  CHECK(h.c == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(h.sample_spread < 1e-8);
  std::vector<Point> far;
  for (int i = 0; i < 100; ++i) far.push_back(at_radius(s, 0.1 * (i + 1)));
  CHECK(std::isfinite(cat::pinching_alpha(s, far)));
}

TEST_CASE("negative control") {
  const auto s = cat::perturbed_control();
  CHECK(cat::soliton_residual(s, Point{0.7, -0.4}) > 1e-3);
}

TEST_CASE("cigar cylinder Ricci spectrum") {
  const auto s = cat::cigar_cylinder(4);
  for (const auto& p : cat::sample_points(s, 5, 11)) {
    const auto c = riemann_ricci_scalar(*s.metric, p);
    Matrix ric(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) ric(i, j) = c.ricci(i, j);
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(ric, c.metric);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 4);
    std::sort(ev.begin(), ev.end());
    CHECK(std::abs(ev[0]) < 1e-13);
    CHECK(std::abs(ev[1]) < 1e-13);
    CHECK(ev[2] == doctest::Approx(c.scalar / 2).epsilon(1e-12));
    CHECK(ev[3] == doctest::Approx(c.scalar / 2).epsilon(1e-12));
  }
}

TEST_CASE("sphere pinching is homogeneous") {
  const auto s = cat::sphere_shrinker(2);
  const double a = cat::pinching_alpha(s, cat::sample_points(s, 10, 1));
  const double b = cat::pinching_alpha(s, cat::sample_points(s, 10, 2));
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
  CHECK(s.kind == cat::Kind::einstein);
}

TEST_CASE("every catalog entry is a soliton") {
  for (const auto& name : cat::catalog_names()) {
    if (name == "perturbed_control") continue;
    CAPTURE(name);
    const auto s = cat::make_soliton(name);
    double worst = 0;
    for (const auto& p : cat::sample_points(s, 10, 5)) worst = std::max(worst, cat::soliton_residual(s, p));
    CHECK(worst < s.residual_tolerance());
    const auto fl = cat::verify_flags(s, cat::sample_points(s, 10, 6), 1e-9);
    CHECK(fl.consistent);
  }
  CHECK_THROWS_AS(cat::make_soliton("nope"), solitonlab::InvalidArgument);
}

TEST_CASE("sampling is deterministic") {
  const auto s = cat::cigar_cylinder(3);
  const auto a = cat::sample_points(s, 8, 42), b = cat::sample_points(s, 8, 42);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].coords() == b[i].coords());
}
