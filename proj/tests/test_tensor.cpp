#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/jet.hpp"
#include "solitonlab/tensor/finite_difference.hpp"

using namespace th;
using solitonlab::catalog::cigar;
using solitonlab::catalog::cigar_cylinder;

TEST_CASE("jets differentiate exactly") {
  const auto& sp = solitonlab::JetSpace::get(2, 4);
  const Jet x = Jet::variable(sp, 0, 0.3), y = Jet::variable(sp, 1, -1.2);
  const Jet u = exp(x * y) / (1.0 + square(x));
  // d/dx at (0.3, -1.2)
  const double e = std::exp(0.3 * -1.2), q = 1 + 0.09;
  const double ux = -1.2 * e / q - e * 0.6 / (q * q);
  CHECK(u.value() == doctest::Approx(e / q).epsilon(1e-15));
  CHECK(u.partial({0}) == doctest::Approx(ux).epsilon(1e-14));
  CHECK(u.partial({1, 1, 1, 1}) == doctest::Approx(std::pow(0.3, 4) * e / q).epsilon(1e-13));
  CHECK_THROWS_AS(u.partial({0, 0, 0, 0, 1}), solitonlab::DerivativeOrderError);
}

TEST_CASE("christoffel symbols") {
  SUBCASE("euclidean") {
    const auto g = euclidean(3);
    const auto G = christoffel(g, Point{0.4, -1.0, 2.0});
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(G(k, i, j) == 0.0);
  }
  SUBCASE("polar plane at r = 2") {
    const auto G = christoffel(polar_plane(), Point{2.0, 0.7});
    CHECK(G(0, 1, 1) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(G(1, 0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(G(1, 1, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(G(0, 0, 0) == 0.0);
    CHECK(G(0, 0, 1) == 0.0);
    CHECK(G(1, 0, 0) == 0.0);
    CHECK(G(1, 1, 1) == 0.0);
  }
  SUBCASE("cigar at the origin") {
    const auto s = cigar();
    const auto G = christoffel(*s.metric, s.origin);
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(G(k, i, j)) < 1e-15);
    // FD oracle on the metric derivatives agrees as well
    CHECK(metric_oracle(*s.metric, s.origin, 2).max_rel_error < 1e-8);
  }
}

TEST_CASE("curvature of model spaces") {
  SUBCASE("unit sphere") {
    const auto c = riemann_ricci_scalar(sphere2(), Point{0.3, -0.8});
    CHECK(c.scalar == doctest::Approx(2.0).epsilon(1e-13));
    Vector u(2), v(2);
    u << 1, 0;
    v << 0.4, 1;
    CHECK(sectional(c, u, v) == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("euclidean") {
    const auto c = riemann_ricci_scalar(euclidean(4), Point{1, 2, 3, 4});
    CHECK(max_abs(c.riemann) == 0.0);
    CHECK(c.scalar == 0.0);
  }
  SUBCASE("cigar R = 4 / cosh^2 r") {
    const auto s = cigar();
    for (double r : {0.0, 0.5, 1.0, 3.0, 6.0}) {
      const auto c = riemann_ricci_scalar(*s.metric, at_radius(s, r));
      const double want = 4 / std::pow(std::cosh(r), 2);
      CHECK(c.scalar == doctest::Approx(want).epsilon(1e-12));
      Vector u(2), v(2);
      u << 1, 0;
      v << 0, 1;
      CHECK(sectional(c, u, v) == doctest::Approx(want / 2).epsilon(1e-12));
    }
  }
  SUBCASE("mixed plane of the cigar cylinder") {
    const auto s = cigar_cylinder(3);
    const auto c = riemann_ricci_scalar(*s.metric, at_radius(s, 1.0));
    Vector u(3), v(3);
    u << 0.6, 0.8, 0;
    v << 0, 0, 1;
    CHECK(std::abs(sectional(c, u, v)) < 1e-15);
  }
  SUBCASE("degenerate plane is rejected") {
    const auto c = riemann_ricci_scalar(sphere2(), Point{0.1, 0.1});
    Vector u(2);
    u << 1, 2;
    CHECK_THROWS_AS(sectional(c, u, 2 * u), solitonlab::InvalidArgument);
  }
}

TEST_CASE("covariant derivatives") {
  const auto s = cigar_cylinder(4);
  const Point p = at_radius(s, 1.3);
  CHECK(max_abs(cov_deriv(*s.metric, *metric_field(*s.metric), p)) < 1e-14);

  const auto e = euclidean(3);
  CHECK(max_abs(cov_deriv(e, *scalar_curvature_field(e), Point{1, 2, 3})) == 0.0);

  // contracted Bianchi on the cigar at r = 1
  const auto c = cigar();
  const Point q = at_radius(c, 1.0);
  const Tensor dric = cov_deriv(*c.metric, *ricci_field(*c.metric), q);
  const Tensor dR = cov_deriv(*c.metric, *scalar_curvature_field(*c.metric), q);
  const Matrix gi = riemann_ricci_scalar(*c.metric, q).inverse;
  for (int j = 0; j < 2; ++j) {
    double div = 0;
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) div += gi(i, k) * dric(i, j, k);
    CHECK(std::abs(div - 0.5 * dR(j)) < 1e-8);
  }
}

TEST_CASE("hessian and gradient") {
  const auto e = euclidean(3);
  const double lam = -0.7;
  const FunctionScalar f([lam](std::span<const Jet> x) { return 0.5 * lam * squared_norm(x, 0, 3); });
  const Point p{0.5, -1.0, 2.0};
  const auto h = hessian_grad(e, f, p);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(h.hessian(i, j) == doctest::Approx(i == j ? lam : 0.0));
  CHECK(h.grad_norm2 == doctest::Approx(lam * lam * 5.25));

  const FunctionScalar c([](std::span<const Jet> x) { return Jet(x[0].space(), 3.0); });
  const auto hc = hessian_grad(e, c, p);
  CHECK(max_abs(hc.hessian) == 0.0);
  CHECK(hc.grad_norm2 == 0.0);

  // steady identity R + Delta f = 0 on the cigar
  const auto cg = cigar();
  for (double r : {0.3, 1.0, 4.0}) {
    const Point q = at_radius(cg, r);
    const auto hg = hessian_grad(*cg.metric, *cg.potential, q);
    const double R = riemann_ricci_scalar(*cg.metric, q).scalar;
    CHECK(std::abs(hg.laplacian + R) < 1e-12);
  }
}

TEST_CASE("drift laplacian") {
  const auto e = euclidean(4);
  const ScalarAsField r2([](std::span<const Jet> x) { return squared_norm(x, 0, 4); });
  const auto zero = [](const Point&) { return Vector::Zero(4).eval(); };
  CHECK(drift_laplacian(e, r2, zero, Point{1, -2, 0.5, 3}).at(0) == doctest::Approx(8.0));

  const ScalarAsField one([](std::span<const Jet> x) { return Jet(x[0].space(), 1.0); });
  const auto X = [](const Point& p) {
    Vector v(4);
    v << p[1], 2, -p[0], 0.3;
    return v;
  };
  CHECK(drift_laplacian(e, one, X, Point{1, 2, 3, 4}).at(0) == 0.0);

  // Delta_{grad f} R = -2 |Ric|^2 on the steady cigar
  const auto c = cigar();
  const Point q = at_radius(c, 1.0);
  const auto gradf = [&c](const Point& p) { return hessian_grad(*c.metric, *c.potential, p).gradient; };
  const double lhs = drift_laplacian(*c.metric, *scalar_curvature_field(*c.metric), gradf, q).at(0);
  const auto curv = riemann_ricci_scalar(*c.metric, q);
  const double rhs = -2 * norm2(curv.ricci, curv.inverse);
  CHECK(std::abs(lhs - rhs) < 1e-8);
}

TEST_CASE("finite-difference oracle") {
  const auto c = cigar_cylinder(3);
  const Point p = at_radius(c, 0.8);
  CHECK(metric_oracle(*c.metric, p, 3).max_rel_error < 1e-6);
  CHECK(scalar_oracle(*c.potential, p, 3).max_rel_error < 1e-6);
  const auto u = [](const Point& q) { return std::sin(q[0]) * std::exp(q[1]); };
  const Point x{0.4, 0.2};
  CHECK(fd_partial(u, x, 0) == doctest::Approx(std::cos(0.4) * std::exp(0.2)).epsilon(1e-10));
  CHECK(fd_second(u, x, 0, 1) == doctest::Approx(std::cos(0.4) * std::exp(0.2)).epsilon(1e-6));
}

TEST_CASE("chart errors") {
  const auto g = polar_plane();
  CHECK_THROWS_AS(riemann_ricci_scalar(g, Point{-1.0, 0.0}), solitonlab::DomainError);
  CHECK_THROWS_AS(riemann_ricci_scalar(g, Point{1.0, 0.0, 0.0}), solitonlab::DimensionError);
  const FunctionChart bad(
      2,
      [](std::span<const Jet> x) {
        std::vector<Jet> d{Jet(x[0].space(), 1.0), Jet(x[0].space(), -1.0)};
        return diagonal_metric(d);
      },
      [](const Point&) { return true; });
  CHECK_THROWS_AS(riemann_ricci_scalar(bad, Point{0.0, 0.0}), solitonlab::DegenerateMetricError);
}
