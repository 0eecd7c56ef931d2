#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/identity/identities.hpp"

using namespace th;
namespace cat = solitonlab::catalog;
namespace id = solitonlab::identity;

TEST_CASE("weighted Einstein tensor") {
  const auto g = cat::gaussian(3, -0.5);
  CHECK(id::weighted_einstein(g, Point{0.3, 1, -2}).norm == 0.0);

  const auto sph = cat::sphere_shrinker(2);
  CHECK(id::weighted_einstein(sph, Point{0.4, 0.2}).norm < 1e-13);

  const auto cc = cat::cigar_cylinder(3);
  for (const auto& p : cat::sample_points(cc, 5, 3)) {
    const auto w = id::weighted_einstein(cc, p);
    Matrix m(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = w.frame(i, j) / w.weight;
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    const double R = riemann_ricci_scalar(*cc.metric, p).scalar;
    CHECK(es.eigenvalues()(0) == doctest::Approx(-R / 2).epsilon(1e-12));
    CHECK(std::abs(es.eigenvalues()(1)) < 1e-13);
    CHECK(std::abs(es.eigenvalues()(2)) < 1e-13);
    CHECK(w.trace_residual < 1e-12);
    CHECK(w.ricci_norm_residual < 1e-12);
  }
}

TEST_CASE("Q term") {
  CHECK(id::q_term(cat::gaussian(4, 0.0), Point{1, 2, 3, 4}, id::QVariant::ndim) == 0.0);
  for (int n : {3, 4, 5}) {
    const auto cc = cat::cigar_cylinder(n);
    for (const auto& p : cat::sample_points(cc, 10, 1)) {
      const double q = id::q_term(cc, p, id::QVariant::ndim);
      const double e = std::exp(2 * cat::potential_value(cc, p));
      CHECK(std::abs(q) * e < 1e-12);
    }
  }
  const auto b = cat::bryant_steady_3();
  const Point p = at_radius(b, 1.0);
  const double q = id::q_term(b, p, id::QVariant::ndim);
  CHECK(q > 0);
  CHECK(id::q_term(b, p, id::QVariant::threedim) == doctest::Approx(q).epsilon(1e-9));
  CHECK_THROWS_AS(id::q_term(cat::cigar_cylinder(4), p, id::QVariant::threedim), solitonlab::DimensionError);
}

TEST_CASE("Weitzenbock formula") {
  CHECK(id::weitzenbock_residual(cat::gaussian(3, -0.5), Point{1, 1, 1}) == 0.0);
  const auto cc = cat::cigar_cylinder(3);
  for (const auto& p : cat::sample_points(cc, 20, 8)) {
    const auto w = id::weitzenbock(cc, p);
    CHECK(w.residual_q < 1e-7);
    CHECK(w.residual_rm < 1e-7);
  }
  const auto b = cat::bryant_steady_3();
  for (double r : {0.5, 2.0, 10.0}) {
    const auto w = id::weitzenbock(b, at_radius(b, r));
    CHECK(w.residual_q < 1e-4);
    CHECK(w.residual_rm < 1e-4);
    CHECK(id::weitzenbock_residual_fd(b, at_radius(b, r)) < 1e-4);
  }
  const auto e = cat::bryant_expanding_3();
  CHECK(id::weitzenbock_residual(e, at_radius(e, 3.0)) < 1e-4);
  // in dimension 2 E^ vanishes for any metric, soliton or not
  CHECK(id::weitzenbock_residual(cat::perturbed_control(), Point{0.7, -0.4}) < 1e-12);
}

TEST_CASE("soliton identities") {
  const auto c = cat::cigar();
  const auto rep = id::soliton_identity_residuals(c, at_radius(c, 1.0));
  CHECK(rep.records.size() == 6);
  for (const auto& r : rep.records) {
    CAPTURE(r.name);
    CHECK(r.residual < 1e-8);
  }
  CHECK(rep.pass());
  for (const auto& r : id::soliton_identity_residuals(cat::gaussian(3, 0.3), Point{0.2, 1, 0}).records)
    CHECK(r.residual == 0.0);
  const auto b = cat::bryant_steady_3();
  CHECK(id::soliton_identity_residuals(b, at_radius(b, 2.0)).pass());
}

TEST_CASE("drift Laplacian of Ric along the flat factor") {
  const auto cc = cat::cigar_cylinder(4);
  const Point p = at_radius(cc, 0.9);
  const auto gradf = [&cc](const Point& q) { return hessian_grad(*cc.metric, *cc.potential, q).gradient; };
  const Tensor L = drift_laplacian(*cc.metric, *ricci_field(*cc.metric), gradf, p);
  // coordinates 2 and 3 are unit flat directions, null for Ric
  CHECK(std::abs(L(2, 2)) < 1e-7);
  CHECK(std::abs(L(3, 3)) < 1e-7);
}

TEST_CASE("three-dimensional identities") {
  const auto cc = cat::cigar_cylinder(3);
  for (const auto& p : cat::sample_points(cc, 5, 4)) {
    CHECK(id::codazzi_residual_3d(cc, p) < 1e-7);
    CHECK(id::reconstruction_residual_3d(cc, p) < 1e-9);
  }
  const auto b = cat::bryant_steady_3();
  CHECK(id::codazzi_residual_3d(b, at_radius(b, 2.0)) < 1e-4);
  CHECK_THROWS_AS(id::codazzi_residual_3d(cat::cigar_cylinder(4), Point{0, 0, 0, 0}), solitonlab::DimensionError);
}

TEST_CASE("Kato, Bianchi and symmetries") {
  const auto b = cat::bryant_steady_3();
  for (double r : {0.7, 3.0}) {
    const Point p = at_radius(b, r);
    const auto k = id::kato_check(b, p);
    CHECK(k.weighted_einstein_slack >= -1e-10);
    CHECK(k.ricci_slack >= -1e-10);
    CHECK(k.gradient_ricci_slack >= -1e-10);
    CHECK(id::bianchi_residual(b, p) < 1e-6);
    CHECK(id::symmetry_residual(b, p) < 1e-12);
  }
}
