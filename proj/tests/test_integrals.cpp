#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/identity/identities.hpp"
#include "solitonlab/integral/integrals.hpp"

using namespace th;
namespace cat = solitonlab::catalog;
namespace ig = solitonlab::integral;
namespace id = solitonlab::identity;
using std::numbers::pi;

TEST_CASE("euclidean balls") {
  const auto g = cat::gaussian(3, -0.5);
  for (double r : {0.5, 2.0, 7.0}) {
    const auto b = ig::ball_integrals(g, r);
    CHECK(b.volume == doctest::Approx(4.0 / 3 * pi * r * r * r).epsilon(1e-10));
    CHECK(b.area == doctest::Approx(4 * pi * r * r).epsilon(1e-10));
    CHECK(b.total_R == 0.0);
  }
}

TEST_CASE("cigar total curvature") {
  const auto c = cat::cigar();
  for (double r : {0.5, 1.0, 3.0, 200.0}) {
    // int_0^r (4 / cosh^2) 2 pi tanh = 4 pi tanh^2 r
    CHECK(ig::ball_integrals(c, r).total_R == doctest::Approx(4 * pi * std::pow(std::tanh(r), 2)).epsilon(1e-9));
  }
}

TEST_CASE("quadratic volume growth of steady Bryant") {
  const auto b = cat::bryant_steady_3();
  for (double r : {10.0, 20.0, 40.0}) {
    const double q = ig::ball_integrals(b, 2 * r).volume / ig::ball_integrals(b, r).volume;
    CHECK(q == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("quadrature invariants") {
  const auto b = cat::bryant_steady_3();
  const auto coarse = ig::ball_integrals(b, 15.0, 1e-9), fine = ig::ball_integrals(b, 15.0, 1e-11);
  CHECK(std::abs(coarse.volume - fine.volume) < 1e-6 * fine.volume);
  CHECK(std::abs(coarse.total_R - fine.total_R) < 1e-6 * fine.total_R);
  const double h = 1e-3;
  const double dv = (ig::ball_integrals(b, 15 + h).volume - ig::ball_integrals(b, 15 - h).volume) / (2 * h);
  CHECK(dv == doctest::Approx(fine.area).epsilon(1e-6));
}

TEST_CASE("Deruelle bound") {
  const auto c = ig::deruelle_check(cat::cigar(), 5.0);
  CHECK(c.margin > 0);
  CHECK(c.bishop_gromov <= 2 + 1e-9);
  CHECK(c.hamilton_c == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(ig::deruelle_check(cat::cigar_cylinder(3), 5.0).margin > 0);
  CHECK(ig::deruelle_check(cat::bryant_steady_3(), 20.0).margin > 0);
  CHECK_THROWS_AS(ig::deruelle_check(cat::bryant_expanding_3(), 5.0), solitonlab::InvalidArgument);
}

TEST_CASE("liminf ratio") {
  const auto c = ig::liminf_ratio(cat::cigar(), {50, 100, 200});
  CHECK(c.back().ratio < 0.1);
  CHECK(c.back().ratio * 200 == doctest::Approx(4 * pi).epsilon(1e-6));
  for (const auto& p : c) {
    CHECK(p.lower <= p.ratio * (1 + 1e-12));
    CHECK(p.ratio <= p.upper * (1 + 1e-12));
  }
  const auto b = ig::liminf_ratio(cat::bryant_steady_3(), {5, 20, 80});
  CHECK(b.back().ratio > 0.1 * b.front().ratio);
  const auto cc = ig::liminf_ratio(cat::cigar_cylinder(3), {10, 40});
  CHECK(cc.back().ratio > 1.0);
  CHECK_THROWS_WITH_AS(ig::liminf_ratio(cat::cigar(), {}), "empty sweep", solitonlab::InvalidArgument);
}

TEST_CASE("cutoffs") {
  const auto rc = ig::build_cutoff(ig::CutoffKind::radial, 10.0, cat::bryant_steady_3());
  CHECK(rc.gradient_bound / 10.0 <= 0.2);
  CHECK(rc.value(5.0) == 1.0);
  CHECK(rc.value(20.0) == 0.0);
  const auto pc = ig::build_cutoff(ig::CutoffKind::potential, 50.0, cat::bryant_expanding_3());
  CHECK(std::isfinite(pc.c));
  CHECK(pc.c > 0);
  CHECK_THROWS_WITH_AS(ig::build_cutoff(ig::CutoffKind::potential, 50.0, cat::cigar()),
                       doctest::Contains("non-proper potential"), solitonlab::DomainError);
}

TEST_CASE("main integral inequality") {
  const auto e = cat::bryant_expanding_3();
  const auto r = ig::intmain_check(e, ig::build_cutoff(ig::CutoffKind::potential, 50.0, e));
  CHECK(r.slack >= 0);
  CHECK(r.boundary <= r.rhs);

  const auto b = cat::bryant_steady_3();
  CHECK(ig::intmain_check(b, ig::build_cutoff(ig::CutoffKind::radial, 20.0, b)).slack >= 0);

  const auto cc = cat::cigar_cylinder(3);
  const auto z = ig::intmain_check(cc, ig::build_cutoff(ig::CutoffKind::radial, 10.0, cc));
  CHECK(std::abs(z.lhs) < 1e-9);
  CHECK(z.slack == doctest::Approx(z.rhs - z.lhs));
  CHECK(z.slack >= -1e-9);
}

TEST_CASE("gradient Ricci ratio") {
  for (const auto& p : ig::gradric_ratio(cat::cigar(), {5, 10, 20})) CHECK(std::isfinite(p.ratio));
  const auto b = ig::gradric_ratio(cat::bryant_steady_3(), {5, 10, 20, 40});
  for (const auto& p : b) CHECK(p.ratio <= b.front().ratio);
  const auto cc = ig::gradric_ratio(cat::cigar_cylinder(3), {5, 10, 20});
  for (const auto& p : cc) CHECK(p.ratio < 1.0);
}

TEST_CASE("radial data against the tensor machinery") {
  for (const auto& s : {cat::cigar_cylinder(3), cat::bryant_steady_3(), cat::bryant_expanding_3()}) {
    CAPTURE(s.name);
    const auto g = ig::RadialGeometry::from(s);
    for (double r : {0.4, 1.5, 4.0}) {
      const Point p = at_radius(s, r);
      const auto d = g.at(r);
      const auto curv = riemann_ricci_scalar(*s.metric, p);
      const Tensor dric = cov_deriv(*s.metric, *ricci_field(*s.metric), p);
      const double gr = norm2(dric, curv.inverse);
      CHECK(d.grad_ric2 == doctest::Approx(gr).epsilon(1e-9));
      CHECK(d.R == doctest::Approx(curv.scalar).epsilon(1e-9));
      const auto w = id::weighted_einstein(s, p);
      CHECK(d.e_norm == doctest::Approx(w.norm / w.weight).epsilon(1e-9));
      const double q = id::q_term(s, p, id::QVariant::ndim) / (w.weight * w.weight);
      CHECK(std::abs(d.q_bracket - q) < 1e-9 * std::max(1.0, std::abs(q)));
    }
  }
}
