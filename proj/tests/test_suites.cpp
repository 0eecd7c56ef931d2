#include <cmath>

#include "doctest.h"
#include "solitonlab/error.hpp"
#include "solitonlab/suites.hpp"
#include "solitonlab/sweeps.hpp"

namespace su = solitonlab::suites;
namespace sw = solitonlab::sweep;
namespace rp = solitonlab::report;

namespace {

su::RunConfig config(std::string suite, std::vector<std::string> solitons = {}) {
  su::RunConfig c;
  c.suite = std::move(suite);
  c.solitons = std::move(solitons);
  return c;
}

std::string json_of(const su::RunConfig& c) { return rp::emit_report(su::run_verify(c), rp::Format::json); }

}  // namespace

TEST_CASE("radii parsing") {
  CHECK(su::parse_radii("5,10,20") == std::vector<double>{5, 10, 20});
  CHECK(su::parse_radii("").empty());
  const auto g = su::parse_radii("1:100:3");
  REQUIRE(g.size() == 3);
  CHECK(g[1] == doctest::Approx(10.0));
  CHECK(su::parse_radii("1:100").size() >= 2);
  CHECK_THROWS_AS(su::parse_radii("abc"), solitonlab::InvalidArgument);
  CHECK_THROWS_AS(su::parse_radii("10:1"), solitonlab::InvalidArgument);
}

TEST_CASE("config validation") {
  CHECK_THROWS_WITH_AS(config("bogus").validate(), doctest::Contains("unknown suite"), solitonlab::InvalidArgument);
  CHECK_THROWS_WITH_AS(config("residual", {"nope"}).validate(), doctest::Contains("unresolved catalog entry"),
                       solitonlab::InvalidArgument);
  CHECK_NOTHROW(config("all").validate());
  auto a = config("residual"), b = config("residual");
  CHECK(a.hash() == b.hash());
  b.seed = 2;
  CHECK(a.hash() != b.hash());
}

TEST_CASE("verify examples") {
  const auto ok = su::run_verify(config("weitzenbock", {"cigar_cylinder_3"}));
  CHECK(ok.pass());
  CHECK_FALSE(ok.checks.empty());
  CHECK(rp::emit_report(ok, rp::Format::text).find("weighted Einstein tensor") != std::string::npos);

  CHECK_FALSE(su::run_verify(config("weitzenbock", {"perturbed_control"})).pass());

  auto c = config("appendix");
  c.samples = 100000;
  c.seed = 7;
  const auto ap = su::run_verify(c);
  CHECK(ap.pass());
  CHECK(ap.seed == 7);
}

TEST_CASE("determinism") {
  auto c = config("residual");
  CHECK(json_of(c) == json_of(c));
  auto s = config("appendix");
  s.samples = 20000;
  const std::string par = json_of(s);
  s.mode = sw::Mode::serial;
  CHECK(json_of(s) == par);
}

TEST_CASE("serial and OpenMP kernels agree") {
  const auto t0 = sw::triple_sweep(5000, 3, sw::Mode::serial), t1 = sw::triple_sweep(5000, 3, sw::Mode::parallel);
  CHECK(t0.min_margin == t1.min_margin);
  CHECK(t0.max_line_P == t1.max_line_P);
  CHECK(t0.off_line_zeros == t1.off_line_zeros);
  const auto a0 = sw::system_sweep(5, 2000, 9, sw::Mode::serial), a1 = sw::system_sweep(5, 2000, 9, sw::Mode::parallel);
  CHECK(a0.min_q == a1.min_q);
  CHECK(a0.min_gap == a1.min_gap);
  const auto out = sw::map(sw::Mode::parallel, 64, [](std::size_t i) {
    if (i == 13) throw std::runtime_error("boom");
    return static_cast<double>(i * i);
  });
  CHECK(out[12].value == 144.0);
  CHECK_FALSE(out[13].ok());
  CHECK(out[13].error == "boom");
  CHECK(sw::item_seed(1, 2) == sw::item_seed(1, 2));
  CHECK(sw::item_seed(1, 2) != sw::item_seed(1, 3));
}

TEST_CASE("sweeps") {
  auto c = config("sweep", {"bryant_steady_3"});
  c.radii = su::parse_radii("1:100");
  c.radii_given = true;
  const auto out = su::run_sweep(c);
  CHECK(out.report.pass());
  double a = NAN, b = NAN;
  for (const auto& k : out.report.checks) {
    if (k.name == "curvature_decay_exponent") a = k.value;
    if (k.name == "volume_growth_exponent") b = k.value;
  }
  CHECK(a == doctest::Approx(1.0).epsilon(0.15));
  CHECK(b == doctest::Approx(2.0).epsilon(0.15));
  CHECK(out.csv.rfind("soliton,r,R,int_R,volume,area,ratio,deruelle_margin,bishop_gromov\n", 0) == 0);

  auto cg = config("sweep", {"cigar"});
  const auto co = su::run_sweep(cg);
  CHECK(co.report.pass());
  double last = NAN;
  for (const auto& k : co.report.checks)
    if (k.name == "ratio_at_largest_radius") last = k.value;
  CHECK(last < 0.1);

  auto e = config("sweep", {"cigar"});
  e.radii_given = true;
  CHECK_THROWS_WITH_AS(su::run_sweep(e), "empty sweep", solitonlab::InvalidArgument);
}
