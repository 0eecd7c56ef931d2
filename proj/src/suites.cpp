#include "solitonlab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "solitonlab/algebra/algebra.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/identity/identities.hpp"
#include "solitonlab/integral/integrals.hpp"
#include "solitonlab/rotsym/profile.hpp"
#include "solitonlab/tensor/finite_difference.hpp"

namespace solitonlab::suites {

using nlohmann::json;
using report::Check;
using report::make_check;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const std::vector<std::string> kSuites = {"residual", "weitzenbock", "identities", "appendix",
                                          "qsign",    "asymptotics", "integrals",  "all"};

const char* kAnchorResidual = "gradient soliton equation Ric + Hess f = lambda g";
const char* kAnchorHamilton = "Hamilton's identity R + |grad f|^2 - 2 lambda f = const";
const char* kAnchorWeitzenbock = "Weitzenbock formula for the weighted Einstein tensor";
const char* kAnchorEhat = "weighted Einstein tensor (Ric - R g / 2) e^{-f}";
const char* kAnchorQ = "cubic curvature term Q of the weighted Einstein tensor";

struct Ctx {
  const RunConfig& cfg;
  std::vector<Check>& out;
  std::string suite;

  double tol(double t) const { return t * cfg.tol_scale; }
  bool explicit_subjects() const { return !cfg.solitons.empty(); }
  bool wants(const std::string& name) const {
    return cfg.solitons.empty() || std::find(cfg.solitons.begin(), cfg.solitons.end(), name) != cfg.solitons.end();
  }
  void add(std::string name, std::string subject, std::string anchor, double value, std::string rel, double t,
           json details = json::object()) {
    out.push_back(make_check(suite, std::move(name), std::move(subject), std::move(anchor), value, std::move(rel),
                             t, std::move(details)));
  }
  void error(std::string name, std::string subject, std::string anchor, const std::string& what) {
    add(std::move(name), std::move(subject), std::move(anchor), kInf, "<=", 0.0, {{"error", what}});
  }
  std::vector<std::string> subjects(const std::vector<std::string>& defaults) const {
    return cfg.solitons.empty() ? defaults : cfg.solitons;
  }
};

std::string fmtg(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::uint64_t subject_seed(std::uint64_t seed, const std::string& name) {
  return sweep::item_seed(seed, report::fnv1a64(name));
}

std::vector<tensor::Point> points_for(const Ctx& c, const catalog::SolitonSpec& s, long dflt) {
  const long n = c.cfg.samples > 0 ? c.cfg.samples : dflt;
  return catalog::sample_points(s, static_cast<int>(n), subject_seed(c.cfg.seed, s.name));
}

/// Max over outcomes; the first error message is returned through `err`.
template <class T, class F>
double worst(const std::vector<sweep::Outcome<T>>& v, F&& get, std::string& err, bool take_min = false) {
  double w = take_min ? kInf : 0.0;
  for (const auto& o : v) {
    if (!o.ok()) {
      if (err.empty()) err = o.error;
      continue;
    }
    const double x = get(*o.value);
    w = take_min ? std::min(w, x) : std::max(w, x);
  }
  return err.empty() ? w : (take_min ? -kInf : kInf);
}

// ---------------------------------------------------------------- residual

void residual_suite(Ctx& c) {
  for (const auto& name : c.subjects(catalog::catalog_names())) {
    const auto s = catalog::make_soliton(name);
    const auto pts = points_for(c, s, 50);
    const bool control = name == "perturbed_control" && !c.explicit_subjects();
    const auto res = sweep::residual_sweep(s, pts, c.cfg.mode);
    std::string err;
    const double r = worst(res, [](double x) { return x; }, err);
    json d = {{"points", pts.size()}, {"tier", catalog::to_string(s.tier)}};
    if (!err.empty()) d["error"] = err;
    if (control) {
      c.add("negative_control", name, kAnchorResidual, r, ">", c.tol(1e-3), d);
      continue;
    }
    c.add("soliton_residual", name, kAnchorResidual, r, "<", c.tol(s.residual_tolerance()), d);
    if (s.flags.flat && s.kind == catalog::Kind::einstein) continue;
    try {
      const auto h = catalog::hamilton_constant(s, pts);
      c.add("hamilton_constant", name, kAnchorHamilton, h.sample_spread / std::max(1.0, std::abs(h.c)), "<=",
            c.tol(s.identity_tolerance()), {{"c", h.c}});
    } catch (const std::exception& e) {
      c.error("hamilton_constant", name, kAnchorHamilton, e.what());
    }
    try {
      const auto f = catalog::verify_flags(s, pts, s.identity_tolerance());
      c.add("curvature_flags", name, "declared curvature sign flags", f.consistent ? 1.0 : 0.0, ">=", 1.0,
            {{"min_sectional", f.min_sectional}, {"min_ricci", f.min_ricci}, {"max_curvature", f.max_curvature}});
    } catch (const std::exception& e) {
      c.error("curvature_flags", name, "declared curvature sign flags", e.what());
    }
    try {
      double fd = 0.0;
      const std::size_t m = std::min<std::size_t>(pts.size(), 4);
      for (std::size_t i = 0; i < m; ++i) {
        fd = std::max(fd, tensor::metric_oracle(*s.metric, pts[i], 3).max_rel_error);
        fd = std::max(fd, tensor::scalar_oracle(*s.potential, pts[i], 3).max_rel_error);
      }
      c.add("derivative_oracle", name, "exact metric and potential derivatives against finite differences", fd,
            "<=", c.tol(1e-6));
    } catch (const std::exception& e) {
      c.error("derivative_oracle", name, "exact derivatives against finite differences", e.what());
    }
  }
}

// ------------------------------------------------------------- weitzenbock

const std::vector<std::string> kWeitzenbockDefault = {"gaussian_3",       "cigar",           "cigar_cylinder_3",
                                                      "cigar_cylinder_4", "cigar_cylinder_5", "bryant_steady_3",
                                                      "bryant_expanding_3"};

struct WPoint {
  identity::WeitzenbockTerms w;
  identity::WeightedEinstein e;
  double fd = 0.0;
};

void weitzenbock_suite(Ctx& c) {
  for (const auto& name : c.subjects(kWeitzenbockDefault)) {
    const auto s = catalog::make_soliton(name);
    const auto pts = points_for(c, s, 20);
    const auto res = sweep::map(c.cfg.mode, pts.size(), [&](std::size_t i) {
      WPoint p;
      p.w = identity::weitzenbock(s, pts[i]);
      p.e = identity::weighted_einstein(s, pts[i]);
      if (i < 4) p.fd = identity::weitzenbock_residual_fd(s, pts[i]);
      return p;
    });
    // the formula is a statement about solitons; in dimension 2 both sides
    // vanish for any metric, so the hypothesis is what a non-soliton fails
    {
      std::string err;
      const double r = worst(sweep::residual_sweep(s, pts, c.cfg.mode), [](double x) { return x; }, err);
      json d = {{"points", pts.size()}};
      if (!err.empty()) d["error"] = err;
      c.add("soliton_hypothesis", name, kAnchorResidual, r, "<", c.tol(s.residual_tolerance()), d);
    }
    const double tol = c.tol(s.identity_tolerance());
    auto add = [&](const char* check, const char* anchor, auto get, double t) {
      std::string err;
      const double v = worst(res, get, err);
      json d = {{"points", pts.size()}};
      if (!err.empty()) d["error"] = err;
      c.add(check, name, anchor, v, "<", t, d);
    };
    add("weitzenbock_q_form", kAnchorWeitzenbock, [](const WPoint& p) { return p.w.residual_q; }, tol);
    add("weitzenbock_rm_form", kAnchorWeitzenbock, [](const WPoint& p) { return p.w.residual_rm; }, tol);
    add("weitzenbock_fd", kAnchorWeitzenbock, [](const WPoint& p) { return p.fd; }, c.tol(1e-5));
    add("ehat_trace", kAnchorEhat, [](const WPoint& p) { return p.e.trace_residual; }, tol);
    add("ehat_ricci_norm", kAnchorEhat, [](const WPoint& p) { return p.e.ricci_norm_residual; }, tol);
  }
}

// -------------------------------------------------------------- identities

struct IPoint {
  identity::IdentityReport rep;
  double codazzi = 0.0, reconstruction = 0.0, bianchi = 0.0, symmetry = 0.0;
  identity::KatoCheck kato;
};

void identities_suite(Ctx& c) {
  auto defaults = kWeitzenbockDefault;
  defaults.push_back("sphere_3");
  for (const auto& name : c.subjects(defaults)) {
    const auto s = catalog::make_soliton(name);
    const auto pts = points_for(c, s, 20);
    const auto res = sweep::map(c.cfg.mode, pts.size(), [&](std::size_t i) {
      IPoint p;
      p.rep = identity::soliton_identity_residuals(s, pts[i]);
      if (s.dim == 3) {
        p.codazzi = identity::codazzi_residual_3d(s, pts[i]);
        p.reconstruction = identity::reconstruction_residual_3d(s, pts[i]);
      }
      p.bianchi = identity::bianchi_residual(s, pts[i]);
      p.symmetry = identity::symmetry_residual(s, pts[i]);
      p.kato = identity::kato_check(s, pts[i]);
      return p;
    });
    std::string err;
    for (const auto& o : res)
      if (!o.ok() && err.empty()) err = o.error;
    if (!err.empty()) {
      c.error("identities", name, "soliton identities", err);
      continue;
    }
    const auto& first = res.front().value->rep;
    for (std::size_t k = 0; k < first.records.size(); ++k) {
      double v = 0.0;
      for (const auto& o : res) v = std::max(v, o.value->rep.records[k].residual);
      c.add(first.records[k].name, name, "soliton identity " + first.records[k].name, v, "<",
            c.tol(first.records[k].tolerance), {{"points", pts.size()}});
    }
    const double tol = c.tol(s.identity_tolerance());
    auto maxof = [&](auto get) {
      double v = 0.0;
      for (const auto& o : res) v = std::max(v, get(*o.value));
      return v;
    };
    if (s.dim == 3) {
      c.add("codazzi_3d", name, "Codazzi property of the weighted Einstein tensor in dimension three",
            maxof([](const IPoint& p) { return p.codazzi; }), "<", tol);
      c.add("reconstruction_3d", name, "Riemann tensor from Ricci in dimension three",
            maxof([](const IPoint& p) { return p.reconstruction; }), "<", tol);
    }
    c.add("contracted_bianchi", name, "contracted Bianchi identity div Ric = dR / 2",
          maxof([](const IPoint& p) { return p.bianchi; }), "<", tol);
    c.add("curvature_symmetries", name, "curvature symmetries and first Bianchi identity",
          maxof([](const IPoint& p) { return p.symmetry; }), "<", tol);
    double kato = kInf;
    for (const auto& o : res) {
      const auto& k = o.value->kato;
      kato = std::min({kato, k.weighted_einstein_slack, k.ricci_slack, k.gradient_ricci_slack});
    }
    c.add("kato", name, "Kato inequality |grad|S|| <= |grad S|", kato, ">=", -tol);
  }
}

// ---------------------------------------------------------------- appendix

void appendix_suite(Ctx& c) {
  const long triples = c.cfg.samples > 0 ? c.cfg.samples : 100000;
  const long systems = std::max(1L, triples / 10);
  const std::string sub = "polynomial P";
  const char* aP = "polynomial inequality P(x,y,z) >= 3xyz on nonnegative triples";
  {
    const auto t = sweep::triple_sweep(triples, c.cfg.seed, c.cfg.mode);
    json d = {{"triples", t.count}};
    c.add("poly_lower_bound", sub, aP, t.min_margin, ">=", -c.tol(1e-12), d);
    c.add("poly_symmetry", sub, aP, t.max_asymmetry, "<=", c.tol(1e-12), d);
    c.add("poly_equality_lines", sub, "P vanishes on the lines {x = 0, y = z} and permutations", t.max_line_P,
          "<=", c.tol(1e-12), d);
    c.add("poly_zero_set", sub, "P vanishes only on the equality lines", static_cast<double>(t.off_line_zeros),
          "<=", 0.0, d);
    const double ex1 = algebra::poly_P(0, 1, 1), ex2 = algebra::poly_P(1, 1, 1), ex3 = algebra::poly_P(2, 1, 0);
    c.add("poly_examples", sub, aP, std::abs(ex1) + std::abs(ex2 - 3) + std::abs(ex3 - 15), "<=", 1e-12,
          {{"P(0,1,1)", ex1}, {"P(1,1,1)", ex2}, {"P(2,1,0)", ex3}});
  }
  for (int n = 3; n <= 6; ++n) {
    const auto st = sweep::system_sweep(n, systems, c.cfg.seed + static_cast<std::uint64_t>(n), c.cfg.mode);
    const std::string subj = "n=" + std::to_string(n);
    json d = {{"systems", st.count}};
    c.add("contraction_gap", subj, "sectional contraction estimate R_ikjl T_ij T_kl <= (n-2)/(2n) R |T|^2",
          st.min_gap, ">=", -c.tol(1e-12), d);
    c.add("q_nonnegative", subj, "Q >= 0 under nonnegative sectional curvature", st.min_q, ">=", -c.tol(1e-12), d);
    c.add("cauchy_schwarz_step", subj, "Cauchy-Schwarz step on trace-free eigenvalues", st.min_cs, ">=",
          -c.tol(1e-12), d);
    c.add("equality_rigidity", subj, "equality in Q >= 0 forces a flat or split Ricci spectrum",
          static_cast<double>(st.rigidity_violations), "<=", 0.0, d);
    if (n == 4) {
      c.add("bruteforce_oracle", subj, "diagonal-frame Q against the full four-index contraction", st.max_oracle,
            "<=", c.tol(1e-10), d);
    }
  }
  {
    // three-dimensional bridge 4 P_3d = P(mu)
    double worst_rel = 0.0, min_p = kInf;
    std::mt19937_64 rng(sweep::item_seed(c.cfg.seed, 3));
    for (long i = 0; i < systems; ++i) {
      algebra::RicciSpectrum rs;
      for (double& m : rs.mu) m = catalog::uniform01(rng);
      if (i % 7 == 0) rs.mu[i % 3] = 0.0;
      const double q = algebra::q_ricci_3d(rs);
      const double p = algebra::poly_P(rs.mu[0], rs.mu[1], rs.mu[2]);
      const double sc = std::max({rs.mu[0], rs.mu[1], rs.mu[2]});
      worst_rel = std::max(worst_rel, std::abs(4 * q - p) / std::max(std::abs(p), sc * sc * sc));
      min_p = std::min(min_p, q / (sc * sc * sc));
    }
    c.add("bridge_3d", "n=3", "4 Q_3d equals P at the Ricci eigenvalues (relative to max mu^3)", worst_rel, "<=", c.tol(1e-12),
          {{"spectra", systems}});
    c.add("q_3d_nonnegative", "n=3", "Q_3d >= 0 for nonnegative Ricci eigenvalues", min_p, ">=", -c.tol(1e-12));
  }
  {
    using algebra::EqualityCase;
    const bool ok = algebra::equality_case_detect({0, 2, 2}, 4) == EqualityCase::split_case &&
                    algebra::equality_case_detect({0, 0, 0}, 0) == EqualityCase::flat &&
                    algebra::equality_case_detect({1, 1, 1}, 3) == EqualityCase::generic;
    c.add("equality_classification", "spectra", "equality spectrum {0, ..., 0, R/2, R/2}", ok ? 1.0 : 0.0, ">=", 1.0);
    const auto ne = algebra::gen_sample(5, 7, algebra::Family::near_equality);
    c.add("near_equality", "n=5 seed 7", "Q is small near the equality spectrum",
          algebra::q_spectrum(ne) / ne.scale(), "<=", c.tol(1e-2));
  }
}

// ------------------------------------------------------------------- qsign

struct QPoint {
  double q = 0.0, normalized = 0.0, bridge = 0.0, threedim = 0.0;
};

void qsign_suite(Ctx& c) {
  std::vector<std::string> defaults;
  for (const auto& n : catalog::catalog_names()) {
    if (n == "perturbed_control") continue;
    if (catalog::make_soliton(n).flags.nonneg_sectional) defaults.push_back(n);
  }
  for (const auto& name : c.subjects(defaults)) {
    const auto s = catalog::make_soliton(name);
    const auto pts = points_for(c, s, 20);
    const auto res = sweep::map(c.cfg.mode, pts.size(), [&](std::size_t i) {
      QPoint p;
      p.q = identity::q_term(s, pts[i], identity::QVariant::ndim);
      const auto fc = identity::frame_curvature(s, pts[i]);
      const double w2 = fc.weight * fc.weight;
      if (s.dim >= 3) {
        const auto es = algebra::extract(fc.rm, fc.ric);
        const double sc = es.scale();
        p.normalized = p.q / std::max(1.0, w2 * sc * sc * sc);
        p.bridge = std::abs(p.q - w2 * algebra::q_spectrum(es)) / std::max(1.0, std::abs(p.q));
      } else {
        p.normalized = p.q / std::max(1.0, w2);
      }
      if (s.dim == 3) {
        const double q3 = identity::q_term(s, pts[i], identity::QVariant::threedim);
        p.threedim = std::abs(p.q - q3) / std::max(1.0, std::abs(p.q));
      }
      return p;
    });
    std::string err;
    const double mn = worst(res, [](const QPoint& p) { return p.normalized; }, err, true);
    json d = {{"points", pts.size()}};
    if (!err.empty()) d["error"] = err;
    c.add("q_nonnegative", name, kAnchorQ, mn, ">=", -c.tol(1e-9), d);
    if (name.rfind("cigar_cylinder", 0) == 0) {
      c.add("q_vanishes", name, "Q vanishes on the equality model", worst(res, [](const QPoint& p) { return std::abs(p.q); }, err),
            "<", c.tol(1e-7), d);
    }
    if (name.rfind("bryant", 0) == 0) {
      c.add("q_positive", name, kAnchorQ, worst(res, [](const QPoint& p) { return p.q; }, err, true), ">", 0.0, d);
    }
    if (s.dim >= 3) {
      c.add("q_bridge", name, "Q from the tensor equals Q from the eigen system",
            worst(res, [](const QPoint& p) { return p.bridge; }, err), "<=", c.tol(1e-9), d);
    }
    if (s.dim == 3) {
      c.add("q_threedim", name, "three-dimensional form of Q",
            worst(res, [](const QPoint& p) { return p.threedim; }, err), "<=", c.tol(1e-9), d);
    }
  }
}

// ------------------------------------------------------------- asymptotics

void asymptotics_suite(Ctx& c) {
  struct Target {
    const char* name;
    bool steady;
    double a, da, b, db;
  };
  const Target targets[] = {{"bryant_steady_3", true, 1.0, 0.15, 2.0, 0.15},
                            {"bryant_expanding_3", false, 2.0, 0.2, 3.0, 0.2}};
  for (const auto& t : targets) {
    if (!c.wants(t.name)) continue;
    try {
      const auto p = catalog::bryant_profile(t.steady);
      const auto ex = rotsym::asymptotic_exponents(*p);
      auto det = [&](const rotsym::ExponentFit& f) {
        return json{{"exponent", f.value},
                    {"std_error", f.std_error},
                    {"rms_residual", f.rms_residual},
                    {"points", f.points},
                    {"window", {ex.fit_lo, ex.fit_hi}}};
      };
      c.add("curvature_decay", t.name, "curvature decay exponent R ~ r^-a", std::abs(ex.curvature_decay.value - t.a),
            "<=", c.tol(t.da), det(ex.curvature_decay));
      c.add("volume_growth", t.name, "volume growth exponent Vol(B_r) ~ r^b", std::abs(ex.volume_growth.value - t.b),
            "<=", c.tol(t.db), det(ex.volume_growth));
      // independent Dormand-Prince run on a shorter range
      rotsym::OdeConfig cfg = p->config();
      cfg.r_max = 50.0;
      std::vector<double> radii;
      for (double r = 1.0; r <= 50.0; r += 1.0) radii.push_back(r);
      const auto ref = rotsym::integrate_reference_rk45(3, p->lambda(), p->normalization(), cfg, radii);
      double dev = 0.0;
      for (std::size_t i = 0; i < radii.size(); ++i) {
        const auto st = p->state(radii[i]);
        dev = std::max(dev, std::abs(st.w - ref[i].w) / std::max(1.0, std::abs(st.w)));
        dev = std::max(dev, std::abs(st.f - ref[i].f) / std::max(1.0, std::abs(st.f)));
      }
      c.add("integrator_cross_check", t.name, "Taylor integrator against Dormand-Prince", dev, "<=", c.tol(1e-7));
    } catch (const std::exception& e) {
      c.error("asymptotics", t.name, "profile asymptotics", e.what());
    }
  }
  if (c.wants("cigar")) {
    try {
      const auto ex = rotsym::asymptotic_exponents(*catalog::cigar_polar_profile());
      c.add("exponential_decay", "cigar", "cigar curvature decays exponentially", ex.exponential_decay ? 1.0 : 0.0,
            ">=", 1.0, {{"rate", ex.exponential_rate}});
    } catch (const std::exception& e) {
      c.error("exponential_decay", "cigar", "cigar curvature decays exponentially", e.what());
    }
  }
}

// --------------------------------------------------------------- integrals

void integrals_suite(Ctx& c) {
  using namespace integral;
  const std::vector<double> radii = {5, 10, 20, 40};
  const char* aDer = "scalar curvature integral bound int_{B_r} R <= n sqrt(c) Vol(B_r) / r on steady solitons";
  for (const char* name : {"cigar", "cigar_cylinder_3", "bryant_steady_3"}) {
    if (!c.wants(name)) continue;
    const auto s = catalog::make_soliton(name);
    const auto res = sweep::map(c.cfg.mode, radii.size(), [&](std::size_t i) { return deruelle_check(s, radii[i]); });
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const std::string sub = std::string(name) + " r=" + std::to_string(static_cast<int>(radii[i]));
      if (!res[i].ok()) {
        c.error("deruelle_margin", sub, aDer, res[i].error);
        continue;
      }
      const auto& d = *res[i].value;
      json det = {{"lhs", d.lhs}, {"rhs", d.rhs}, {"hamilton_c", d.hamilton_c}, {"quadrature_error", d.error}};
      c.add("deruelle_margin", sub, aDer, d.margin, ">=", -c.tol(1e-6), det);
      c.add("area_bound", sub, "int_{B_r} R <= sqrt(c) A(dB_r)", d.area_bound_margin, ">=", -c.tol(1e-6), det);
      c.add("bishop_gromov", sub, "Bishop-Gromov step r A / Vol <= n", d.bishop_gromov, "<=",
            s.dim + c.tol(1e-9), det);
    }
  }

  const std::vector<double> lr = {5, 10, 20, 40, 100, 200};
  const char* aLim = "asymptotic ratio (1/r) int_{B_r} R";
  for (const char* name : {"cigar", "cigar_cylinder_3", "bryant_steady_3"}) {
    if (!c.wants(name)) continue;
    try {
      const auto v = liminf_ratio(catalog::make_soliton(name), lr);
      json series = json::array();
      double first_width = kInf, widest_late = 0.0;
      for (const auto& p : v) {
        series.push_back({{"r", p.r}, {"ratio", p.ratio}, {"lower", p.lower}, {"upper", p.upper}});
        const double width = p.upper - p.lower;
        if (p.r == lr.front()) first_width = width;
        else widest_late = std::max(widest_late, width);
      }
      const std::string sn = name;
      if (sn == "cigar") {
        c.add("liminf_ratio", name, aLim, v.back().ratio, "<", c.tol(0.1), {{"series", series}});
      } else if (sn == "bryant_steady_3") {
        double mn = kInf;
        for (const auto& p : v) mn = std::min(mn, p.ratio);
        c.add("liminf_ratio", name, aLim, mn / v.front().ratio, ">", 0.1, {{"series", series}});
      } else {
        c.add("liminf_ratio", name, aLim, v.back().ratio, "info", 0.0, {{"series", series}});
      }
      // moving the centre by 1 changes the ratio by at most the bracket width
      c.add("center_independence", name, "ratio independent of the centre", widest_late / first_width, "<", 1.0,
            {{"series", series}});
    } catch (const std::exception& e) {
      c.error("liminf_ratio", name, aLim, e.what());
    }
  }

  // integral invariants of the quadrature
  for (const char* name : {"gaussian_3", "cigar", "cigar_cylinder_3", "bryant_steady_3", "bryant_expanding_3"}) {
    if (!c.wants(name)) continue;
    try {
      const auto g = RadialGeometry::from(catalog::make_soliton(name));
      double dv = 0.0, halving = 0.0, bg = 0.0;
      double prev = kInf;
      for (double r : {2.0, 5.0, 10.0, 20.0}) {
        const double h = 1e-3 * r;
        const auto b = ball_integrals(g, r);
        const auto fine = ball_integrals(g, r, 1e-12);
        const double deriv = (ball_integrals(g, r + h).volume - ball_integrals(g, r - h).volume) / (2 * h);
        dv = std::max(dv, std::abs(deriv - b.area) / b.area);
        halving = std::max(halving, std::abs(fine.volume - b.volume) / b.volume);
        halving = std::max(halving, std::abs(fine.total_R - b.total_R) / std::max(1.0, b.total_R));
        const double q = b.volume / std::pow(r, g.dim());
        bg = std::max(bg, prev == kInf ? 0.0 : (q - prev) / prev);
        prev = q;
      }
      c.add("volume_derivative", name, "d Vol(B_r) / dr = A(dB_r)", dv, "<=", c.tol(1e-6));
      c.add("quadrature_refinement", name, "tightening the quadrature tolerance", halving, "<=", c.tol(1e-6));
      c.add("bishop_gromov_monotone", name, "Vol(B_r) / r^n non-increasing", bg, "<=", c.tol(1e-9));
    } catch (const std::exception& e) {
      c.error("ball_integrals", name, "geodesic ball integrals", e.what());
    }
  }
  if (c.wants("cigar")) {
    const auto b = ball_integrals(catalog::make_soliton("cigar"), 200.0);
    c.add("total_curvature", "cigar", "total curvature 4 pi of the cigar", std::abs(b.total_R - 4 * std::numbers::pi),
          "<=", c.tol(1e-6));
  }

  // cutoffs
  if (c.wants("bryant_steady_3")) {
    const auto cut = build_cutoff(CutoffKind::radial, 10.0, catalog::make_soliton("bryant_steady_3"));
    c.add("radial_cutoff", "r=10", "radial cutoff with |grad phi| <= 2/r", cut.gradient_bound / 10.0, "<=", 0.2);
  }
  if (c.wants("cigar")) {
    std::string what;
    try {
      build_cutoff(CutoffKind::potential, 50.0, catalog::make_soliton("cigar"));
    } catch (const DomainError& e) {
      what = e.what();
    }
    c.add("potential_cutoff_rejected", "cigar", "potential cutoff needs a proper potential",
          what.find("non-proper potential") != std::string::npos ? 1.0 : 0.0, ">=", 1.0, {{"message", what}});
  }

  // main integral inequality
  const char* aMain = "main integral inequality for |E^| with a cutoff";
  if (c.wants("bryant_expanding_3")) {
    const auto s = catalog::make_soliton("bryant_expanding_3");
    const std::vector<double> ts = {50, 100, 200};
    const auto res = sweep::map(c.cfg.mode, ts.size(), [&](std::size_t i) {
      const auto cut = build_cutoff(CutoffKind::potential, ts[i], s);
      return std::make_pair(cut, intmain_check(s, cut));
    });
    json series = json::array();
    double rise = -kInf, bconst = 0.0;
    bool all_ok = true;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const std::string sub = "bryant_expanding_3 t=" + std::to_string(static_cast<int>(ts[i]));
      if (!res[i].ok()) {
        c.error("intmain_slack", sub, aMain, res[i].error);
        all_ok = false;
        continue;
      }
      const auto& [cut, m] = *res[i].value;
      series.push_back({{"t", ts[i]}, {"lhs", m.lhs}, {"rhs", m.rhs}, {"boundary", m.boundary}, {"annulus_R", m.annulus_R}});
      c.add("intmain_slack", sub, aMain, m.slack, ">=", -c.tol(1e-6),
            {{"lhs", m.lhs}, {"rhs", m.rhs}, {"quadrature_error", m.error}});
      c.add("potential_cutoff", sub, "potential cutoff derivative bounds", cut.c, "<", 1e6,
            {{"gradient_bound_sqrt_t", cut.gradient_bound}, {"support_radius", cut.support_radius}});
      bconst = std::max(bconst, m.boundary / m.annulus_R);
      if (i > 0 && res[i - 1].ok()) rise = std::max(rise, m.lhs - res[i - 1].value->second.lhs);
    }
    if (all_ok) {
      c.add("intmain_lhs_decreasing", "bryant_expanding_3", aMain, rise, "<=", 0.0, {{"series", series}});
      c.add("boundary_term_bound", "bryant_expanding_3", "boundary term bounded by c int R over the transition region",
            bconst, "<", 1e6, {{"series", series}});
    }
  }
  for (const auto& [name, r] : {std::pair<const char*, double>{"bryant_steady_3", 20.0}, {"cigar_cylinder_3", 10.0}}) {
    if (!c.wants(name)) continue;
    try {
      const auto s = catalog::make_soliton(name);
      const auto m = intmain_check(s, build_cutoff(CutoffKind::radial, r, s));
      const std::string sub = std::string(name) + " r=" + std::to_string(static_cast<int>(r));
      c.add("intmain_slack", sub, aMain, m.slack, ">=", -c.tol(1e-6), {{"lhs", m.lhs}, {"rhs", m.rhs}});
      if (std::string(name) == "cigar_cylinder_3") {
        c.add("intmain_lhs_vanishes", sub, "equality model kills the left side", std::abs(m.lhs), "<=", c.tol(1e-9));
      }
    } catch (const std::exception& e) {
      c.error("intmain_slack", name, aMain, e.what());
    }
  }

  // gradient Ricci lemma
  const char* aGr = "int |grad Ric|^2 phi^2 / R <= c int (R + R |grad phi|^2) phi^2";
  for (const char* name : {"cigar", "cigar_cylinder_3", "bryant_steady_3"}) {
    if (!c.wants(name)) continue;
    try {
      const auto v = gradric_ratio(catalog::make_soliton(name), radii);
      json series = json::array();
      double sup = 0.0;
      bool tail_monotone = true;
      for (std::size_t i = 0; i < v.size(); ++i) {
        series.push_back({{"r", v[i].r}, {"numerator", v[i].numerator}, {"denominator", v[i].denominator}, {"ratio", v[i].ratio}});
        sup = std::max(sup, v[i].ratio);
        if (i >= 2 && v[i].ratio > v[i - 1].ratio) tail_monotone = false;
      }
      // bounded: the increments settle down instead of growing
      const double first = std::abs(v[1].ratio - v[0].ratio), last = std::abs(v.back().ratio - v[v.size() - 2].ratio);
      c.add("gradric_bounded", name, aGr, last / std::max(first, 1e-300), "<=", 1.0,
            {{"series", series}, {"sup", sup}, {"tail_non_increasing", tail_monotone},
             {"informational", std::string(name) == "cigar"}});
    } catch (const std::exception& e) {
      c.error("gradric_bounded", name, aGr, e.what());
    }
  }
}

using SuiteFn = void (*)(Ctx&);
const std::vector<std::pair<std::string, SuiteFn>> kTable = {
    {"residual", residual_suite},   {"weitzenbock", weitzenbock_suite}, {"identities", identities_suite},
    {"appendix", appendix_suite},   {"qsign", qsign_suite},             {"asymptotics", asymptotics_suite},
    {"integrals", integrals_suite}};

}  // namespace

json RunConfig::to_json() const {
  return {{"suite", suite},   {"solitons", solitons}, {"samples", samples},
          {"seed", seed},     {"radii", radii},       {"tol_scale", tol_scale}};
}

std::string RunConfig::hash() const { return report::hex64(report::fnv1a64(to_json().dump())); }

void RunConfig::validate() const {
  if (std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end()) {
    throw InvalidArgument("unknown suite '" + suite + "'");
  }
  const auto names = catalog::catalog_names();
  for (const auto& s : solitons) {
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      throw InvalidArgument("unresolved catalog entry '" + s + "'");
    }
  }
  if (samples < 0) throw InvalidArgument("samples must be nonnegative");
  if (!(tol_scale > 0)) throw InvalidArgument("tolerance scale must be positive");
}

std::vector<std::string> suite_names() { return kSuites; }

report::Report run_verify(const RunConfig& cfg) {
  cfg.validate();
  report::Report rep;
  rep.suite = cfg.suite;
  rep.seed = cfg.seed;
  rep.config = cfg.to_json();
  rep.config_hash = cfg.hash();
  for (const auto& [name, fn] : kTable) {
    if (cfg.suite != "all" && cfg.suite != name) continue;
    Ctx c{cfg, rep.checks, name};
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.error("suite_error", name, "suite execution", e.what());
    }
  }
  return rep;
}

std::vector<double> parse_radii(const std::string& text) {
  std::vector<double> out;
  if (text.find_first_not_of(" \t") == std::string::npos) return out;
  auto num = [](const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      throw InvalidArgument("bad radius '" + s + "'");
    }
    if (pos != s.size()) throw InvalidArgument("bad radius '" + s + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) throw InvalidArgument("radii range is start:stop[:count]");
    const double a = num(parts[0]), b = num(parts[1]);
    const int n = parts.size() == 3 ? static_cast<int>(num(parts[2])) : 25;
    if (!(a > 0) || !(b > a) || n < 2) throw InvalidArgument("radii range needs 0 < start < stop and count >= 2");
    for (int i = 0; i < n; ++i) out.push_back(a * std::pow(b / a, i / (n - 1.0)));
    out.back() = b;
    return out;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(num(p));
  return out;
}

namespace {

rotsym::ExponentFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  rotsym::ExponentFit f;
  const int n = static_cast<int>(x.size());
  f.points = n;
  if (n < 3) throw InvalidArgument("too few sweep points for an exponent fit");
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += std::pow(std::log(x[i]) - mx, 2);
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
  }
  const double slope = sxy / sxx;
  double ss = 0;
  for (int i = 0; i < n; ++i) ss += std::pow(std::log(y[i]) - my - slope * (std::log(x[i]) - mx), 2);
  f.value = slope;
  f.rms_residual = std::sqrt(ss / n);
  f.std_error = std::sqrt(ss / (n - 2) / sxx);
  return f;
}

}  // namespace

SweepOutput run_sweep(const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  if (cfg.suite == "all") cfg.suite = "sweep";
  const auto names = catalog::catalog_names();
  for (const auto& s : cfg.solitons)
    if (std::find(names.begin(), names.end(), s) == names.end())
      throw InvalidArgument("unresolved catalog entry '" + s + "'");
  if (cfg.solitons.empty()) cfg.solitons = {"bryant_steady_3"};
  if (cfg.radii_given && cfg.radii.empty()) throw InvalidArgument("empty sweep");

  SweepOutput out;
  out.report.suite = "sweep";
  out.report.seed = cfg.seed;
  out.report.config = cfg.to_json();
  out.report.config_hash = cfg.hash();
  std::ostringstream csv;
  csv.precision(17);
  csv << "soliton,r,R,int_R,volume,area,ratio,deruelle_margin,bishop_gromov\n";
  Ctx c{cfg, out.report.checks, "sweep"};
  for (const auto& name : cfg.solitons) {
    const auto s = catalog::make_soliton(name);
    std::vector<double> radii = cfg.radii;
    if (!cfg.radii_given) radii = parse_radii(name == "cigar" ? "1:200:30" : "1:100:30");
    if (radii.empty()) throw InvalidArgument("empty sweep");
    const auto g = integral::RadialGeometry::from(s);
    const bool der = s.kind == catalog::Kind::steady && s.flags.nonneg_ricci;
    struct Row {
      double R, intR, vol, area, margin, bg;
    };
    const auto rows = sweep::map(cfg.mode, radii.size(), [&](std::size_t i) {
      const double r = radii[i];
      const auto b = integral::ball_integrals(g, r);
      Row row{g.at(r).R, b.total_R, b.volume, b.area, std::nan(""), r * b.area / b.volume};
      if (der) row.margin = integral::deruelle_check(s, r).margin;
      return row;
    });
    std::vector<double> xr, yR, yV;
    std::vector<double> ratios;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (!rows[i].ok()) throw RangeError(rows[i].error);
      const auto& w = *rows[i].value;
      const double ratio = w.intR / radii[i];
      ratios.push_back(ratio);
      csv << name << ',' << radii[i] << ',' << w.R << ',' << w.intR << ',' << w.vol << ',' << w.area << ',' << ratio
          << ',';
      if (der) csv << w.margin;
      csv << ',' << w.bg << '\n';
      if (radii[i] >= radii.back() / 10) {
        xr.push_back(radii[i]);
        yR.push_back(w.R);
        yV.push_back(w.vol);
      }
      if (der) c.add("deruelle_margin", name + " r=" + fmtg(radii[i]), "scalar curvature integral bound",
                     w.margin, ">=", -c.tol(1e-6));
    }
    auto fitdet = [](const rotsym::ExponentFit& f) {
      return json{{"exponent", f.value},
                  {"std_error", f.std_error},
                  {"ci95", {f.value - 1.96 * f.std_error, f.value + 1.96 * f.std_error}},
                  {"points", f.points}};
    };
    try {
      bool positive = true;
      for (double v : yR) positive = positive && v > 0;
      if (positive) {
        const auto a = loglog_fit(xr, yR);
        c.add("curvature_decay_exponent", name, "curvature decay exponent R ~ r^-a", -a.value, "info", 0.0,
              fitdet(rotsym::ExponentFit{-a.value, a.std_error, a.rms_residual, a.points}));
      }
      const auto b = loglog_fit(xr, yV);
      c.add("volume_growth_exponent", name, "volume growth exponent Vol(B_r) ~ r^b", b.value, "info", 0.0, fitdet(b));
    } catch (const std::exception& e) {
      c.error("exponent_fit", name, "exponent fit", e.what());
    }
    c.add("ratio_at_largest_radius", name, "asymptotic ratio (1/r) int_{B_r} R", ratios.back(), "info", 0.0,
          {{"r", radii.back()}});
    if (name == "cigar") {
      bool decreasing = true;
      for (std::size_t i = 1; i < ratios.size(); ++i) decreasing = decreasing && ratios[i] < ratios[i - 1];
      c.add("ratio_decreasing", name, "(1/r) int_{B_r} R decreases along the sweep", decreasing ? 1.0 : 0.0, ">=", 1.0);
    }
  }
  out.csv = csv.str();
  return out;
}

}  // namespace solitonlab::suites
