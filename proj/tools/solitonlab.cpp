#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "solitonlab/catalog/catalog.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/report.hpp"
#include "solitonlab/suites.hpp"

using namespace solitonlab;

namespace {

// explicit --out wins, then $SOLITONLAB_OUT/<stem>.<ext>, else stdout
std::string output_path(const std::string& out, const std::string& stem, report::Format f) {
  if (!out.empty()) return out;
  if (const char* dir = std::getenv("SOLITONLAB_OUT"); dir && *dir) {
    return (std::filesystem::path(dir) / (stem + "." + report::extension(f))).string();
  }
  return {};
}

void emit(const std::string& path, const std::string& bytes) {
  if (path.empty()) {
    std::cout << bytes;
  } else {
    report::write_atomic(path, bytes);
    std::cerr << "wrote " << path << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solitonlab: numerical checks on gradient Ricci solitons"};
  app.require_subcommand(1);

  suites::RunConfig cfg;
  std::string format = "json", out, radii_text;
  bool serial = false;

  auto* cat = app.add_subcommand("catalog", "List catalog entries or describe one");
  std::vector<std::string> cat_names;
  cat->add_option("--soliton", cat_names, "Entry to describe (repeatable)");
  cat->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  cat->add_option("--out", out, "Output file");

  auto add_common = [&](CLI::App* sc) {
    sc->add_option("--soliton", cfg.solitons, "Catalog entry (repeatable); default: the suite's list");
    sc->add_option("--samples", cfg.samples, "Sample count (points, or triples for the appendix suite)");
    sc->add_option("--seed", cfg.seed, "Random seed");
    sc->add_option("--tol", cfg.tol_scale, "Factor applied to every tolerance");
    sc->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sc->add_option("--out", out, "Output file (default: $SOLITONLAB_OUT/<suite>.<ext>, else stdout)");
    sc->add_flag("--serial", serial, "Use the serial reference kernels");
  };
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("--suite", cfg.suite, "residual, weitzenbock, identities, appendix, qsign, asymptotics, integrals, all");
  add_common(ver);

  auto* swp = app.add_subcommand("sweep", "Ball integrals and exponents over a radius list");
  add_common(swp);
  auto* radii_opt = swp->add_option("--radii", radii_text, "Radii: \"5,10,20\" or start:stop[:count] (geometric)");

  auto* rep = app.add_subcommand("report", "Re-emit a JSON report in another format");
  std::string in;
  rep->add_option("input", in, "JSON report")->required();
  rep->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  rep->add_option("--out", out, "Output file");

  CLI11_PARSE(app, argc, argv);
  cfg.mode = serial ? sweep::Mode::serial : sweep::Mode::parallel;

  try {
    if (*cat) {
      nlohmann::json j = nlohmann::json::array();
      const auto names = cat_names.empty() ? catalog::catalog_names() : cat_names;
      std::ostringstream text;
      for (const auto& n : names) {
        const auto s = catalog::make_soliton(n);
        j.push_back(catalog::describe(s));
        text << n << "  n=" << s.dim << "  lambda=" << s.lambda << "  " << catalog::to_string(s.kind) << "  "
             << catalog::to_string(s.tier) << '\n';
      }
      emit(out, format == "json" ? j.dump(2) + "\n" : text.str());
      return 0;
    }
    if (*ver) {
      const auto f = report::parse_format(format);
      const auto r = suites::run_verify(cfg);
      emit(output_path(out, cfg.suite, f), report::emit_report(r, f));
      return r.pass() ? 0 : 1;
    }
    if (*swp) {
      cfg.suite = "sweep";
      if (radii_opt->count() > 0) {
        cfg.radii_given = true;
        cfg.radii = suites::parse_radii(radii_text);
      }
      const auto f = report::parse_format(format);
      const auto r = suites::run_sweep(cfg);
      const std::string path = output_path(out, "sweep", f);
      if (path.empty()) {
        std::cout << r.csv;
        std::cerr << report::emit_report(r.report, report::Format::text);
      } else {
        emit(path, report::emit_report(r.report, f));
        const auto p = std::filesystem::path(path);
        emit((p.parent_path() / (p.stem().string() + ".series.csv")).string(), r.csv);
      }
      return r.report.pass() ? 0 : 1;
    }
    if (*rep) {
      std::ifstream is(in);
      if (!is) throw Error("cannot read " + in);
      const auto r = report::from_json(nlohmann::json::parse(is));
      emit(out, report::emit_report(r, report::parse_format(format)));
      return r.pass() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
