// Acceptance battery: one PASS/FAIL line per criterion. Exit status is 0 only
// when every criterion passes.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "solitonlab/report.hpp"
#include "solitonlab/suites.hpp"

namespace su = solitonlab::suites;
namespace rp = solitonlab::report;

namespace {

struct Run {
  rp::Report report;
  double seconds = 0;
};

Run run(const std::string& suite) {
  su::RunConfig cfg;
  cfg.suite = suite;
  const auto t0 = std::chrono::steady_clock::now();
  Run r{su::run_verify(cfg), 0};
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string failures(const rp::Report& r) {
  std::string s;
  int shown = 0, total = 0;
  for (const auto& c : r.checks) {
    if (c.pass) continue;
    ++total;
    if (shown++ < 4) {
      char buf[256];
      std::snprintf(buf, sizeof buf, "%s%s/%s [%s] = %.6g %s %.3g", s.empty() ? "" : "; ", c.suite.c_str(),
                    c.name.c_str(), c.subject.c_str(), c.value, c.relation.c_str(), c.tolerance);
      s += buf;
    }
  }
  if (total > shown) s += "; +" + std::to_string(total - shown) + " more";
  return s;
}

int passed(const rp::Report& r) {
  int k = 0;
  for (const auto& c : r.checks) k += c.pass;
  return k;
}

bool line(int n, const char* what, const Run& r, double budget, const std::string& extra = {}) {
  const bool in_time = r.seconds < budget;
  const bool ok = r.report.pass() && in_time && extra.empty();
  std::printf("criterion %d: %s  %s  (%d/%zu checks, %.1f s of %.0f s)\n", n, ok ? "PASS" : "FAIL", what,
              passed(r.report), r.report.checks.size(), r.seconds, budget);
  if (!r.report.pass()) std::printf("    failed: %s\n", failures(r.report).c_str());
  if (!in_time) std::printf("    over the time budget\n");
  if (!extra.empty()) std::printf("    %s\n", extra.c_str());
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main() {
  bool all = true;
  all &= line(1, "soliton residual suite", run("residual"), 30);
  all &= line(2, "Weitzenbock suite", run("weitzenbock"), 120);
  all &= line(3, "soliton identity suite", run("identities"), 120);
  all &= line(4, "algebraic property suite", run("appendix"), 60);
  all &= line(5, "Q sign and equality", run("qsign"), 120);
  all &= line(6, "Bryant asymptotics", run("asymptotics"), 180);
  all &= line(7, "integral suite", run("integrals"), 240);

  const Run a = run("all"), b = run("all");
  const bool same = rp::emit_report(a.report, rp::Format::json) == rp::emit_report(b.report, rp::Format::json);
  Run full = a;
  full.seconds = std::max(a.seconds, b.seconds);
  all &= line(8, "full battery, deterministic", full, 600, same ? "" : "two runs with the same seed differ");
  return all ? 0 : 1;
}
