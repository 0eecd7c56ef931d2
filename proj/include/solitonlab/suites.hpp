#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "solitonlab/report.hpp"
#include "solitonlab/sweeps.hpp"

namespace solitonlab::suites {

struct RunConfig {
  std::string suite = "all";
  std::vector<std::string> solitons;  // empty: the suite's default list
  long samples = 0;                   // 0: suite default
  std::uint64_t seed = 1;
  std::vector<double> radii;          // sweeps only
  bool radii_given = false;
  double tol_scale = 1.0;             // multiplies every tolerance
  sweep::Mode mode = sweep::Mode::parallel;

  nlohmann::json to_json() const;
  std::string hash() const;
  /// Throws InvalidArgument for unknown suites or catalog entries.
  void validate() const;
};

std::vector<std::string> suite_names();

report::Report run_verify(const RunConfig& cfg);

struct SweepOutput {
  report::Report report;
  std::string csv;  // soliton,r,R,int_R,volume,area,ratio,deruelle_margin,bishop_gromov
};
SweepOutput run_sweep(const RunConfig& cfg);

/// "5,10,20" or "start:stop[:count]" (geometric); an empty string is an
/// empty list.
std::vector<double> parse_radii(const std::string& text);

}  // namespace solitonlab::suites
