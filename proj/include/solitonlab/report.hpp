#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace solitonlab::report {

/// One verdict. `relation` reads "value <relation> tolerance"; "info" always
/// passes and only records the value.
struct Check {
  std::string suite;
  std::string name;
  std::string subject;
  std::string anchor;  // what is being checked, in words
  double value = 0.0;
  std::string relation = "<=";
  double tolerance = 0.0;
  bool pass = false;
  nlohmann::json details = nlohmann::json::object();
};

Check make_check(std::string suite, std::string name, std::string subject, std::string anchor, double value,
                 std::string relation, double tolerance, nlohmann::json details = nlohmann::json::object());

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::string config_hash;
  nlohmann::json config = nlohmann::json::object();
  std::vector<Check> checks;
  bool pass() const;
};

enum class Format { json, csv, text };
Format parse_format(const std::string& s);
std::string extension(Format f);

nlohmann::json to_json(const Report& r);
Report from_json(const nlohmann::json& j);

std::string emit_report(const Report& r, Format f);

/// RFC 4180 field: quoted when it holds a comma, quote or line break.
std::string csv_field(std::string_view s);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// Writes through a temporary file and a rename.
void write_atomic(const std::string& path, const std::string& bytes);

}  // namespace solitonlab::report
