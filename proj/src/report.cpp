#include "solitonlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "solitonlab/error.hpp"

namespace solitonlab::report {

using nlohmann::json;

Check make_check(std::string suite, std::string name, std::string subject, std::string anchor, double value,
                 std::string relation, double tolerance, json details) {
  Check c;
  c.suite = std::move(suite);
  c.name = std::move(name);
  c.subject = std::move(subject);
  c.anchor = std::move(anchor);
  c.value = value;
  c.relation = std::move(relation);
  c.tolerance = tolerance;
  c.details = std::move(details);
  if (c.relation == "info") {
    c.pass = true;
  } else if (!std::isfinite(value)) {
    c.pass = false;
  } else if (c.relation == "<=") {
    c.pass = value <= tolerance;
  } else if (c.relation == "<") {
    c.pass = value < tolerance;
  } else if (c.relation == ">=") {
    c.pass = value >= tolerance;
  } else if (c.relation == ">") {
    c.pass = value > tolerance;
  } else {
    throw InvalidArgument("unknown relation " + c.relation);
  }
  return c;
}

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "text") return Format::text;
  throw InvalidArgument("unknown format '" + s + "' (json, csv, text)");
}

std::string extension(Format f) {
  switch (f) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::text: return "txt";
  }
  return "out";
}

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double number(const json& j) { return j.is_null() ? std::nan("") : j.get<double>(); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

json to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"suite", c.suite},
                      {"name", c.name},
                      {"subject", c.subject},
                      {"anchor", c.anchor},
                      {"value", number(c.value)},
                      {"relation", c.relation},
                      {"tolerance", number(c.tolerance)},
                      {"pass", c.pass},
                      {"details", c.details}});
  }
  return {{"suite", r.suite},
          {"pass", r.pass()},
          {"provenance", {{"seed", r.seed}, {"config_hash", r.config_hash}, {"config", r.config}}},
          {"checks", checks}};
}

Report from_json(const json& j) {
  Report r;
  r.suite = j.at("suite").get<std::string>();
  const auto& p = j.at("provenance");
  r.seed = p.at("seed").get<std::uint64_t>();
  r.config_hash = p.at("config_hash").get<std::string>();
  r.config = p.at("config");
  for (const auto& c : j.at("checks")) {
    Check k;
    k.suite = c.at("suite").get<std::string>();
    k.name = c.at("name").get<std::string>();
    k.subject = c.at("subject").get<std::string>();
    k.anchor = c.at("anchor").get<std::string>();
    k.value = number(c.at("value"));
    k.relation = c.at("relation").get<std::string>();
    k.tolerance = number(c.at("tolerance"));
    k.pass = c.at("pass").get<bool>();
    k.details = c.at("details");
    r.checks.push_back(std::move(k));
  }
  return r;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string emit_report(const Report& r, Format f) {
  std::ostringstream os;
  switch (f) {
    case Format::json:
      os << to_json(r).dump(2) << '\n';
      break;
    case Format::csv: {
      os << "suite,name,subject,value,relation,tolerance,pass,anchor\n";
      for (const auto& c : r.checks) {
        os << csv_field(c.suite) << ',' << csv_field(c.name) << ',' << csv_field(c.subject) << ','
           << number(c.value).dump() << ',' << csv_field(c.relation) << ',' << number(c.tolerance).dump() << ','
           << (c.pass ? "true" : "false") << ',' << csv_field(c.anchor) << '\n';
      }
      break;
    }
    case Format::text: {
      std::size_t failed = 0;
      for (const auto& c : r.checks) failed += c.pass ? 0 : 1;
      os << "suite " << r.suite << "  seed " << r.seed << "  config " << r.config_hash << '\n';
      for (const auto& c : r.checks) {
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.suite << '/' << c.name << "  " << c.subject << "  " << fmt(c.value)
           << ' ' << c.relation;
        if (c.relation != "info") os << ' ' << fmt(c.tolerance);
        os << "  (" << c.anchor << ")\n";
        if (c.details.contains("error")) os << "       error: " << c.details["error"].get<std::string>() << '\n';
      }
      os << (failed == 0 ? "PASS" : "FAIL") << ": " << r.checks.size() - failed << '/' << r.checks.size()
         << " checks passed\n";
      break;
    }
  }
  return os.str();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_atomic(const std::string& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("unwritable output path: " + path);
    out << bytes;
    out.flush();
    if (!out) throw Error("unwritable output path: " + path);
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("unwritable output path: " + path);
  }
}

}  // namespace solitonlab::report
