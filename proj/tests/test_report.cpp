#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "doctest.h"
#include "solitonlab/error.hpp"
#include "solitonlab/report.hpp"

namespace rp = solitonlab::report;

namespace {

rp::Report sample() {
  rp::Report r;
  r.suite = "demo";
  r.seed = 7;
  r.config = {{"suite", "demo"}, {"seed", 7}};
  r.config_hash = rp::hex64(rp::fnv1a64(r.config.dump()));
  r.checks.push_back(rp::make_check("demo", "a", "cigar, r=1", "weighted Einstein tensor (Ric - R g / 2) e^{-f}",
                                    1e-12, "<=", 1e-9, {{"points", 20}}));
  r.checks.push_back(rp::make_check("demo", "b", "x \"quoted\"", "anchor", 0.1 + 0.2, ">=", 0.3));
  r.checks.push_back(rp::make_check("demo", "c", "s", "info only", -5.0, "info", 0.0));
  return r;
}

}  // namespace

TEST_CASE("check verdicts") {
  CHECK(rp::make_check("s", "n", "x", "a", 1.0, "<=", 1.0).pass);
  CHECK_FALSE(rp::make_check("s", "n", "x", "a", 1.0, "<", 1.0).pass);
  CHECK(rp::make_check("s", "n", "x", "a", 2.0, ">", 1.0).pass);
  CHECK(rp::make_check("s", "n", "x", "a", -1e9, "info", 0.0).pass);
  CHECK_FALSE(rp::make_check("s", "n", "x", "a", std::nan(""), "<=", 1.0).pass);
  CHECK_FALSE(rp::make_check("s", "n", "x", "a", std::numeric_limits<double>::infinity(), ">=", 0.0).pass);
  CHECK_THROWS_AS(rp::make_check("s", "n", "x", "a", 1.0, "~", 1.0), solitonlab::InvalidArgument);
  auto r = sample();
  CHECK(r.pass());
  r.checks.push_back(rp::make_check("demo", "d", "s", "a", 2.0, "<=", 1.0));
  CHECK_FALSE(r.pass());
}

TEST_CASE("json round trip is byte identical") {
  auto r = sample();
  r.checks.push_back(rp::make_check("demo", "nan", "s", "a", std::nan(""), "<=", 1.0));
  const std::string a = rp::emit_report(r, rp::Format::json);
  const auto back = rp::from_json(nlohmann::json::parse(a));
  CHECK(rp::emit_report(back, rp::Format::json) == a);
  CHECK(back.seed == 7);
  CHECK(back.checks.size() == r.checks.size());
  CHECK_FALSE(back.pass());
}

TEST_CASE("csv quoting") {
  CHECK(rp::csv_field("plain") == "plain");
  CHECK(rp::csv_field("a,b") == "\"a,b\"");
  CHECK(rp::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(rp::csv_field("two\nlines") == "\"two\nlines\"");
  const std::string csv = rp::emit_report(sample(), rp::Format::csv);
  CHECK(csv.rfind("suite,name,subject,value,relation,tolerance,pass,anchor\n", 0) == 0);
  CHECK(csv.find("\"cigar, r=1\"") != std::string::npos);
  CHECK(csv.find("\"x \"\"quoted\"\"\"") != std::string::npos);
}

TEST_CASE("text cites anchors") {
  const std::string t = rp::emit_report(sample(), rp::Format::text);
  CHECK(t.find("weighted Einstein tensor") != std::string::npos);
  CHECK(t.find("PASS: 3/3 checks passed") != std::string::npos);
}

TEST_CASE("formats") {
  CHECK(rp::parse_format("json") == rp::Format::json);
  CHECK(rp::parse_format("csv") == rp::Format::csv);
  CHECK(rp::parse_format("text") == rp::Format::text);
  CHECK_THROWS_AS(rp::parse_format("xml"), solitonlab::InvalidArgument);
  CHECK(rp::extension(rp::Format::text) == "txt");
}

TEST_CASE("atomic writes") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "solitonlab_report_test";
  fs::remove_all(dir);
  const std::string path = (dir / "sub" / "r.json").string();
  rp::write_atomic(path, "first");
  rp::write_atomic(path, "second");
  std::ifstream in(path);
  std::string s;
  std::getline(in, s);
  CHECK(s == "second");
  CHECK_FALSE(fs::exists(path + ".tmp"));
  fs::remove_all(dir);
  CHECK_THROWS_WITH(rp::write_atomic("/proc/solitonlab.json", "x"), doctest::Contains("unwritable output path"));
}

TEST_CASE("fnv1a") {
  CHECK(rp::fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(rp::fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(rp::hex64(255) == "00000000000000ff");
}
