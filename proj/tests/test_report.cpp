#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "casq/report.hpp"
#include "casq/verify.hpp"

using namespace casq;

TEST_CASE("json writer escaping and number format") {
  JsonWriter w;
  w.begin_object();
  w.key("text");
  w.value("line\nwith \"quotes\" and \\slash");
  w.key("num");
  w.value(0.25);
  w.key("z");
  w.value(Complex(1.0, -2.0));
  w.end_object();
  REQUIRE(w.str() ==
          "{\"text\":\"line\\nwith \\\"quotes\\\" and \\\\slash\","
          "\"num\":2.5000000000000000e-01,"
          "\"z\":{\"re\":1.0000000000000000e+00,\"im\":-2.0000000000000000e+00}}");
}

TEST_CASE("csv quoting follows RFC 4180") {
  REQUIRE(csv_field("plain") == "plain");
  REQUIRE(csv_field("a,b") == "\"a,b\"");
  REQUIRE(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  REQUIRE(csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("default verification run passes every check with unique ids") {
  VerifyConfig cfg;
  const auto report = run_verification(cfg);
  REQUIRE(report.failed() == 0);
  REQUIRE(report.count(CheckStatus::pass) > 25);
  std::set<std::string> ids;
  for (const auto& c : report.checks) {
    REQUIRE(ids.insert(c.id).second);  // unique
    REQUIRE_FALSE(c.statement.empty());
  }
  // massless default config skips the spinor checks with the reason recorded
  bool spinor_skip = false;
  for (const auto& c : report.checks)
    if (c.id == "density.spinor_eigenvectors") {
      REQUIRE(c.status == CheckStatus::skip);
      REQUIRE(c.note.find("MasslessSpinor") != std::string::npos);
      spinor_skip = true;
    }
  REQUIRE(spinor_skip);
}

TEST_CASE("massive configuration runs the spinor checks") {
  VerifyConfig cfg;
  cfg.geom.m = 0.8;
  const auto report = run_verification(cfg);
  for (const auto& c : report.checks)
    if (c.id == "density.spinor_eigenvectors" || c.id == "density.spinor_subspaces")
      REQUIRE(c.status == CheckStatus::pass);
  REQUIRE(report.failed() == 0);
}

TEST_CASE("tolerance overrides make the harness falsifiable") {
  VerifyConfig cfg;
  cfg.tol_overrides["density.trace_one"] = 1e-30;
  const auto report = run_verification(cfg);
  REQUIRE(report.failed() >= 1);
  for (const auto& c : report.checks)
    if (c.id == "density.trace_one") REQUIRE(c.status == CheckStatus::fail);
}

TEST_CASE("report serialization round trips counts and is self-consistent") {
  VerifyConfig cfg;
  auto report = run_verification(cfg);
  report.config_echo.emplace_back("L", "1.0");
  const std::string js = report_to_json(report);
  REQUIRE(js.find("\"schema\":\"casimir-qubit/1\"") != std::string::npos);
  REQUIRE(js.find("\"fail\":0") != std::string::npos);
  REQUIRE(js.find("timestamp") == std::string::npos);  // determinism by design
  const std::string cs = report_to_csv(report);
  std::size_t rows = 0;
  for (char c : cs)
    if (c == '\n') ++rows;
  REQUIRE(rows == report.checks.size() + 1);  // header + one row per check

  // identical configs serialize to identical bytes
  const auto again = run_verification(cfg);
  auto copy = again;
  copy.config_echo = report.config_echo;
  REQUIRE(report_to_json(copy) == js);
}

TEST_CASE("thread count does not change the report bytes") {
  VerifyConfig one, eight;
  one.threads = 1;
  eight.threads = 8;
  REQUIRE(report_to_json(run_verification(one)) == report_to_json(run_verification(eight)));
}
