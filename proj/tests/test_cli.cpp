#include <gtest/gtest.h>

#include <json.hpp>

#include "cli_cases.hpp"

namespace {

using nlohmann::ordered_json;

std::string fx(const std::string& name) { return "'" + cli::source("fixtures/" + name) + "'"; }

std::string scalar(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "null";
  return v.dump();
}

// "key: value" for every scalar (or flat array) member, in document order.
void expected_lines(const ordered_json& j, std::vector<std::string>& out) {
  if (j.is_array()) {
    for (const auto& v : j) expected_lines(v, out);
    return;
  }
  if (!j.is_object()) return;
  for (const auto& [k, v] : j.items()) {
    if (v.is_array() && std::all_of(v.begin(), v.end(), [](const ordered_json& x) { return !x.is_structured(); })) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : ", ") + scalar(x);
      out.push_back(k + ": " + (v.empty() ? "(none)" : s));
    } else if (v.is_structured()) {
      expected_lines(v, out);
    } else {
      out.push_back(k + ": " + scalar(v));
    }
  }
}

const std::vector<std::string> kCommands = {
    "homology " + fx("dga_db_a2.txt"),
    "homology-ring " + fx("dga_db_a2.txt"),
    "check-basis " + fx("candidates_lambda_z.txt"),
    "search-basis " + fx("lambda_z_xy.txt"),
    "wedge-model " + fx("poly_xy_f3.txt"),
    "hh " + fx("hh_dual_z.txt") + " --cap 5",
    "hh-dga " + fx("dga_db_a2.txt") + " --cap 4",
    "thh " + fx("poly_x_f2.txt") + " --thh '" + cli::source("data/thh/thh_hf2.txt") + "' --cap 6",
    "steenrod-table --p 3 --cap 17",
    "apply-dl --p 3 --op bQ4 --elt tau0",
    "obstruct-square " + fx("trunc4_f2.txt") + " --cap 4",
    "obstruct-bockstein " + fx("ext_xy_f3.txt") + " --p 3 --cap 4 --control",
    "forced-map " + fx("trunc4_f2.txt") + " --cap 8 --gen x",
    "extension-status " + fx("trunc4_f2.txt") + " --cap 4 --formal",
};

}  // namespace

TEST(Cli, JsonAndTextCarryTheSameFields) {
  for (const auto& cmd : kCommands) {
    const cli::Run text = cli::run(cmd), json = cli::run("--json " + cmd);
    ASSERT_EQ(text.status, 0) << cmd;
    ASSERT_EQ(json.status, 0) << cmd;
    const ordered_json j = ordered_json::parse(json.out);
    EXPECT_EQ(j.at("command").get<std::string>(), cmd.substr(0, cmd.find(' '))) << cmd;
    std::vector<std::string> lines;
    expected_lines(j, lines);
    std::size_t pos = 0;
    for (const auto& l : lines) {
      const std::size_t at = text.out.find(l, pos);
      ASSERT_NE(at, std::string::npos) << cmd << ": missing '" << l << "'";
      pos = at + l.size();
    }
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli::run("").status, 1);
  EXPECT_EQ(cli::run("hh " + fx("hh_dual_z.txt")).status, 1);  // missing --cap
  EXPECT_EQ(cli::run("hh /nonexistent --cap 2").status, 1);
  EXPECT_EQ(cli::run("apply-dl --p 3 --op R1 --elt tau0").status, 2);
  EXPECT_EQ(cli::run("obstruct-square " + fx("ext_xy_f3.txt") + " --cap 4").status, 2);
  EXPECT_EQ(cli::run("obstruct-bockstein " + fx("ext_xy_f3.txt") + " --p 3 --cap 3").status, 2);
  // A negative verdict is still a successful computation.
  EXPECT_EQ(cli::run("search-basis " + fx("lambda_z_xy.txt")).status, 0);
  EXPECT_EQ(cli::run("check-basis " + fx("candidates_lambda_z.txt")).status, 0);
}

TEST(Cli, ParseErrorsNameTheLine) {
  const cli::Run r = cli::run("hh '" + cli::source("tests/fixtures/bad_directive.txt") + "' --cap 2", true);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("line 3"), std::string::npos) << r.out;
}

TEST(Cli, ReportsKeyResults) {
  EXPECT_NE(cli::run("check-basis " + fx("candidates_lambda_z.txt")).out.find("Violation at (y,x): y*x = -x*y"),
            std::string::npos);
  const ordered_json s = ordered_json::parse(cli::run("--json search-basis " + fx("lambda_z_xy.txt")).out);
  EXPECT_EQ(s.at("status").get<std::string>(), "ProvenNone");
  const ordered_json v = ordered_json::parse(cli::run("--json obstruct-square " + fx("poly_x_f2.txt") + " --cap 4").out);
  EXPECT_EQ(v.at("verdict").at("status").get<std::string>(), "Unsolvable");
  EXPECT_EQ(v.at("verdict").at("replay").get<std::string>(), "ok");
  const ordered_json d = ordered_json::parse(cli::run("--json apply-dl --p 2 --op Q6 --elt xi1").out);
  EXPECT_EQ(d.at("result").get<std::string>(), "zeta3");
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
  for (const auto& cmd : kCommands) {
    const cli::Run one = cli::run("--threads 1 " + cmd), four = cli::run("--threads 4 " + cmd);
    EXPECT_EQ(one.out, four.out) << cmd;
  }
}
