#include "ivt_cli/cli_app.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace ivt::cli {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, ApplyExample) {
  const CliRun r = run({"apply", "--radix", "3", "--rule", "7", "--x", "55"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["result"]["value"], "14");
  EXPECT_EQ(j["config"]["command"], "apply");
  EXPECT_EQ(j["config"]["radix"], "3");
  EXPECT_TRUE(j["findings"].is_array());
}

TEST(Cli, GlobalOptionsMayFollowTheSubcommand) {
  const CliRun before = run({"--radix", "3", "--rule", "16", "apply", "--x", "55"});
  const CliRun after = run({"apply", "--x", "55", "--radix", "3", "--rule", "16"});
  ASSERT_EQ(before.code, exit_ok);
  EXPECT_EQ(before.json()["result"]["value"], "41");
  EXPECT_EQ(before.out, after.out);
}

TEST(Cli, RuleOutOfRangeIsInvalidInput) {
  const CliRun r = run({"apply", "--radix", "3", "--rule", "27", "--x", "1"});
  EXPECT_EQ(r.code, exit_invalid_input);
  EXPECT_NE(r.err.find("rule index out of range"), std::string::npos);
  const CliRun huge = run({"apply", "--radix", "2", "--rule", "99999999999999999999999", "--x", "1"});
  EXPECT_EQ(huge.code, exit_invalid_input);
  EXPECT_NE(huge.err.find("rule index out of range"), std::string::npos);
}

TEST(Cli, RadixIsValidatedBeforeRule) {
  const CliRun r = run({"apply", "--radix", "17", "--rule", "999", "--x", "1"});
  EXPECT_EQ(r.code, exit_invalid_input);
  EXPECT_NE(r.err.find("radix"), std::string::npos);
  EXPECT_EQ(r.err.find("rule index"), std::string::npos);
}

TEST(Cli, OtherInvalidInputs) {
  EXPECT_EQ(run({"apply", "--radix", "3", "--rule", "7"}).code, exit_invalid_input);
  EXPECT_EQ(run({"apply", "--radix", "3", "--rule", "7", "--x", "-4"}).code, exit_invalid_input);
  EXPECT_EQ(run({"apply", "--radix", "3", "--rule", "7", "--x", "1", "--semantics", "wide"}).code,
            exit_invalid_input);
  EXPECT_EQ(run({"frobnicate"}).code, exit_invalid_input);
  EXPECT_EQ(run({}).code, exit_invalid_input);
  EXPECT_EQ(run({"apply", "--radix", "3", "--rule", "7", "--x", "1", "--format", "xml"}).code,
            exit_invalid_input);
  // fixed width domain
  EXPECT_EQ(run({"apply", "--radix", "2", "--rule", "1", "--semantics", "fixed:2", "--x", "4"}).code,
            exit_invalid_input);
  EXPECT_EQ(run({"census", "--radix", "2", "--semantics", "fixed:3"}).code, exit_invalid_input);
}

TEST(Cli, IterateAndSemantics) {
  const CliRun trimmed = run({"iterate", "--radix", "2", "--rule", "1", "--x", "2", "--n", "2"});
  const CliRun fixed = run({"iterate", "--radix", "2", "--rule", "1", "--x", "2", "--n", "2",
                         "--semantics", "fixed:2"});
  EXPECT_EQ(trimmed.json()["result"]["value"], "0");
  EXPECT_EQ(fixed.json()["result"]["value"], "2");
  EXPECT_EQ(fixed.json()["result"]["value_via_word_map"], "2");
}

TEST(Cli, Orbit) {
  const CliRun r = run({"orbit", "--radix", "3", "--rule", "7", "--x", "55", "--semantics", "fixed:4"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const Json res = r.json()["result"];
  EXPECT_EQ(res["transient"], Json::array());
  EXPECT_EQ(res["cycle_length"], "3");
  EXPECT_EQ(res["cycle"][0], "55");
}

TEST(Cli, PreimageAndMeasure) {
  const CliRun pre = run({"preimage", "--radix", "3", "--rule", "15", "--set", "10,7,2,1,0",
                       "--bound", "10000"});
  ASSERT_EQ(pre.code, exit_ok) << pre.err;
  EXPECT_EQ(pre.json()["result"]["preimage"], Json::array({"0", "1", "2", "5", "20"}));
  EXPECT_EQ(pre.json()["result"]["set"], Json::array({"0", "1", "2", "7", "10"}));

  const CliRun mersenne = run({"measure", "--radix", "2", "--rule", "1", "--set", "0",
                            "--bound", "1000000"});
  const Json res = mersenne.json()["result"];
  EXPECT_EQ(res["mu_preimage"], "19");
  EXPECT_EQ(res["preserving_on_bound"], false);
  EXPECT_EQ(res["growth_flag"], true);
  EXPECT_EQ(mersenne.code, exit_ok);
  EXPECT_EQ(run({"measure", "--radix", "2", "--rule", "1", "--set", "0", "--bound", "1000000",
                 "--assert"}).code,
            exit_property_failed);
}

TEST(Cli, CensusBinary) {
  const CliRun r = run({"census", "--radix", "2", "--bound", "4096"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const Json res = r.json()["result"];
  EXPECT_EQ(res["rule_count"], "4");
  EXPECT_EQ(res["claim_count"], "1");
  EXPECT_EQ(res["counts"]["reaches_zero"], "2");
  EXPECT_EQ(res["counts"]["reaches_fixed_point_any_c"], "3");
  EXPECT_EQ(res["counts"]["reaches_fixed_point_common_c"], "1");
  EXPECT_EQ(res["rules"].size(), 4u);
  EXPECT_EQ(r.json()["findings"].size(), 3u);
}

TEST(Cli, CensusCsvHasFixedColumns) {
  const CliRun r = run({"census", "--radix", "2", "--bound", "64", "--format", "csv"});
  ASSERT_EQ(r.code, exit_ok);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header,
            "rule,table,reaches_zero,reaches_fixed_point_any_c,reaches_fixed_point_common_c,"
            "reaches_zero_witness,reaches_fixed_point_any_c_witness,"
            "reaches_fixed_point_common_c_witness");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST(Cli, StabilityWitness) {
  const CliRun r = run({"stability", "--radix", "2", "--rule", "2", "--xbar", "5", "--bound", "100"});
  ASSERT_EQ(r.code, exit_ok);
  EXPECT_EQ(r.json()["result"]["holds"], false);
  EXPECT_EQ(r.json()["result"]["witness"], "4");
  EXPECT_EQ(run({"stability", "--radix", "2", "--rule", "2", "--xbar", "5", "--bound", "100",
                 "--assert"}).code,
            exit_property_failed);
}

TEST(Cli, ConjugacyAndCompose) {
  const CliRun conj = run({"conjugacy", "--radix", "3", "--j1", "16", "--j2", "8", "--width", "4",
                        "--sigma", "1,2,0", "--assert"});
  ASSERT_EQ(conj.code, exit_ok) << conj.err;
  EXPECT_EQ(conj.json()["result"]["certificate"]["kind"], "conjugacy");

  const CliRun fail = run({"conjugacy", "--radix", "3", "--j1", "16", "--j2", "7", "--width", "2",
                        "--sigma", "1,2,0", "--assert"});
  EXPECT_EQ(fail.code, exit_property_failed);
  const Json f = fail.json()["result"]["failures"][0];
  EXPECT_EQ(f["level"], "digit");
  EXPECT_EQ(f["point"], "2");

  const CliRun comp = run({"compose", "--radix", "3", "--outer", "16", "--inner", "18",
                        "--against", "13,16", "--width", "4", "--assert"});
  ASSERT_EQ(comp.code, exit_ok) << comp.err;
  EXPECT_EQ(comp.json()["result"]["index"], "13");
  EXPECT_EQ(comp.json()["result"]["against"]["holds"], true);

  EXPECT_EQ(run({"cross-factor", "--radix", "3", "--j1", "16", "--j2", "18", "--width", "3",
                 "--assert"}).code,
            exit_ok);
}

TEST(Cli, InjectivityAndInvariantSets) {
  const CliRun inj = run({"injectivity", "--radix", "2", "--rule", "1", "--bound", "1000"});
  EXPECT_EQ(inj.json()["result"]["injective"], false);
  EXPECT_EQ(inj.json()["result"]["characterization_match"], true);
  const CliRun inv = run({"invariant-sets", "--radix", "2", "--rule", "2", "--bound", "7"});
  EXPECT_EQ(inv.json()["result"]["component_count"], "8");
  EXPECT_EQ(run({"contraction", "--radix", "3", "--rule", "0", "--assert"}).code, exit_ok);
}

TEST(Cli, RepeatedRunsAreIdentical) {
  const std::vector<std::string> args{"census", "--radix", "3", "--bound", "729", "--threads", "4"};
  const CliRun a = run(args);
  const CliRun b = run(args);
  ASSERT_EQ(a.code, exit_ok);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, run({"census", "--radix", "3", "--bound", "729", "--threads", "1"}).out);
}

}  // namespace
}  // namespace ivt::cli
