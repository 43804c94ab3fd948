#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "stochorder/cli.hpp"
#include "stochorder/io.hpp"
#include "support/helpers.hpp"

using namespace stochorder;
using namespace stochorder::testing;
using stochorder::io::Json;

namespace {

const std::string kData = STOCHORDER_TEST_DATA;

std::string data(const std::string& name) { return kData + "/" + name; }

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json report(const CliRun& r) {
  Json j = Json::parse(r.out);
  j.erase("timing_ms");
  return j;
}

Json golden(const std::string& name) { return io::load_file(data("golden/" + name)); }

}  // namespace

TEST(Cli, EsOnUniformFourPoints) {
  CliRun r = run({"es", "--level", "0.5", data("u0123.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(report(r)["result"]["value"], "5/2");
}

TEST(Cli, CheckOrderEqualLawsHolds) {
  CliRun r = run({"check-order", "--relation", "ssd", data("u0123.json"), data("u0123.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(report(r)["witness"].is_null());
}

TEST(Cli, BernoulliTableRow) {
  CliRun r = run({"table", "bernoulli", "--grid", "default"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string header, line;
  std::getline(lines, header);
  EXPECT_EQ(header.rfind("c,rho,ssd,new,classic", 0), 0u);
  bool found = false;
  while (std::getline(lines, line)) {
    if (line.rfind("0.6,0.5,", 0) == 0) {
      found = true;
      EXPECT_EQ(line.substr(0, 14), "0.6,0.5,1,1,0,");
    }
  }
  EXPECT_TRUE(found);
}

TEST(Cli, GoldenReports) {
  struct Case {
    std::vector<std::string> args;
    std::string golden;
    int code;
  };
  const std::vector<Case> cases = {
      {{"es", "--level", "1/2", data("u0123.json")}, "es_u0123.json", 0},
      {{"check-order", "--relation", "cx", data("u02.json"), data("um13.json")}, "cx_holds.json", 0},
      {{"check-order", "--relation", "ssd", data("um13.json"), data("u02.json")}, "ssd_fails.json", 1},
      {{"check-cond", "--which", "icx", data("joint_icx.json")}, "cond_icx_fails.json", 1},
      {{"synthesize", "--mode", "cx", data("u02.json"), data("um13.json")}, "synth_cx.json", 0},
      {{"stoploss-compare", data("joint_nonneg.json")}, "stoploss_compare.json", 0},
  };
  for (const auto& c : cases) {
    CliRun r = run(c.args);
    EXPECT_EQ(r.code, c.code) << c.golden << "\n" << r.err;
    EXPECT_EQ(report(r), golden(c.golden)) << c.golden;
  }
}

TEST(Cli, ExitCodeContract) {
  struct Case {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<Case> cases = {
      // order checks
      {{"check-order", "--relation", "icx", data("u02.json"), data("u0123.json")}, 1},
      {{"check-order", "--relation", "st", data("u0123.json"), data("u02.json")}, 0},
      {{"check-order", "--relation", "st", data("u02.json"), data("u0123.json")}, 1},
      {{"check-order", "--relation", "ssd", data("normal01.json"), data("normal_spread.json")}, 0},
      {{"check-order", "--relation", "ssd", data("normal01.json"), data("u02.json")}, 2},
      {{"check-order", "--relation", "ssd", data("exp1.json"), data("exp1.json")}, 2},
      {{"check-order", "--relation", "foo", data("u02.json"), data("u02.json")}, 2},
      {{"check-order", "--relation", "ssd", data("malformed.json"), data("u02.json")}, 2},
      {{"check-order", "--relation", "ssd", data("bad_schema.json"), data("u02.json")}, 2},
      {{"check-order", "--relation", "ssd", data("bad_rational.json"), data("u02.json")}, 2},
      {{"check-order", "--relation", "ssd", data("bad_type.json"), data("u02.json")}, 2},
      {{"check-order", "--relation", "ssd", data("missing.json"), data("u02.json")}, 2},
      // conditions
      {{"check-cond", "--which", "new", data("joint_bernoulli.json")}, 0},
      {{"check-cond", "--which", "classic", data("joint_bernoulli.json")}, 0},
      {{"check-cond", "--which", "cx", data("joint_bernoulli.json")}, 0},
      {{"check-cond", "--which", "thm2", data("joint_bernoulli.json")}, 1},
      {{"check-cond", "--which", "new", data("joint_icx.json")}, 1},
      {{"check-cond", "--which", "new", data("u02.json")}, 2},
      // coupling
      {{"synthesize", "--mode", "ssd", data("u02.json"), data("um13.json")}, 0},
      {{"synthesize", "--mode", "cx", data("um13.json"), data("u02.json")}, 1},
      {{"synthesize", "--mode", "ssd", data("normal01.json"), data("u02.json")}, 2},
      // risk measures
      {{"es", "--level", "0.975", data("normal01.json")}, 0},
      {{"es", "--level", "1", data("u0123.json")}, 2},
      {{"es", "--level", "abc", data("u0123.json")}, 2},
      {{"phi", "--level", "1", data("u0123.json")}, 0},
      {{"stoploss", "--deductible", "1", data("exp1.json")}, 0},
      {{"cdf", "--at", "1", data("u0123.json")}, 0},
      {{"quantile", "--level", "0", data("u0123.json")}, 2},
      {{"discretize", "--grid", "8", data("normal01.json")}, 0},
      {{"discretize", "--grid", "1", data("normal01.json")}, 2},
      {{"discretize", "--grid", "8", data("u02.json")}, 2},
      // applications
      {{"table", "gaussian", "--format", "md"}, 0},
      {{"table", "bernoulli", "--format", "json", "--c", "0.6", "--rho", "0.5,-1"}, 0},
      {{"table", "bernoulli", "--grid", "huge"}, 2},
      {{"improver", data("joint_bernoulli.json")}, 1},
      {{"improver", data("joint_nonneg.json")}, 0},
      {{"marketable", "--indemnity", data("fixed_1_1.json"), "--loss", data("exp1.json"), "--p0", "0.36"}, 0},
      {{"marketable", "--indemnity", data("fixed_1_1.json"), "--loss", data("exp1.json"), "--p0", "0.4"}, 1},
      {{"marketable", "--indemnity", data("stoploss_1.json"), "--loss", data("loss_discrete.json"), "--p0", "1"}, 0},
      {{"marketable", "--indemnity", data("bad_indemnity.json"), "--loss", data("loss_discrete.json"), "--p0", "1"}, 2},
      {{"marketable", "--indemnity", data("piecewise.json"), "--loss", data("exp1.json"), "--p0", "0.1"}, 2},
      {{"premium", "--utility", "exp:1.0", "--wealth", "10", "--loss", data("loss_discrete.json"), "--indemnity", data("piecewise.json")}, 0},
      {{"premium", "--utility", "cubic", "--wealth", "10", "--loss", data("loss_discrete.json"), "--indemnity", data("piecewise.json")}, 2},
      {{"stoploss-compare", data("joint_icx.json")}, 1},
      {{"stoploss-compare", data("joint_nonneg.json"), "--deductibles", "0,1/2,3"}, 0},
      {{"protective-put", "--drift", "-0.05", "--sigma", "0.2", "--strike", "1", "--spot", "1", "--horizon", "1", "--time", "0.5"}, 0},
      {{"protective-put", "--drift", "0.05", "--sigma", "0.2", "--strike", "1", "--spot", "1", "--horizon", "1", "--time", "0.5"}, 2},
      // usage
      {{}, 2},
      {{"nonsense"}, 2},
      {{"es", data("u0123.json")}, 2},
  };
  for (const auto& c : cases) {
    CliRun r = run(c.args);
    std::string joined;
    for (const auto& a : c.args) joined += a + " ";
    EXPECT_EQ(r.code, c.code) << joined << "\n" << r.err;
    if (r.code == 0 || r.code == 1) {
      if (r.out.empty() || r.out[0] != '{') continue;  // tables
      Json j = Json::parse(r.out);
      EXPECT_EQ(j["witness"].is_null(), r.code == 0) << joined;
      for (const char* key : {"subcommand", "inputs", "result", "timing_ms"}) EXPECT_TRUE(j.contains(key)) << key;
    }
  }
}

TEST(Cli, ReportsHaveSortedKeys) {
  CliRun r = run({"check-order", "--relation", "ssd", data("um13.json"), data("u02.json")});
  const std::string& s = r.out;
  EXPECT_LT(s.find("\"inputs\""), s.find("\"result\""));
  EXPECT_LT(s.find("\"result\""), s.find("\"subcommand\""));
  EXPECT_LT(s.find("\"subcommand\""), s.find("\"timing_ms\""));
  EXPECT_LT(s.find("\"timing_ms\""), s.find("\"witness\""));
}

TEST(Cli, EchoedInputsRoundTrip) {
  for (const char* file : {"u0123.json", "decimals.json", "normal01.json", "exp1.json", "point0.json"}) {
    Distribution original = io::distribution_from_json(io::load_file(data(file)));
    CliRun r = run({"cdf", "--at", "0", data(file)});
    ASSERT_EQ(r.code, 0) << r.err;
    Json echoed = Json::parse(r.out)["inputs"]["X"];
    EXPECT_EQ(io::distribution_from_json(echoed), original) << file;
  }
  JointDist j = io::joint_from_json(io::load_file(data("joint_bernoulli.json")));
  CliRun r = run({"check-cond", "--which", "new", data("joint_bernoulli.json")});
  EXPECT_EQ(io::joint_from_json(Json::parse(r.out)["inputs"]["joint"]), j);
  IndemnitySchedule ind = io::indemnity_from_json(io::load_file(data("piecewise.json")));
  EXPECT_EQ(io::to_json(io::indemnity_from_json(io::to_json(ind))), io::to_json(ind));
}

TEST(Io, DecimalsParseExactly) {
  DiscreteDist d = std::get<DiscreteDist>(io::distribution_from_json(io::load_file(data("decimals.json"))));
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.atoms()[0], (Atom{R("-5/2"), R("1/2")}));
  EXPECT_EQ(d.atoms()[1], (Atom{R("1/10"), R("1/2")}));
}

TEST(Io, ErrorsNameTheLocation) {
  try {
    io::distribution_from_json(io::load_file(data("bad_schema.json")));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("atoms[0].p"), std::string::npos) << e.what();
  }
  try {
    io::load_file(data("malformed.json"));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos) << e.what();
  }
}
