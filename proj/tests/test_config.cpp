#include <doctest.h>

#include <random>

#include "eemit/config.hpp"

using namespace eemit;

namespace {

ExitCode error_code(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.code();
  }
  return kExitOk;
}

}  // namespace

TEST_CASE("reference Lienard configuration") {
  auto c = parse_config(
      "# bias study\n"
      "kind=L1\n"
      "alpha=0.45\n"
      "beta=0.5\n"
      "gamma=0.5\n"
      "f1=0.2\n"
      "omega1=0.7315\n"
      "\n"
      "A = 0.0001\n");
  SystemSpec expected;
  expected.kind = SystemKind::L1;
  expected.alpha = 0.45;
  expected.beta = 0.5;
  expected.gamma = 0.5;
  expected.f1 = 0.2;
  expected.omega1 = 0.7315;
  expected.A = 0.0001;
  CHECK(c.spec == expected);
  CHECK(c.n == 8.0);
  CHECK(c.sim.observable == Observable::Y);
  CHECK(c.sim.ic == State{0.1, 0.1});
  CHECK(c.sim.transient_steps == 100000);
  CHECK(c.sim.record_steps == kDefaultRecordSteps);
  CHECK_FALSE(c.record_steps_given);
  REQUIRE(c.ics.size() == 1);
  CHECK(c.ics[0] == c.sim.ic);
}

TEST_CASE("non-polynomial defaults") {
  auto c = parse_config("kind=NP1\nomega0_sq=0.25\nlambda=0.5\n");
  CHECK(c.n == 4.0);
  CHECK(c.sim.observable == Observable::X);
  CHECK(c.sim.ic == State{0.0, 0.0});
  CHECK(c.sim.transient_steps == 1000000);
}

TEST_CASE("parse errors exit with 2") {
  CHECK(error_code("") == kExitParse);
  CHECK(error_code("# only a comment\n\n") == kExitParse);
  CHECK(error_code("kind=L1\nalpha\n") == kExitParse);
  CHECK(error_code("kind=L1\nalpha=abc\n") == kExitParse);
  CHECK(error_code("kind=L1\nics=1;2\n") == kExitParse);
}

TEST_CASE("validation errors exit with 3") {
  CHECK(error_code("foo=1\n") == kExitValidation);
  CHECK(error_code("alpha=1\n") == kExitValidation);
  CHECK(error_code("kind=L7\n") == kExitValidation);
  CHECK(error_code("kind=NP1\nlambda=-1\n") == kExitValidation);
  CHECK(error_code("kind=NP1\nbeta=1\n") == kExitValidation);
  CHECK(error_code("kind=L1\nrecord_steps=0\n") == kExitValidation);
  CHECK(error_code("kind=L1\nrecord_steps=2.5\n") == kExitValidation);
  CHECK(error_code("kind=L1\nobservable=z\n") == kExitValidation);
  CHECK(error_code("kind=L1\ncollect=probability,bogus\n") == kExitValidation);
  CHECK(error_code("kind=L1\naxis1_lo=0\n") == kExitValidation);
}

TEST_CASE("unknown keys are all named") {
  try {
    parse_config("kind=L1\nfoo=1\nbar=2\n");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("foo") != std::string::npos);
    CHECK(msg.find("bar") != std::string::npos);
  }
}

TEST_CASE("later values and overrides win") {
  auto c = parse_config("kind=L1\nA=1\nA=2\n", {{"A", "3"}, {"f1", "0.5"}});
  CHECK(c.spec.A == 3.0);
  CHECK(c.spec.f1 == 0.5);
  auto kv = parse_override("omega1=0.7315");
  CHECK(kv.first == "omega1");
  CHECK(kv.second == "0.7315");
  CHECK_THROWS_AS(parse_override("omega1"), ConfigError);
}

TEST_CASE("scan keys") {
  auto c = parse_config(
      "kind=L2\nomega2=1\n"
      "axis1=f2\naxis1_lo=0\naxis1_hi=0.001\naxis1_points=11\n"
      "ics=0.1,0.1;-1,2\ncollect=probability,bif_maxima\nbif_cap=64\n");
  REQUIRE(c.axis1.has_value());
  CHECK(c.axis1->parameter == "f2");
  CHECK(c.axis1->points == 11);
  CHECK(c.ics == std::vector<State>{{0.1, 0.1}, {-1.0, 2.0}});
  CHECK(c.collect.bif_maxima);
  CHECK_FALSE(c.collect.mle);
  auto plan = make_scan_plan(c, 2);
  CHECK(plan.sim.record_steps == kDefaultScanRecordSteps);
  CHECK(plan.bif_cap == 64);
  CHECK(plan.workers == 2);

  auto given = parse_config("kind=L1\naxis1=A\naxis1_hi=1\nrecord_steps=1000\n");
  CHECK(make_scan_plan(given, 1).sim.record_steps == 1000);
  CHECK_THROWS_AS(make_scan_plan(parse_config("kind=L1\n"), 1), ConfigError);
  CHECK_THROWS_AS(make_scan_plan(parse_config("kind=L1\naxis1=f2\n"), 1), ConfigError);
}

TEST_CASE("basin keys") {
  auto c = parse_config("kind=LM\nomega1=0.758\nbasin_nx=10\nbasin_ny=12\nbasin_x_lo=-1\nbasin_total_steps=5000\n");
  auto plan = make_basin_plan(c, 3);
  CHECK(plan.nx == 10);
  CHECK(plan.ny == 12);
  CHECK(plan.x_lo == -1.0);
  CHECK(plan.classifier.mle.total_steps == 5000);
  CHECK(plan.spec == c.spec);
}

TEST_CASE("serialized specs parse back to the same spec") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (auto kind : {SystemKind::L1, SystemKind::L2, SystemKind::LM, SystemKind::NP1, SystemKind::NP2, SystemKind::NP3}) {
    for (int trial = 0; trial < 50; ++trial) {
      SystemSpec s;
      s.kind = kind;
      for (auto name : kParameterNames) {
        if (uses_parameter(kind, name)) *parameter_ref(s, name) = u(rng) * std::pow(10.0, trial % 7 - 3);
      }
      if (is_non_polynomial(kind)) s.lambda = std::abs(s.lambda);
      CHECK(parse_config(serialize(s)).spec == s);
    }
  }
}

TEST_CASE("known keys cover the parameters") {
  const auto& keys = known_keys();
  for (auto name : kParameterNames) CHECK(std::find(keys.begin(), keys.end(), name) != keys.end());
  CHECK(std::find(keys.begin(), keys.end(), "kind") != keys.end());
}
