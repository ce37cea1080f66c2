#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sixdp/cli.hpp"

using namespace sixdp;

TEST_CASE("parse_args: enumerate with an intercept-resend strategy") {
  const RunSpec spec =
      parse_args({"enumerate", "--strategy", "ira", "--eve-bases", "XY"});
  CHECK(spec.command == "enumerate");
  CHECK(spec.strategy_name == "ira");
  const auto* ira = std::get_if<InterceptResend>(&spec.scenario.strategy);
  REQUIRE(ira != nullptr);
  CHECK(ira->basis_q1.kind == BasisKind::X);
  CHECK(ira->basis_q2.kind == BasisKind::Y);
  CHECK(spec.parameters == "eve=X/Y");
  CHECK(spec.scenario.policy == ControlPolicy::OracleBasis);
  CHECK(spec.scenario.targets == ControlTargets::Both);
  CHECK(spec.format == "csv");
  CHECK(spec.out == "-");
}

TEST_CASE("parse_args: simulate with the double 2CNOT") {
  const RunSpec spec =
      parse_args({"simulate", "--strategy", "2cnot", "--variants", "v1,v2",
                  "--trials", "100000", "--seed", "7", "--format", "json"});
  CHECK(spec.command == "simulate");
  CHECK(spec.trials == 100000);
  CHECK(spec.seed == 7);
  CHECK(spec.format == "json");
  const auto* tc = std::get_if<TwoCnot>(&spec.scenario.strategy);
  REQUIRE(tc != nullptr);
  CHECK(tc->variant_q1 == CnotVariant::V1);
  CHECK(tc->variant_q2 == CnotVariant::V2);
  CHECK(spec.parameters == "variants=v1/v2");
}

TEST_CASE("parse_args: basis tokens") {
  const RunSpec slash = parse_args(
      {"enumerate", "--strategy", "ira", "--eve-bases", "Z/bloch:0.785,1.5"});
  const auto* ira = std::get_if<InterceptResend>(&slash.scenario.strategy);
  REQUIRE(ira != nullptr);
  CHECK(ira->basis_q1.kind == BasisKind::Z);
  CHECK(ira->basis_q2.kind == BasisKind::Bloch);
  CHECK(ira->basis_q2.theta == Catch::Approx(0.785));
  CHECK(ira->basis_q2.phi == Catch::Approx(1.5));

  const RunSpec same =
      parse_args({"enumerate", "--strategy", "ira-same", "--eve-bases", "Y"});
  const auto* ira2 = std::get_if<InterceptResend>(&same.scenario.strategy);
  REQUIRE(ira2 != nullptr);
  CHECK(ira2->basis_q1.kind == BasisKind::Y);
  CHECK(ira2->basis_q2.kind == BasisKind::Y);
  CHECK(same.parameters == "eve=Y");

  CHECK_THROWS_AS(
      parse_args({"enumerate", "--strategy", "ira", "--eve-bases", "QZ"}),
      UsageError);
  CHECK_THROWS_AS(
      parse_args({"enumerate", "--strategy", "ira", "--eve-bases", "X"}),
      UsageError);
  CHECK_THROWS_AS(parse_args({"enumerate", "--strategy", "ira", "--eve-bases",
                              "Z/bloch:9.9,0"}),
                  UsageError);
  CHECK_THROWS_AS(parse_args({"enumerate", "--strategy", "ira", "--eve-bases",
                              "Z/bloch:nope"}),
                  UsageError);
}

TEST_CASE("parse_args: strategy and flag validation") {
  try {
    parse_args({"enumerate", "--strategy", "foo"});
    FAIL("expected a usage error");
  } catch (const UsageError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("none") != std::string::npos);
    CHECK(msg.find("2cnot") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_args({"enumerate", "--strategy", "none", "--eve-bases",
                              "XY"}),
                  UsageError);
  CHECK_THROWS_AS(parse_args({"enumerate", "--strategy", "ira"}), UsageError);
  CHECK_THROWS_AS(parse_args({"enumerate", "--strategy", "2cnot", "--variants",
                              "skip,skip"}),
                  UsageError);
  CHECK_THROWS_AS(parse_args({"enumerate", "--strategy", "2cnot", "--variants",
                              "v1"}),
                  UsageError);
  CHECK_THROWS_AS(parse_args({"enumerate", "--strategy", "2cnot", "--variants",
                              "v3,v1"}),
                  UsageError);
  CHECK_THROWS_AS(parse_args({"enumerate", "--strategy", "ira", "--eve-bases",
                              "XY", "--variants", "v1,v2"}),
                  UsageError);
  CHECK_THROWS_AS(
      parse_args({"simulate", "--strategy", "none", "--seed", "1"}),
      UsageError);
  CHECK_THROWS_AS(parse_args({"simulate", "--strategy", "none", "--trials",
                              "0", "--seed", "1"}),
                  UsageError);
  CHECK_THROWS_AS(parse_args({"sweep", "--resolution", "4"}), UsageError);
  CHECK_THROWS_AS(parse_args({"bogus"}), UsageError);
  CHECK_THROWS_AS(parse_args({}), UsageError);
}

TEST_CASE("parse_args: sweep, claims, control and policy flags") {
  const RunSpec sweep = parse_args({"sweep", "--resolution", "16"});
  CHECK(sweep.command == "sweep");
  CHECK(sweep.resolution == 16);

  CHECK(parse_args({"sweep"}).resolution == 64);
  CHECK(parse_args({"claims"}).command == "claims");

  const RunSpec spec = parse_args({"enumerate", "--strategy", "ira-same",
                                   "--eve-bases", "Z", "--control", "q2",
                                   "--policy", "uniform"});
  CHECK(spec.scenario.policy == ControlPolicy::UniformBasis);
  CHECK(spec.scenario.targets == ControlTargets::Q2);
  CHECK(spec.parameters_json.at("policy") == "uniform");
  CHECK(spec.parameters_json.at("control") == "q2");

  CHECK_THROWS_AS(parse_args({"enumerate", "--strategy", "none", "--control",
                              "q3"}),
                  UsageError);
}

TEST_CASE("parse_args: help is not an error") {
  CHECK_THROWS_AS(parse_args({"--help"}), HelpRequested);
  try {
    parse_args({"--help"});
  } catch (const HelpRequested& h) {
    CHECK_FALSE(h.text.empty());
  }
}

TEST_CASE("run writes the documented csv to a file") {
  const std::string path = "cli_run_test_output.csv";
  RunSpec spec = parse_args({"enumerate", "--strategy", "none", "--out", path});
  CHECK(run(spec) == 0);

  std::ifstream f(path);
  REQUIRE(f.good());
  std::string header, row, extra;
  std::getline(f, header);
  std::getline(f, row);
  const bool more = static_cast<bool>(std::getline(f, extra));
  CHECK(header == kScenarioCsvHeader);
  CHECK(row.rfind("enumerate,none,,oracle,both,exact,", 0) == 0);
  CHECK_FALSE(more);
  std::remove(path.c_str());
}

TEST_CASE("byte-identical reruns of a seeded simulation") {
  const std::string p1 = "cli_sim_a.json", p2 = "cli_sim_b.json";
  for (const std::string& p : {p1, p2}) {
    RunSpec spec =
        parse_args({"simulate", "--strategy", "ira", "--eve-bases", "ZX",
                    "--trials", "2000", "--seed", "11", "--format", "json",
                    "--out", p});
    CHECK(run(spec) == 0);
  }
  std::ifstream a(p1), b(p2);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK_FALSE(sa.str().empty());
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("the claim suite passes and pins its headline lines") {
  const auto claims = run_claims();
  bool all = true;
  std::vector<std::string> lines;
  for (const auto& c : claims) {
    all = all && c.pass;
    lines.push_back(c.line);
  }
  CHECK(all);
  auto contains = [&](const std::string& want) {
    for (const auto& l : lines)
      if (l == want) return true;
    return false;
  };
  CHECK(contains("IRA mismatched-basis per-qubit evasion = 0.500000"));
  CHECK(contains("single 2CNOT Eve information = 1.000000 bits"));
  CHECK(contains("double 2CNOT recovers op (S12∧S21→X)"));
}
