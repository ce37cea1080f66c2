#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sixdp/claims.hpp"
#include "sixdp/report.hpp"

// Command-line front end. Subcommands: enumerate | simulate | sweep | claims.
// Exit codes: 0 success, 1 claim failure, 2 usage error.

namespace sixdp {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HelpRequested {
  std::string text;
};

struct RunSpec {
  std::string command;  // enumerate | simulate | sweep | claims
  ScenarioConfig scenario;
  std::string strategy_name;  // none | ira | ira-same | 2cnot
  std::string parameters;     // canonical parameter string, e.g. "eve=X/Y"
  nlohmann::json parameters_json = nlohmann::json::object();
  long long trials = 0;
  unsigned long long seed = 0;
  int resolution = 64;
  std::string out = "-";
  std::string format = "csv";
};

namespace detail {

inline Basis parse_basis_token(const std::string& tok) {
  if (tok == "Z") return basis_z();
  if (tok == "X") return basis_x();
  if (tok == "Y") return basis_y();
  if (tok.rfind("bloch:", 0) == 0) {
    const std::string rest = tok.substr(6);
    const auto comma = rest.find(',');
    if (comma == std::string::npos)
      throw UsageError("basis token '" + tok + "': expected bloch:theta,phi");
    double theta = 0.0, phi = 0.0;
    try {
      std::size_t p1 = 0, p2 = 0;
      theta = std::stod(rest.substr(0, comma), &p1);
      phi = std::stod(rest.substr(comma + 1), &p2);
      if (p1 != comma || p2 != rest.size() - comma - 1)
        throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw UsageError("basis token '" + tok + "': malformed bloch angles");
    }
    try {
      return basis_bloch(theta, phi);
    } catch (const std::exception& e) {
      throw UsageError("basis token '" + tok + "': " + e.what());
    }
  }
  throw UsageError("invalid basis token '" + tok +
                   "' (expected Z, X, Y, or bloch:theta,phi)");
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return parts;
    start = pos + 1;
  }
}

inline std::vector<Basis> parse_eve_bases(const std::string& value,
                                          int expected) {
  std::vector<std::string> tokens;
  if (value.find('/') != std::string::npos) {
    tokens = split(value, '/');
  } else if (expected == 2 && value.size() == 2 &&
             value.find(':') == std::string::npos) {
    tokens = {value.substr(0, 1), value.substr(1, 1)};  // compact form, e.g. XY
  } else {
    tokens = {value};
  }
  if (static_cast<int>(tokens.size()) != expected)
    throw UsageError("--eve-bases '" + value + "': expected " +
                     std::to_string(expected) + " basis token(s)");
  std::vector<Basis> bases;
  for (const std::string& tok : tokens) bases.push_back(parse_basis_token(tok));
  return bases;
}

inline CnotVariant parse_variant(const std::string& tok) {
  if (tok == "v1") return CnotVariant::V1;
  if (tok == "v2") return CnotVariant::V2;
  if (tok == "skip") return CnotVariant::Skip;
  throw UsageError("invalid variant '" + tok + "' (expected v1, v2, or skip)");
}

inline std::string variant_name(CnotVariant v) {
  switch (v) {
    case CnotVariant::V1: return "v1";
    case CnotVariant::V2: return "v2";
    default: return "skip";
  }
}

}  // namespace detail

inline RunSpec parse_args(std::vector<std::string> args) {
  CLI::App app{"Exact simulator of a two-way qubit-pair key distribution "
               "protocol and its analyzed attacks"};
  app.require_subcommand(1);

  std::string strategy, eve_bases, variants;
  std::string control = "both", policy = "oracle", out = "-", format = "csv";
  long long trials = 0;
  unsigned long long seed = 0;
  int resolution = 64;

  auto* cmd_enum = app.add_subcommand(
      "enumerate", "Exact branch enumeration of one scenario");
  auto* cmd_sim =
      app.add_subcommand("simulate", "Monte Carlo sampling of one scenario");
  auto* cmd_sweep = app.add_subcommand(
      "sweep", "Per-qubit evasion over a Bloch grid of Eve bases");
  auto* cmd_claims =
      app.add_subcommand("claims", "Run the fixed claim suite and PASS/FAIL");

  for (CLI::App* sub : {cmd_enum, cmd_sim}) {
    sub->add_option("--strategy", strategy, "none | ira | ira-same | 2cnot")
        ->required()
        ->check(CLI::IsMember({"none", "ira", "ira-same", "2cnot"}));
    sub->add_option("--eve-bases", eve_bases,
                    "ira: two tokens (XY or Z/bloch:theta,phi); ira-same: one");
    sub->add_option("--variants", variants, "2cnot: v1|v2|skip per qubit, "
                                            "comma-separated (e.g. v1,v2)");
    sub->add_option("--control", control, "which qubits control rounds check")
        ->check(CLI::IsMember({"q1", "q2", "both"}));
    sub->add_option("--policy", policy, "control-basis choice")
        ->check(CLI::IsMember({"oracle", "uniform"}));
  }
  cmd_sim->add_option("--trials", trials, "Monte Carlo rounds per mode")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_sim->add_option("--seed", seed, "RNG seed")->required();
  cmd_sweep->add_option("--resolution", resolution, "grid resolution (>= 8)")
      ->check(CLI::Range(8, 1 << 20));
  for (CLI::App* sub : {cmd_enum, cmd_sim, cmd_sweep}) {
    sub->add_option("--out", out, "output path, - for stdout");
    sub->add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunSpec spec;
  spec.out = out;
  spec.format = format;
  if (app.got_subcommand(cmd_claims)) {
    spec.command = "claims";
    return spec;
  }
  if (app.got_subcommand(cmd_sweep)) {
    spec.command = "sweep";
    spec.resolution = resolution;
    return spec;
  }
  spec.command = app.got_subcommand(cmd_sim) ? "simulate" : "enumerate";
  spec.strategy_name = strategy;
  spec.trials = trials;
  spec.seed = seed;

  const CLI::App* sub = app.got_subcommand(cmd_sim) ? cmd_sim : cmd_enum;
  const bool has_bases = sub->count("--eve-bases") > 0;
  const bool has_variants = sub->count("--variants") > 0;
  if (strategy == "none") {
    if (has_bases || has_variants)
      throw UsageError("--strategy none takes neither --eve-bases nor "
                       "--variants");
    spec.scenario.strategy = NoEavesdropper{};
  } else if (strategy == "ira" || strategy == "ira-same") {
    if (has_variants)
      throw UsageError("--variants applies only to --strategy 2cnot");
    if (!has_bases)
      throw UsageError("--strategy " + strategy + " requires --eve-bases");
    const int expected = strategy == "ira" ? 2 : 1;
    const auto bases = detail::parse_eve_bases(eve_bases, expected);
    const Basis b1 = bases[0];
    const Basis b2 = bases[expected == 2 ? 1 : 0];
    spec.scenario.strategy = InterceptResend{b1, b2};
    if (expected == 2) {
      spec.parameters = "eve=" + to_string(b1) + "/" + to_string(b2);
      spec.parameters_json = {{"eve_basis_q1", to_string(b1)},
                              {"eve_basis_q2", to_string(b2)}};
    } else {
      spec.parameters = "eve=" + to_string(b1);
      spec.parameters_json = {{"eve_basis", to_string(b1)}};
    }
  } else {  // 2cnot
    if (has_bases)
      throw UsageError("--eve-bases applies only to --strategy ira/ira-same");
    if (!has_variants)
      throw UsageError("--strategy 2cnot requires --variants");
    const auto parts = detail::split(variants, ',');
    if (parts.size() != 2)
      throw UsageError("--variants '" + variants +
                       "': expected two comma-separated entries");
    const CnotVariant v1 = detail::parse_variant(parts[0]);
    const CnotVariant v2 = detail::parse_variant(parts[1]);
    if (v1 == CnotVariant::Skip && v2 == CnotVariant::Skip)
      throw UsageError("--variants skip,skip attacks neither qubit; use "
                       "--strategy none");
    spec.scenario.strategy = TwoCnot{v1, v2};
    spec.parameters = "variants=" + detail::variant_name(v1) + "/" +
                      detail::variant_name(v2);
    spec.parameters_json = {{"variant_q1", detail::variant_name(v1)},
                            {"variant_q2", detail::variant_name(v2)}};
  }

  spec.scenario.policy = policy == "uniform" ? ControlPolicy::UniformBasis
                                             : ControlPolicy::OracleBasis;
  spec.scenario.targets = control == "q1"   ? ControlTargets::Q1
                          : control == "q2" ? ControlTargets::Q2
                                            : ControlTargets::Both;
  spec.parameters_json["policy"] = policy;
  spec.parameters_json["control"] = control;
  return spec;
}

namespace detail {

inline void write_output(const std::string& out, const std::string& text) {
  if (out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw UsageError("cannot open output file '" + out + "'");
  f << text;
  if (!f) throw UsageError("failed writing output file '" + out + "'");
}

}  // namespace detail

inline int run(const RunSpec& spec) {
  if (spec.command == "claims") {
    bool all = true;
    for (const ClaimResult& c : run_claims()) {
      std::cout << c.line << (c.pass ? " PASS" : " FAIL") << "\n";
      all = all && c.pass;
    }
    std::cout.flush();
    return all ? 0 : 1;
  }
  if (spec.command == "sweep") {
    const SweepResult res = sweep_eve_bases(spec.resolution);
    std::string text;
    if (spec.format == "json") {
      text = sweep_json(res).dump(2) + "\n";
    } else {
      text = std::string(kSweepCsvHeader) + "\n";
      for (const SweepRow& row : res.rows) text += sweep_csv_row(row) + "\n";
    }
    detail::write_output(spec.out, text);
    return 0;
  }

  RunMeta meta;
  meta.command = spec.command;
  meta.strategy = spec.strategy_name;
  meta.parameters = spec.parameters;
  meta.policy =
      spec.scenario.policy == ControlPolicy::OracleBasis ? "oracle" : "uniform";
  meta.control = spec.scenario.targets == ControlTargets::Q1   ? "q1"
                 : spec.scenario.targets == ControlTargets::Q2 ? "q2"
                                                               : "both";
  ScenarioStats st;
  if (spec.command == "simulate") {
    meta.trials = spec.trials;
    meta.seed = spec.seed;
    st = monte_carlo(spec.scenario, spec.trials, spec.seed);
  } else {
    st = enumerate_scenario(spec.scenario);
  }
  std::string text;
  if (spec.format == "json") {
    text = scenario_json(meta, spec.parameters_json, st).dump(2) + "\n";
  } else {
    text = std::string(kScenarioCsvHeader) + "\n" +
           scenario_csv_row(meta, st) + "\n";
  }
  detail::write_output(spec.out, text);
  return 0;
}

inline int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const RunSpec spec = parse_args(std::move(args));
    return run(spec);
  } catch (const HelpRequested& h) {
    std::cout << h.text;
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace sixdp
