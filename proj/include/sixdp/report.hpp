#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include <json.hpp>

#include "sixdp/analysis.hpp"

// Fixed output schemas. CSV: '.' decimal point, ',' separator, LF line
// endings, 12 significant digits, undefined values empty. JSON: one flat
// object per scenario; undefined values null.

namespace sixdp {

struct RunMeta {
  std::string command;     // enumerate | simulate | sweep
  std::string strategy;    // none | ira | ira-same | 2cnot
  std::string parameters;  // e.g. "eve=X/Y", "variants=v1/v2"
  std::string policy;      // oracle | uniform
  std::string control;     // q1 | q2 | both
  std::optional<long long> trials;
  std::optional<unsigned long long> seed;
};

inline std::string format_sig12(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline constexpr const char* kScenarioCsvHeader =
    "command,strategy,parameters,policy,control,engine,n,trials,seed,"
    "evasion_per_qubit,evasion_per_qubit_se,evasion_per_qubit_unconditional,"
    "evasion_pair,evasion_pair_se,detection_prob,detection_prob_se,"
    "qber,qber_se,eve_info_bits";

inline std::string scenario_csv_row(const RunMeta& meta,
                                    const ScenarioStats& st) {
  std::string row;
  row += meta.command + ',' + meta.strategy + ',' + meta.parameters + ',' +
         meta.policy + ',' + meta.control + ',';
  row += st.exact ? "exact" : "monte-carlo";
  row += ',' + std::to_string(st.n) + ',';
  row += meta.trials ? std::to_string(*meta.trials) : "";
  row += ',';
  row += meta.seed ? std::to_string(*meta.seed) : "";
  for (double v : {st.evasion_per_qubit, st.se_evasion_per_qubit,
                   st.evasion_per_qubit_unconditional, st.evasion_pair,
                   st.se_evasion_pair, st.detection_prob, st.se_detection,
                   st.qber, st.se_qber, st.eve_info_bits})
    row += ',' + format_sig12(v);
  return row;
}

inline nlohmann::json json_number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

inline nlohmann::json scenario_json(const RunMeta& meta,
                                    const nlohmann::json& parameters,
                                    const ScenarioStats& st) {
  nlohmann::json j;
  j["command"] = meta.command;
  j["strategy"] = meta.strategy;
  j["parameters"] = parameters;
  j["policy"] = meta.policy;
  j["control"] = meta.control;
  j["engine"] = st.exact ? "exact" : "monte-carlo";
  j["n"] = st.n;
  if (meta.trials) j["trials"] = *meta.trials;
  if (meta.seed) j["seed"] = *meta.seed;
  j["evasion_per_qubit"] = json_number_or_null(st.evasion_per_qubit);
  j["evasion_per_qubit_unconditional"] =
      json_number_or_null(st.evasion_per_qubit_unconditional);
  j["evasion_pair"] = json_number_or_null(st.evasion_pair);
  j["detection_prob"] = json_number_or_null(st.detection_prob);
  j["eve_info_bits"] = json_number_or_null(st.eve_info_bits);
  j["qber"] = json_number_or_null(st.qber);
  j["evasion_per_qubit_se"] = json_number_or_null(st.se_evasion_per_qubit);
  j["evasion_pair_se"] = json_number_or_null(st.se_evasion_pair);
  j["detection_prob_se"] = json_number_or_null(st.se_detection);
  j["qber_se"] = json_number_or_null(st.se_qber);
  return j;
}

inline constexpr const char* kSweepCsvHeader =
    "theta,phi,evasion_bob_z,evasion_bob_x,evasion_bob_y";

inline std::string sweep_csv_row(const SweepRow& row) {
  std::string s = format_sig12(row.theta) + ',' + format_sig12(row.phi);
  for (double v : row.evasion) s += ',' + format_sig12(v);
  return s;
}

inline nlohmann::json sweep_json(const SweepResult& res) {
  nlohmann::json j;
  j["command"] = "sweep";
  j["resolution"] = res.resolution;
  static const char* kBasisNames[3] = {"Z", "X", "Y"};
  for (int b = 0; b < 3; ++b) {
    nlohmann::json m;
    m["min_evasion"] = res.min_evasion[b];
    m["argmin_theta"] = res.argmin[b].theta;
    m["argmin_phi"] = res.argmin[b].phi;
    j["minimum"][kBasisNames[b]] = m;
  }
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      j["canonical_pair_info_bits"][std::string(kBasisNames[i]) +
                                    kBasisNames[k]] =
          res.canonical_pair_info_bits[i][k];
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& row : res.rows)
    rows.push_back({{"theta", row.theta},
                    {"phi", row.phi},
                    {"evasion_bob_z", row.evasion[0]},
                    {"evasion_bob_x", row.evasion[1]},
                    {"evasion_bob_y", row.evasion[2]}});
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace sixdp
