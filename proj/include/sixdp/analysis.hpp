#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sixdp/adversary.hpp"
#include "sixdp/chooser.hpp"
#include "sixdp/round.hpp"

// Scenario evaluation: exact branch enumeration and seeded Monte Carlo over
// the protocol's random choices, aggregating evasion/detection probabilities,
// Eve's mutual information on Alice's operation, and the encoding-mode error
// rate.
//
// The control-mode probability is not modeled; control and encoding rounds
// are evaluated separately and every reported probability is conditional on
// the round's mode.

namespace sixdp {

enum class ControlPolicy {
  OracleBasis,   // Alice always measures in Bob's preparation basis
  UniformBasis,  // uniform over the 3 canonical bases; mismatches inconclusive
};

enum class ControlTargets { Q1, Q2, Both };

struct ScenarioConfig {
  EveStrategy strategy = NoEavesdropper{};
  ControlPolicy policy = ControlPolicy::OracleBasis;
  ControlTargets targets = ControlTargets::Both;
  // default: uniform over the 6 ordered distinct basis pairs x 4 bit pairs
  std::optional<PairPreparation> fixed_preparation;
};

// (alice_op, eve label) -> probability
using JointTable = std::map<std::pair<PauliOp, std::string>, double>;

// I(A;E) in bits. Zero-probability cells contribute zero.
inline double mutual_information_bits(const JointTable& joint) {
  double sum = 0.0;
  std::map<PauliOp, double> pa;
  std::map<std::string, double> pe;
  for (const auto& [cell, p] : joint) {
    if (p < -1e-12 || !std::isfinite(p))
      throw std::invalid_argument("mutual_information: bad table entry");
    sum += p;
    pa[cell.first] += p;
    pe[cell.second] += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("mutual_information: table does not sum to 1");
  double info = 0.0;
  for (const auto& [cell, p] : joint) {
    if (p <= 0.0) continue;
    info += p * std::log2(p / (pa[cell.first] * pe[cell.second]));
  }
  return info;
}

// Probability that Alice's oracle-basis control comparison matches Bob's bit
// after Eve's intercept in `eve_basis`: sum_i |<e_i|b>|^4. Independent of
// which eigenstate Bob prepared.
inline double evasion_per_qubit(const Basis& eve_basis, const Basis& bob_basis) {
  const PureState b = make_state(bob_basis, 0);
  double result = 0.0;
  for (int k = 0; k < 2; ++k) {
    const PureState e = make_state(eve_basis, k);
    const Amplitude ov =
        std::conj(e.amps[0]) * b.amps[0] + std::conj(e.amps[1]) * b.amps[1];
    const double p = std::norm(ov);
    result += p * p;
  }
  return result;
}

struct ScenarioStats {
  bool exact = true;
  std::int64_t n = 0;  // enumerated leaves, or Monte Carlo trials per mode

  // control mode
  double evasion_per_qubit = 1.0;  // conditional on a conclusive comparison
  double evasion_per_qubit_unconditional = 1.0;
  double evasion_pair = std::numeric_limits<double>::quiet_NaN();
  double detection_prob = 0.0;  // per control round

  // encoding mode
  double eve_info_bits = 0.0;
  double qber = 0.0;

  // standard errors, zero in exact mode
  double se_evasion_per_qubit = 0.0;
  double se_evasion_pair = 0.0;
  double se_detection = 0.0;
  double se_qber = 0.0;

  JointTable joint;
};

namespace detail {

struct Accumulator {
  // encoding
  double w_encoding = 0.0, w_qber = 0.0;
  JointTable joint;
  // control
  double w_control = 0.0, w_detect_round = 0.0;
  double w_analyzed = 0.0, w_conclusive = 0.0, w_evade_concl = 0.0,
         w_evade_uncond = 0.0;
  double w_both_concl = 0.0, w_pair_evade = 0.0;

  void add_encoding(double w, const RoundRecord& rec) {
    w_encoding += w;
    if (*rec.bob_decoded != rec.alice_op) w_qber += w;
    joint[{rec.alice_op, rec.eve_obs.label()}] += w;
  }

  void add_control(double w, const RoundRecord& rec) {
    w_control += w;
    if (rec.detected_any()) w_detect_round += w;
    int analyzed = 0, conclusive = 0, detected = 0;
    for (const auto& r : rec.control_results) {
      if (!r) continue;
      ++analyzed;
      w_analyzed += w;
      if (!r->detected) w_evade_uncond += w;
      if (r->conclusive) {
        ++conclusive;
        w_conclusive += w;
        if (!r->detected) w_evade_concl += w;
        if (r->detected) ++detected;
      }
    }
    if (analyzed == 2 && conclusive == 2) {
      w_both_concl += w;
      if (detected == 0) w_pair_evade += w;
    }
  }
};

inline double ratio(double num, double den) {
  return den > 0.0 ? num / den
                   : std::numeric_limits<double>::quiet_NaN();
}

// Binomial standard error of a conditional estimate with effective count n.
inline double binom_se(double p, double n) {
  if (!(n > 0.0) || std::isnan(p)) return 0.0;
  return std::sqrt(std::max(p * (1.0 - p), 0.0) / n);
}

inline PairPreparation pick_preparation(const ScenarioConfig& cfg,
                                        BranchChooser& ch) {
  if (cfg.fixed_preparation) return *cfg.fixed_preparation;
  static const std::vector<double> w6(6, 1.0 / 6.0);
  static const std::vector<double> w4(4, 0.25);
  const auto& [b1, b2] = basis_pairs()[ch.pick(w6)];
  const std::size_t bits = ch.pick(w4);
  return make_preparation(b1, static_cast<int>(bits >> 1), b2,
                          static_cast<int>(bits & 1));
}

inline RoundRecord scenario_round(const ScenarioConfig& cfg, bool control,
                                  BranchChooser& ch) {
  static const std::vector<double> w4(4, 0.25);
  static const std::vector<double> w3(3, 1.0 / 3.0);
  const PairPreparation prep = pick_preparation(cfg, ch);
  if (!control) {
    const PauliOp op = kAllOps[ch.pick(w4)];
    return run_round(prep, encoding_mode(), op, cfg.strategy, ch);
  }
  std::array<std::optional<Basis>, 2> abasis;
  for (int q = 0; q < 2; ++q) {
    const bool analyzed = cfg.targets == ControlTargets::Both ||
                          (q == 0 && cfg.targets == ControlTargets::Q1) ||
                          (q == 1 && cfg.targets == ControlTargets::Q2);
    if (!analyzed) continue;
    if (cfg.policy == ControlPolicy::OracleBasis)
      abasis[q] = prep.basis(q);
    else
      abasis[q] = canonical_bases()[ch.pick(w3)];
  }
  return run_round(prep, control_mode(abasis[0], abasis[1]), PauliOp::I,
                   cfg.strategy, ch);
}

inline ScenarioStats finish(const Accumulator& acc, bool exact,
                            std::int64_t n) {
  ScenarioStats st;
  st.exact = exact;
  st.n = n;
  st.evasion_per_qubit = ratio(acc.w_evade_concl, acc.w_conclusive);
  st.evasion_per_qubit_unconditional = ratio(acc.w_evade_uncond, acc.w_analyzed);
  st.evasion_pair = ratio(acc.w_pair_evade, acc.w_both_concl);
  st.detection_prob = ratio(acc.w_detect_round, acc.w_control);
  st.qber = ratio(acc.w_qber, acc.w_encoding);
  st.joint = acc.joint;
  for (auto& [cell, p] : st.joint) p /= acc.w_encoding;
  st.eve_info_bits = mutual_information_bits(st.joint);
  if (!exact) {
    // effective counts: weights are 1 per trial in Monte Carlo
    st.se_evasion_per_qubit = binom_se(st.evasion_per_qubit, acc.w_conclusive);
    st.se_evasion_pair = binom_se(st.evasion_pair, acc.w_both_concl);
    st.se_detection = binom_se(st.detection_prob, acc.w_control);
    st.se_qber = binom_se(st.qber, acc.w_encoding);
  }
  return st;
}

}  // namespace detail

// Expands every discrete choice with exact probabilities; deterministic.
inline ScenarioStats enumerate_scenario(const ScenarioConfig& cfg) {
  detail::Accumulator acc;
  std::int64_t leaves = 0;
  for (const bool control : {false, true}) {
    double total = 0.0;
    for_each_path(
        [&](BranchChooser& ch) { return detail::scenario_round(cfg, control, ch); },
        [&](double w, const RoundRecord& rec) {
          total += w;
          ++leaves;
          if (control)
            acc.add_control(w, rec);
          else
            acc.add_encoding(w, rec);
        });
    if (std::abs(total - 1.0) > 1e-9)
      throw std::logic_error("enumerate_scenario: branch probabilities leak");
  }
  return detail::finish(acc, true, leaves);
}

// n_trials i.i.d. rounds of each mode, driven by per-trial substreams of the
// seed; results are a pure function of (config, n_trials, seed).
inline ScenarioStats monte_carlo(const ScenarioConfig& cfg,
                                 std::int64_t n_trials, std::uint64_t seed) {
  if (n_trials < 1)
    throw std::invalid_argument("monte_carlo: n_trials must be >= 1");
  detail::Accumulator acc;
  for (std::int64_t t = 0; t < n_trials; ++t) {
    SamplingChooser ch(CounterRng::for_trial(seed, static_cast<std::uint64_t>(t)));
    acc.add_encoding(1.0, detail::scenario_round(cfg, false, ch));
    acc.add_control(1.0, detail::scenario_round(cfg, true, ch));
  }
  return detail::finish(acc, false, n_trials);
}

// ---------------------------------------------------------------------------
// Eve-basis sweep

struct SweepRow {
  double theta = 0.0, phi = 0.0;
  std::array<double, 3> evasion = {1.0, 1.0, 1.0};  // vs canonical Z, X, Y
};

struct SweepResult {
  int resolution = 0;
  std::vector<SweepRow> rows;
  // per Bob basis: the grid minimum and where it is attained
  std::array<double, 3> min_evasion;
  std::array<SweepRow, 3> argmin;
  // exact IRA information for every canonical basis pair (q1 basis, q2 basis)
  std::array<std::array<double, 3>, 3> canonical_pair_info_bits;
};

// Evaluates the per-qubit evasion functional on a (resolution+1) x resolution
// grid of Eve bases, theta in [0,pi] inclusive, phi in [0,pi) (antipodal
// parameters describe the same basis). Information is reported for the
// canonical basis pairs, the gridpoints equivalent to Z/X/Y.
inline SweepResult sweep_eve_bases(int resolution) {
  if (resolution < 8)
    throw std::invalid_argument("sweep_eve_bases: resolution must be >= 8");
  constexpr double kPi = 3.14159265358979323846;
  SweepResult res;
  res.resolution = resolution;
  res.min_evasion = {2.0, 2.0, 2.0};
  for (int j = 0; j <= resolution; ++j) {
    const double theta = kPi * j / resolution;
    for (int k = 0; k < resolution; ++k) {
      const double phi = kPi * k / resolution;
      SweepRow row;
      row.theta = theta;
      row.phi = phi;
      const Basis eve = basis_bloch(theta, phi);
      for (int b = 0; b < 3; ++b) {
        row.evasion[b] = evasion_per_qubit(eve, canonical_bases()[b]);
        if (row.evasion[b] < res.min_evasion[b]) {
          res.min_evasion[b] = row.evasion[b];
          res.argmin[b] = row;
        }
      }
      res.rows.push_back(row);
    }
  }
  for (int b = 0; b < 3; ++b)
    if (res.min_evasion[b] < 0.5 - 1e-9)
      throw std::logic_error("sweep_eve_bases: minimum below the 0.5 floor");
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      ScenarioConfig cfg;
      cfg.strategy =
          InterceptResend{canonical_bases()[i], canonical_bases()[j]};
      res.canonical_pair_info_bits[i][j] =
          enumerate_scenario(cfg).eve_info_bits;
    }
  }
  return res;
}

}  // namespace sixdp
