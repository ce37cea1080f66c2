#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sixdp/adversary.hpp"
#include "sixdp/basis.hpp"
#include "sixdp/chooser.hpp"
#include "sixdp/pauli.hpp"
#include "sixdp/protocol.hpp"
#include "sixdp/state.hpp"

// One protocol round, qubit at a time: forward channel with Eve's action,
// Alice's step, backward channel, Bob's decoding measurement. Control rounds
// terminate after Alice's public comparison; the backward path never happens.

namespace sixdp {

struct ControlResult {
  Basis alice_basis;
  int alice_outcome = 0;
  bool conclusive = false;  // Alice's basis equals Bob's preparation basis
  bool detected = false;    // conclusive and outcome != Bob's bit
};

struct RoundRecord {
  PairPreparation prep;
  RoundMode::Kind mode = RoundMode::Kind::Encoding;
  PauliOp alice_op = PauliOp::I;
  std::optional<PauliOp> bob_decoded;            // encoding rounds
  std::array<bool, 2> bob_flip = {false, false};  // encoding rounds
  std::array<std::optional<ControlResult>, 2> control_results;
  EveObservation eve_obs;

  bool detected_any() const {
    for (const auto& r : control_results)
      if (r && r->detected) return true;
    return false;
  }
};

namespace detail {

// A traveling qubit in flight; with a 2CNOT ancilla attached it is a 2-wire
// joint state (traveling wire 0, ancilla wire 1).
struct ChannelQubit {
  PureState state;
  bool entangled = false;
};

inline int pick_measurement(const PureState& s, int wire, const Basis& basis,
                            BranchChooser& chooser, PureState& post_out) {
  const auto branches = measure_branches(s, wire, basis);
  std::vector<double> weights;
  weights.reserve(branches.size());
  for (const auto& b : branches) weights.push_back(b.prob);
  const std::size_t idx = chooser.pick(weights);
  post_out = branches[idx].post;
  return branches[idx].outcome;
}

}  // namespace detail

inline RoundRecord run_round(const PairPreparation& prep, const RoundMode& mode,
                             PauliOp alice_op, const EveStrategy& strategy,
                             BranchChooser& chooser) {
  if (mode.kind == RoundMode::Kind::Control && !mode.alice_basis_q1 &&
      !mode.alice_basis_q2)
    throw std::invalid_argument("run_round: control round analyzes no qubit");

  RoundRecord rec;
  rec.prep = prep;
  rec.mode = mode.kind;
  rec.alice_op = alice_op;

  std::array<detail::ChannelQubit, 2> channel;
  for (int q = 0; q < 2; ++q)
    channel[q].state = make_state(prep.basis(q), prep.bit(q));

  // forward path
  for (int q = 0; q < 2; ++q) {
    if (const auto* ira = std::get_if<InterceptResend>(&strategy)) {
      auto [outcome, resent] = ira_forward(channel[q].state, ira->basis(q), chooser);
      channel[q].state = resent;
      rec.eve_obs.ira[q] = IraQubitObs{outcome, std::nullopt, std::nullopt};
    } else if (const auto* tc = std::get_if<TwoCnot>(&strategy)) {
      if (tc->variant(q) != CnotVariant::Skip) {
        channel[q].state = two_cnot_forward(channel[q].state, tc->variant(q));
        channel[q].entangled = true;
      }
    }
  }

  if (mode.kind == RoundMode::Kind::Control) {
    // Alice measures the traveling wire and publicly compares with Bob
    for (int q = 0; q < 2; ++q) {
      const auto& abasis = mode.alice_basis(q);
      if (!abasis) continue;
      PureState post;
      const int outcome =
          detail::pick_measurement(channel[q].state, 0, *abasis, chooser, post);
      ControlResult r;
      r.alice_basis = *abasis;
      r.alice_outcome = outcome;
      r.conclusive = same_canonical(*abasis, prep.basis(q));
      r.detected = r.conclusive && outcome != prep.bit(q);
      rec.control_results[q] = r;
    }
    return rec;
  }

  // Alice encodes the same unitary on both qubits of the pair
  for (int q = 0; q < 2; ++q)
    channel[q].state = apply_1q(pauli_matrix(alice_op), channel[q].state, 0);

  // backward path
  for (int q = 0; q < 2; ++q) {
    if (const auto* ira = std::get_if<InterceptResend>(&strategy)) {
      auto [outcome, resent] = ira_forward(channel[q].state, ira->basis(q), chooser);
      channel[q].state = resent;
      IraQubitObs& obs = *rec.eve_obs.ira[q];
      obs.backward_outcome = outcome;
      obs.flip_in_eve_basis = obs.forward_outcome != outcome;
    } else if (const auto* tc = std::get_if<TwoCnot>(&strategy)) {
      if (channel[q].entangled) {
        auto res = two_cnot_backward(channel[q].state, tc->variant(q), chooser);
        channel[q].state = res.traveling_out;
        channel[q].entangled = false;
        rec.eve_obs.cnot[q] = CnotQubitObs{res.ancilla_outcome, res.set};
      }
    }
  }

  // Eve's inference for the pair
  if (const auto* ira = std::get_if<InterceptResend>(&strategy)) {
    if (is_canonical(ira->basis_q1) && is_canonical(ira->basis_q2))
      rec.eve_obs.inferred =
          ira_infer(ira->basis_q1, ira->basis_q2, *rec.eve_obs.ira[0]->flip_in_eve_basis,
                    *rec.eve_obs.ira[1]->flip_in_eve_basis);
  } else if (std::get_if<TwoCnot>(&strategy)) {
    std::optional<CnotSet> first, second;
    for (const auto& obs : rec.eve_obs.cnot) {
      if (!obs) continue;
      if (obs->set.label == CnotSetLabel::S11 || obs->set.label == CnotSetLabel::S12)
        first = obs->set;
      else
        second = obs->set;
    }
    if (first && second)
      rec.eve_obs.inferred = {combine_sets(*first, *second)};
    else if (first)
      rec.eve_obs.inferred = {first->members[0], first->members[1]};
    else if (second)
      rec.eve_obs.inferred = {second->members[0], second->members[1]};
  }

  // Bob measures each qubit in its preparation basis and decodes
  for (int q = 0; q < 2; ++q) {
    PureState post;
    const int outcome = detail::pick_measurement(channel[q].state, 0,
                                                 prep.basis(q), chooser, post);
    rec.bob_flip[q] = outcome != prep.bit(q);
  }
  rec.bob_decoded =
      decode_pair(prep.basis1, prep.basis2, rec.bob_flip[0], rec.bob_flip[1]);
  return rec;
}

}  // namespace sixdp
