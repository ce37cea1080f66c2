#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sixdp/basis.hpp"
#include "sixdp/chooser.hpp"
#include "sixdp/pauli.hpp"
#include "sixdp/protocol.hpp"
#include "sixdp/state.hpp"

// Eve's strategies: intercept-resend with per-qubit bases, and the double-CNOT
// attack in two variants plus their combination.
//
// Wire convention, fixed everywhere: the traveling qubit is wire 0, Eve's
// ancilla is wire 1.

namespace sixdp {

struct InterceptResend {
  Basis basis_q1, basis_q2;
  const Basis& basis(int qubit) const { return qubit == 0 ? basis_q1 : basis_q2; }
};

// V1: ancilla |0>_E, traveling qubit is the CNOT control, ancilla the target.
// V2: ancilla |x+>_E, ancilla is the control, traveling qubit the target.
enum class CnotVariant { V1, V2, Skip };

struct TwoCnot {
  CnotVariant variant_q1 = CnotVariant::Skip;
  CnotVariant variant_q2 = CnotVariant::Skip;
  CnotVariant variant(int qubit) const {
    return qubit == 0 ? variant_q1 : variant_q2;
  }
};

struct NoEavesdropper {};

using EveStrategy = std::variant<NoEavesdropper, InterceptResend, TwoCnot>;

// The operation classes a single attack execution can resolve:
// V1 distinguishes S11={I,Z} from S12={iY,X}, V2 distinguishes S21={I,X}
// from S22={iY,Z}.
enum class CnotSetLabel { S11, S12, S21, S22 };

struct CnotSet {
  CnotSetLabel label;
  std::array<PauliOp, 2> members;
};

inline CnotSet cnot_set(CnotSetLabel label) {
  switch (label) {
    case CnotSetLabel::S11: return {label, {PauliOp::I, PauliOp::Z}};
    case CnotSetLabel::S12: return {label, {PauliOp::X, PauliOp::IY}};
    case CnotSetLabel::S21: return {label, {PauliOp::I, PauliOp::X}};
    case CnotSetLabel::S22: return {label, {PauliOp::Z, PauliOp::IY}};
  }
  throw std::invalid_argument("cnot_set: bad label");
}

inline std::string to_string(CnotSetLabel label) {
  switch (label) {
    case CnotSetLabel::S11: return "S11";
    case CnotSetLabel::S12: return "S12";
    case CnotSetLabel::S21: return "S21";
    case CnotSetLabel::S22: return "S22";
  }
  return "?";
}

// Forward-path intercept: projective measurement in Eve's basis, resending the
// collapsed eigenstate.
inline std::pair<int, PureState> ira_forward(const PureState& state,
                                             const Basis& basis,
                                             BranchChooser& chooser) {
  if (state.n_qubits != 1)
    throw std::invalid_argument("ira_forward: expects a single qubit");
  const auto branches = measure_branches(state, 0, basis);
  std::vector<double> weights;
  weights.reserve(branches.size());
  for (const auto& b : branches) weights.push_back(b.prob);
  const std::size_t idx = chooser.pick(weights);
  return {branches[idx].outcome, make_state(basis, branches[idx].outcome)};
}

// Eve's decoding from her two flip observations. Distinct canonical bases give
// the unique op; equal bases only narrow it to the 2-element class with that
// flip behavior.
inline std::vector<PauliOp> ira_infer(const Basis& basis_q1,
                                      const Basis& basis_q2, bool flip1,
                                      bool flip2) {
  if (!is_canonical(basis_q1) || !is_canonical(basis_q2))
    throw std::invalid_argument("ira_infer: bases must be canonical");
  if (basis_q1.kind != basis_q2.kind)
    return {decode_pair(basis_q1, basis_q2, flip1, flip2)};
  if (flip1 != flip2)
    throw std::logic_error("ira_infer: unequal flips in one basis");
  std::vector<PauliOp> ops;
  for (PauliOp op : kAllOps)
    if (flips(op, basis_q1) == flip1) ops.push_back(op);
  return ops;
}

// Entangle the traveling qubit with a fresh ancilla. Output wires: traveling
// qubit 0, ancilla 1.
inline PureState two_cnot_forward(const PureState& traveling,
                                  CnotVariant variant) {
  if (traveling.n_qubits != 1)
    throw std::invalid_argument("two_cnot_forward: expects a single qubit");
  switch (variant) {
    case CnotVariant::V1:
      return apply_cnot(tensor(traveling, make_state(basis_z(), 0)), 0, 1);
    case CnotVariant::V2:
      return apply_cnot(tensor(traveling, make_state(basis_x(), 0)), 1, 0);
    default:
      throw std::invalid_argument("two_cnot_forward: variant must be V1 or V2");
  }
}

struct CnotBackwardResult {
  CnotSet set;
  PureState traveling_out;  // 1 qubit
  int ancilla_outcome = 0;  // V2 reported in X labels: 0 = x+, 1 = x-
};

// Second CNOT (same wiring as the variant), then the ancilla readout: V1 in Z
// (0 -> S11, 1 -> S12), V2 in X (x+ -> S21, x- -> S22). The readout must be
// single-branch for every encoding op; two surviving branches signal a wiring
// bug.
inline CnotBackwardResult two_cnot_backward(const PureState& joint,
                                            CnotVariant variant,
                                            BranchChooser& chooser) {
  if (joint.n_qubits != 2)
    throw std::invalid_argument("two_cnot_backward: expects two wires");
  PureState disentangled;
  Basis readout;
  switch (variant) {
    case CnotVariant::V1:
      disentangled = apply_cnot(joint, 0, 1);
      readout = basis_z();
      break;
    case CnotVariant::V2:
      disentangled = apply_cnot(joint, 1, 0);
      readout = basis_x();
      break;
    default:
      throw std::invalid_argument("two_cnot_backward: variant must be V1 or V2");
  }
  const auto branches = measure_branches(disentangled, 1, readout);
  if (branches.size() != 1)
    throw std::logic_error("two_cnot_backward: ancilla readout not deterministic");
  std::vector<double> weights{1.0};
  const auto& branch = branches[chooser.pick(weights)];
  const int outcome = branch.outcome;
  CnotSetLabel label;
  if (variant == CnotVariant::V1)
    label = outcome == 0 ? CnotSetLabel::S11 : CnotSetLabel::S12;
  else
    label = outcome == 0 ? CnotSetLabel::S21 : CnotSetLabel::S22;

  // strip the collapsed ancilla: keep the traveling wire's pair for its outcome
  PureState traveling{1, {0.0, 0.0}};
  const PureState anc = make_state(readout, outcome);
  for (std::size_t i = 0; i < branch.post.dim(); ++i) {
    // project the ancilla wire out
    const int tbit = bit_of(i, 0, 2);
    const int abit = bit_of(i, 1, 2);
    traveling.amps[tbit] += std::conj(anc.amps[abit]) * branch.post.amps[i];
  }
  return {cnot_set(label), canonicalized(std::move(traveling)), outcome};
}

// Intersection of one first-pass set and one second-pass set; always a
// singleton for valid labels.
inline PauliOp combine_sets(const CnotSet& first, const CnotSet& second) {
  if (first.label != CnotSetLabel::S11 && first.label != CnotSetLabel::S12)
    throw std::invalid_argument("combine_sets: first must be S11 or S12");
  if (second.label != CnotSetLabel::S21 && second.label != CnotSetLabel::S22)
    throw std::invalid_argument("combine_sets: second must be S21 or S22");
  std::optional<PauliOp> found;
  for (PauliOp a : first.members)
    for (PauliOp b : second.members)
      if (a == b) {
        if (found) throw std::logic_error("combine_sets: non-singleton intersection");
        found = a;
      }
  if (!found) throw std::logic_error("combine_sets: empty intersection");
  return *found;
}

// Per-qubit observation records plus Eve's inference for the round.
struct IraQubitObs {
  int forward_outcome = 0;
  std::optional<int> backward_outcome;       // unset in control rounds
  std::optional<bool> flip_in_eve_basis;     // forward != backward
};

struct CnotQubitObs {
  int ancilla_outcome = 0;
  CnotSet set;
};

struct EveObservation {
  std::array<std::optional<IraQubitObs>, 2> ira;
  std::array<std::optional<CnotQubitObs>, 2> cnot;
  // singleton = identified op, pair = ambiguous class, empty = no inference
  std::vector<PauliOp> inferred;

  // canonical label of what Eve ends up knowing; the random variable used for
  // mutual-information accounting
  std::string label() const {
    if (inferred.size() == 1) return "op:" + sixdp::to_string(inferred[0]);
    if (!inferred.empty()) {
      std::string s = "set:{";
      for (std::size_t i = 0; i < inferred.size(); ++i) {
        if (i) s += ",";
        s += sixdp::to_string(inferred[i]);
      }
      return s + "}";
    }
    // no inference table (non-canonical bases): the raw flip observations
    std::string flips;
    for (const auto& obs : ira)
      if (obs && obs->flip_in_eve_basis)
        flips += *obs->flip_in_eve_basis ? '1' : '0';
    if (!flips.empty()) return "flips:" + flips;
    return "-";
  }
};

}  // namespace sixdp
