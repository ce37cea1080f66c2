#pragma once

#include <array>
#include <optional>
#include <stdexcept>

#include "sixdp/basis.hpp"
#include "sixdp/pauli.hpp"
#include "sixdp/state.hpp"

// The six-state two-way protocol core: Bob prepares a qubit pair in two
// different canonical bases, Alice either encodes one of four unitaries on the
// pair or measures in control mode, Bob decodes by flip/no-flip measurement in
// his preparation bases.

namespace sixdp {

struct PairPreparation {
  Basis basis1, basis2;  // canonical and distinct
  int bit1 = 0, bit2 = 0;

  const Basis& basis(int qubit) const { return qubit == 0 ? basis1 : basis2; }
  int bit(int qubit) const { return qubit == 0 ? bit1 : bit2; }
};

inline PairPreparation make_preparation(const Basis& b1, int bit1,
                                        const Basis& b2, int bit2) {
  if (!is_canonical(b1) || !is_canonical(b2))
    throw std::invalid_argument("preparation bases must be canonical");
  if (b1.kind == b2.kind)
    throw std::invalid_argument("preparation bases must be distinct");
  if ((bit1 & ~1) || (bit2 & ~1))
    throw std::invalid_argument("preparation bits must be 0 or 1");
  return PairPreparation{b1, b2, bit1, bit2};
}

// The six ordered distinct canonical basis pairs, in a fixed order.
inline const std::array<std::pair<Basis, Basis>, 6>& basis_pairs() {
  static const std::array<std::pair<Basis, Basis>, 6> pairs = {{
      {basis_z(), basis_x()},
      {basis_z(), basis_y()},
      {basis_x(), basis_z()},
      {basis_x(), basis_y()},
      {basis_y(), basis_z()},
      {basis_y(), basis_x()},
  }};
  return pairs;
}

inline const std::array<Basis, 3>& canonical_bases() {
  static const std::array<Basis, 3> bases = {basis_z(), basis_x(), basis_y()};
  return bases;
}

struct RoundMode {
  enum class Kind { Encoding, Control };
  Kind kind = Kind::Encoding;
  // Control only: Alice's measurement basis per qubit; unset = not analyzed.
  std::optional<Basis> alice_basis_q1;
  std::optional<Basis> alice_basis_q2;

  const std::optional<Basis>& alice_basis(int qubit) const {
    return qubit == 0 ? alice_basis_q1 : alice_basis_q2;
  }
};

inline RoundMode encoding_mode() { return RoundMode{}; }

inline RoundMode control_mode(std::optional<Basis> q1, std::optional<Basis> q2) {
  if (!q1 && !q2)
    throw std::invalid_argument("control mode must analyze at least one qubit");
  return RoundMode{RoundMode::Kind::Control, q1, q2};
}

// True iff op maps each eigenstate of the basis to the other one up to global
// phase. I flips no canonical basis; X, iY, Z each flip exactly two and
// preserve their namesake.
inline bool flips(PauliOp op, const Basis& basis) {
  if (!is_canonical(basis))
    throw std::invalid_argument("flips: basis must be canonical");
  static const auto table = [] {
    std::array<std::array<bool, 3>, 4> t{};
    for (PauliOp p : kAllOps) {
      for (int b = 0; b < 3; ++b) {
        const Basis& basis = canonical_bases()[b];
        const PureState mapped =
            apply_1q(pauli_matrix(p), make_state(basis, 0), 0);
        const bool flip =
            equal_up_to_phase(mapped, make_state(basis, 1), kNormTol);
        if (!flip && !equal_up_to_phase(mapped, make_state(basis, 0), kNormTol))
          throw std::logic_error("encoding op leaves the canonical basis");
        t[static_cast<int>(p)][b] = flip;
      }
    }
    return t;
  }();
  return table[static_cast<int>(op)][static_cast<int>(basis.kind)];
}

// The unique op with the given flip pattern on two distinct canonical bases.
// Total: the four flip patterns are a bijection with the four ops.
inline PauliOp decode_pair(const Basis& basis1, const Basis& basis2, bool flip1,
                           bool flip2) {
  if (!is_canonical(basis1) || !is_canonical(basis2))
    throw std::invalid_argument("decode_pair: bases must be canonical");
  if (basis1.kind == basis2.kind)
    throw std::invalid_argument("decode_pair: bases must be distinct");
  static const bool checked = [] {
    for (const auto& [b1, b2] : basis_pairs()) {
      int seen = 0;
      for (PauliOp op : kAllOps)
        seen |= 1 << ((flips(op, b1) ? 2 : 0) | (flips(op, b2) ? 1 : 0));
      if (seen != 0b1111)
        throw std::logic_error("decode_pair: flip patterns not bijective");
    }
    return true;
  }();
  (void)checked;
  for (PauliOp op : kAllOps)
    if (flips(op, basis1) == flip1 && flips(op, basis2) == flip2) return op;
  throw std::logic_error("decode_pair: no matching op");
}

}  // namespace sixdp
