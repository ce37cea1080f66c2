#pragma once

#include <array>
#include <string>

#include "sixdp/state.hpp"

namespace sixdp {

// Alice's encoding alphabet. The enum value is the fixed 2-bit code:
// I=00, Z=01, X=10, iY=11.
enum class PauliOp : int { I = 0, Z = 1, X = 2, IY = 3 };

inline constexpr std::array<PauliOp, 4> kAllOps = {PauliOp::I, PauliOp::Z,
                                                   PauliOp::X, PauliOp::IY};

inline int pauli_bits(PauliOp op) { return static_cast<int>(op); }

// iY is the real matrix [[0,1],[-1,0]], so all four encodings are real in the
// Z basis. Each is unitary and its own inverse up to global phase.
inline Mat2 pauli_matrix(PauliOp op) {
  switch (op) {
    case PauliOp::I: return {{{1.0, 0.0}, {0.0, 1.0}}};
    case PauliOp::Z: return {{{1.0, 0.0}, {0.0, -1.0}}};
    case PauliOp::X: return {{{0.0, 1.0}, {1.0, 0.0}}};
    case PauliOp::IY: return {{{0.0, 1.0}, {-1.0, 0.0}}};
  }
  return {{{1.0, 0.0}, {0.0, 1.0}}};
}

inline std::string to_string(PauliOp op) {
  switch (op) {
    case PauliOp::I: return "I";
    case PauliOp::Z: return "Z";
    case PauliOp::X: return "X";
    case PauliOp::IY: return "iY";
  }
  return "?";
}

}  // namespace sixdp
