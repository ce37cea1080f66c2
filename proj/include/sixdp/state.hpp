#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

// Exact pure-state engine for 1..3 qubits: states, single-qubit gates, CNOT,
// projective measurement in arbitrary orthonormal qubit bases.
//
// Amplitude index convention: index i is the big-endian bitstring of qubit
// outcomes, qubit 0 being the most significant bit.

namespace sixdp {

using Amplitude = std::complex<double>;
using Mat2 = std::array<std::array<Amplitude, 2>, 2>;

inline constexpr int kMaxQubits = 3;
inline constexpr double kNormTol = 1e-9;
inline constexpr double kBranchPruneTol = 1e-12;
inline constexpr double kPhaseTol = 1e-12;

struct PureState {
  int n_qubits = 1;
  std::vector<Amplitude> amps;  // size 2^n_qubits

  std::size_t dim() const { return amps.size(); }
};

inline int bit_of(std::size_t index, int qubit, int n_qubits) {
  return static_cast<int>((index >> (n_qubits - 1 - qubit)) & 1u);
}

inline PureState make_pure(int n_qubits, std::vector<Amplitude> amps) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw std::invalid_argument("make_pure: qubit count must be in 1..3");
  if (amps.size() != (std::size_t{1} << n_qubits))
    throw std::invalid_argument("make_pure: amplitude count != 2^n");
  for (const Amplitude& a : amps)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw std::invalid_argument("make_pure: non-finite amplitude");
  return PureState{n_qubits, std::move(amps)};
}

inline double norm(const PureState& s) {
  double n2 = 0.0;
  for (const Amplitude& a : s.amps) n2 += std::norm(a);
  return std::sqrt(n2);
}

// Fixes the global phase: the first amplitude with magnitude > 1e-12 becomes
// real and positive. State comparison is always up to this phase.
inline PureState canonicalized(PureState s) {
  for (const Amplitude& a : s.amps) {
    const double mag = std::abs(a);
    if (mag > kBranchPruneTol) {
      const Amplitude factor = std::conj(a) / mag;
      for (Amplitude& x : s.amps) x *= factor;
      break;
    }
  }
  return s;
}

inline bool equal_up_to_phase(const PureState& s1, const PureState& s2,
                              double tol) {
  if (s1.n_qubits != s2.n_qubits)
    throw std::invalid_argument("equal_up_to_phase: qubit counts differ");
  const PureState a = canonicalized(s1);
  const PureState b = canonicalized(s2);
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (std::abs(a.amps[i] - b.amps[i]) > tol) return false;
  return true;
}

// Kronecker product, s1 qubits first.
inline PureState tensor(const PureState& s1, const PureState& s2) {
  if (s1.n_qubits + s2.n_qubits > kMaxQubits)
    throw std::invalid_argument("tensor: combined size exceeds 3 qubits");
  PureState out;
  out.n_qubits = s1.n_qubits + s2.n_qubits;
  out.amps.resize(s1.dim() * s2.dim());
  for (std::size_t i = 0; i < s1.dim(); ++i)
    for (std::size_t j = 0; j < s2.dim(); ++j)
      out.amps[i * s2.dim() + j] = s1.amps[i] * s2.amps[j];
  return out;
}

inline bool is_unitary(const Mat2& u, double tol) {
  // u * u^dagger == I
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      Amplitude e = u[r][0] * std::conj(u[c][0]) + u[r][1] * std::conj(u[c][1]);
      if (r == c) e -= 1.0;
      if (std::abs(e) > tol) return false;
    }
  }
  return true;
}

inline PureState apply_1q(const Mat2& op, const PureState& s, int qubit) {
  if (qubit < 0 || qubit >= s.n_qubits)
    throw std::out_of_range("apply_1q: qubit index out of range");
  if (!is_unitary(op, kNormTol))
    throw std::invalid_argument("apply_1q: operator is not unitary");
  PureState out = s;
  const std::size_t stride = std::size_t{1} << (s.n_qubits - 1 - qubit);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (i & stride) continue;  // visit each (0,1) pair once, via its 0 side
    const Amplitude a0 = s.amps[i];
    const Amplitude a1 = s.amps[i | stride];
    out.amps[i] = op[0][0] * a0 + op[0][1] * a1;
    out.amps[i | stride] = op[1][0] * a0 + op[1][1] * a1;
  }
  return out;
}

inline PureState apply_cnot(const PureState& s, int control, int target) {
  if (control == target)
    throw std::invalid_argument("apply_cnot: control equals target");
  if (control < 0 || control >= s.n_qubits || target < 0 ||
      target >= s.n_qubits)
    throw std::out_of_range("apply_cnot: wire index out of range");
  PureState out = s;
  const std::size_t tbit = std::size_t{1} << (s.n_qubits - 1 - target);
  for (std::size_t i = 0; i < s.dim(); ++i)
    if (bit_of(i, control, s.n_qubits) == 1) out.amps[i] = s.amps[i ^ tbit];
  return out;
}

}  // namespace sixdp
