#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "sixdp/state.hpp"

// Measurement bases: the canonical Z/X/Y triple of mutually unbiased bases,
// plus arbitrary Bloch-angle-parametrized bases for sweeps.

namespace sixdp {

enum class BasisKind { Z, X, Y, Bloch };

struct Basis {
  BasisKind kind = BasisKind::Z;
  double theta = 0.0;  // Bloch only, radians in [0, pi]
  double phi = 0.0;    // Bloch only, radians in [0, 2*pi)
};

inline Basis basis_z() { return {BasisKind::Z, 0.0, 0.0}; }
inline Basis basis_x() { return {BasisKind::X, 0.0, 0.0}; }
inline Basis basis_y() { return {BasisKind::Y, 0.0, 0.0}; }

inline Basis basis_bloch(double theta, double phi) {
  constexpr double kPi = 3.14159265358979323846;
  if (!(theta >= 0.0 && theta <= kPi + 1e-12))
    throw std::invalid_argument("basis_bloch: theta outside [0, pi]");
  if (!(phi >= 0.0 && phi < 2.0 * kPi + 1e-12))
    throw std::invalid_argument("basis_bloch: phi outside [0, 2*pi)");
  return {BasisKind::Bloch, theta, phi};
}

inline bool is_canonical(const Basis& b) { return b.kind != BasisKind::Bloch; }

// Canonical bases compare by kind; this is only meaningful for the protocol's
// public basis comparison, which never involves Bloch bases.
inline bool same_canonical(const Basis& a, const Basis& b) {
  return is_canonical(a) && is_canonical(b) && a.kind == b.kind;
}

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

// Eigenstate `bit` of the basis, canonicalized.
// Bloch convention: e0 = (cos(t/2), e^{i phi} sin(t/2)),
//                   e1 = (sin(t/2), -e^{i phi} cos(t/2)).
// Z == Bloch(0,0), X == Bloch(pi/2,0), Y == Bloch(pi/2,pi/2) up to phase.
inline PureState make_state(const Basis& basis, int bit) {
  if (bit != 0 && bit != 1)
    throw std::invalid_argument("make_state: bit must be 0 or 1");
  const Amplitude i{0.0, 1.0};
  std::vector<Amplitude> amps(2);
  switch (basis.kind) {
    case BasisKind::Z:
      amps = bit == 0 ? std::vector<Amplitude>{1.0, 0.0}
                      : std::vector<Amplitude>{0.0, 1.0};
      break;
    case BasisKind::X:
      amps = bit == 0 ? std::vector<Amplitude>{kInvSqrt2, kInvSqrt2}
                      : std::vector<Amplitude>{kInvSqrt2, -kInvSqrt2};
      break;
    case BasisKind::Y:
      amps = bit == 0 ? std::vector<Amplitude>{kInvSqrt2, i * kInvSqrt2}
                      : std::vector<Amplitude>{kInvSqrt2, -i * kInvSqrt2};
      break;
    case BasisKind::Bloch: {
      const double c = std::cos(basis.theta / 2.0);
      const double s = std::sin(basis.theta / 2.0);
      const Amplitude ph = std::exp(i * basis.phi);
      if (bit == 0)
        amps = {Amplitude{c, 0.0}, ph * s};
      else
        amps = {Amplitude{s, 0.0}, -ph * c};
      break;
    }
  }
  return canonicalized(make_pure(1, std::move(amps)));
}

inline std::string to_string(const Basis& b) {
  switch (b.kind) {
    case BasisKind::Z: return "Z";
    case BasisKind::X: return "X";
    case BasisKind::Y: return "Y";
    case BasisKind::Bloch: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "bloch:%.12g;%.12g", b.theta, b.phi);
      return buf;
    }
  }
  return "?";
}

struct MeasBranch {
  int outcome = 0;
  double prob = 0.0;
  PureState post;
};

// All projective-measurement branches of one wire in the given basis.
// Branches with probability < 1e-12 are omitted; the surviving probabilities
// are renormalized to sum to 1 and each post-state is normalized with the
// measured wire collapsed onto its basis eigenstate.
inline std::vector<MeasBranch> measure_branches(const PureState& s, int qubit,
                                                const Basis& basis) {
  if (qubit < 0 || qubit >= s.n_qubits)
    throw std::out_of_range("measure_branches: qubit index out of range");
  const std::size_t stride = std::size_t{1} << (s.n_qubits - 1 - qubit);
  std::vector<MeasBranch> branches;
  double total = 0.0;
  for (int k = 0; k < 2; ++k) {
    const PureState e = make_state(basis, k);
    PureState post = s;
    double p = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i) {
      if (i & stride) continue;
      // overlap of the wire pair (i, i|stride) with eigenstate k
      const Amplitude c = std::conj(e.amps[0]) * s.amps[i] +
                          std::conj(e.amps[1]) * s.amps[i | stride];
      p += std::norm(c);
      post.amps[i] = c * e.amps[0];
      post.amps[i | stride] = c * e.amps[1];
    }
    if (p < kBranchPruneTol) continue;
    const double scale = 1.0 / std::sqrt(p);
    for (Amplitude& a : post.amps) a *= scale;
    total += p;
    branches.push_back(MeasBranch{k, p, std::move(post)});
  }
  for (MeasBranch& b : branches) b.prob /= total;
  return branches;
}

}  // namespace sixdp
