#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sixdp/basis.hpp"
#include "sixdp/chooser.hpp"
#include "sixdp/pauli.hpp"
#include "sixdp/state.hpp"

using namespace sixdp;

namespace {

Amplitude amp(double re, double im = 0.0) { return {re, im}; }

PureState random_1q(CounterRng& rng) {
  std::vector<Amplitude> a(2);
  double n2 = 0.0;
  do {
    for (auto& x : a) x = {2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0};
    n2 = std::norm(a[0]) + std::norm(a[1]);
  } while (n2 < 1e-4);
  const double s = 1.0 / std::sqrt(n2);
  for (auto& x : a) x *= s;
  return make_pure(1, a);
}

Basis random_basis(CounterRng& rng) {
  constexpr double kPi = 3.14159265358979323846;
  switch (rng.next_u64() % 4) {
    case 0: return basis_z();
    case 1: return basis_x();
    case 2: return basis_y();
    default:
      return basis_bloch(rng.next_unit() * kPi, rng.next_unit() * 2.0 * kPi);
  }
}

}  // namespace

TEST_CASE("make_pure validates its input") {
  CHECK_THROWS_AS(make_pure(0, {amp(1)}), std::invalid_argument);
  CHECK_THROWS_AS(make_pure(4, std::vector<Amplitude>(16, amp(0.25))),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_pure(2, {amp(1), amp(0)}), std::invalid_argument);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(make_pure(1, {amp(inf), amp(0)}), std::invalid_argument);
  CHECK(make_pure(1, {amp(1), amp(0)}).dim() == 2);
}

TEST_CASE("canonical eigenstates have the fixed coefficients") {
  const double r = kInvSqrt2;
  struct Row {
    Basis basis;
    int bit;
    Amplitude a0, a1;
  };
  const Row rows[] = {
      {basis_z(), 0, amp(1), amp(0)},
      {basis_z(), 1, amp(0), amp(1)},
      {basis_x(), 0, amp(r), amp(r)},
      {basis_x(), 1, amp(r), amp(-r)},
      {basis_y(), 0, amp(r), amp(0, r)},
      {basis_y(), 1, amp(r), amp(0, -r)},
  };
  for (const Row& row : rows) {
    const PureState s = make_state(row.basis, row.bit);
    CHECK(std::abs(s.amps[0] - row.a0) < 1e-15);
    CHECK(std::abs(s.amps[1] - row.a1) < 1e-15);
  }
  CHECK_THROWS_AS(make_state(basis_z(), 2), std::invalid_argument);
}

TEST_CASE("canonical bases equal their Bloch parametrizations up to phase") {
  constexpr double kPi = 3.14159265358979323846;
  const std::pair<Basis, Basis> same[] = {
      {basis_z(), basis_bloch(0.0, 0.0)},
      {basis_x(), basis_bloch(kPi / 2, 0.0)},
      {basis_y(), basis_bloch(kPi / 2, kPi / 2)},
  };
  for (const auto& [canon, bloch] : same)
    for (int bit = 0; bit < 2; ++bit)
      CHECK(equal_up_to_phase(make_state(canon, bit), make_state(bloch, bit),
                              1e-12));
  CHECK_THROWS_AS(basis_bloch(-0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(basis_bloch(3.2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(basis_bloch(1.0, 6.4), std::invalid_argument);
}

TEST_CASE("tensor places the first factor in the high bits") {
  const PureState s01 = tensor(make_state(basis_z(), 0), make_state(basis_z(), 1));
  REQUIRE(s01.n_qubits == 2);
  CHECK(std::abs(s01.amps[1] - amp(1)) < 1e-15);  // |01>
  CHECK(std::abs(s01.amps[0]) + std::abs(s01.amps[2]) + std::abs(s01.amps[3]) <
        1e-15);
  const PureState three =
      tensor(s01, make_state(basis_z(), 1));  // |011>
  CHECK(std::abs(three.amps[3] - amp(1)) < 1e-15);
  CHECK_THROWS_AS(tensor(three, make_state(basis_z(), 0)),
                  std::invalid_argument);
}

TEST_CASE("apply_1q matches known gate actions") {
  const PureState z0 = make_state(basis_z(), 0);
  CHECK(equal_up_to_phase(apply_1q(pauli_matrix(PauliOp::X), z0, 0),
                          make_state(basis_z(), 1), 1e-12));
  CHECK(equal_up_to_phase(apply_1q(pauli_matrix(PauliOp::Z),
                                   make_state(basis_x(), 0), 0),
                          make_state(basis_x(), 1), 1e-12));
  // iY|0> = -|1>, equal to |1> only up to phase
  const PureState iy0 = apply_1q(pauli_matrix(PauliOp::IY), z0, 0);
  CHECK(std::abs(iy0.amps[1] - amp(-1)) < 1e-15);
  CHECK(equal_up_to_phase(iy0, make_state(basis_z(), 1), 1e-12));

  CHECK_THROWS_AS(apply_1q(pauli_matrix(PauliOp::X), z0, 1), std::out_of_range);
  const Mat2 not_unitary = {{{amp(1), amp(1)}, {amp(0), amp(1)}}};
  CHECK_THROWS_AS(apply_1q(not_unitary, z0, 0), std::invalid_argument);
}

TEST_CASE("apply_1q acts on the addressed wire of a multi-qubit state") {
  // |00> -> X on wire 1 -> |01>
  PureState s = tensor(make_state(basis_z(), 0), make_state(basis_z(), 0));
  s = apply_1q(pauli_matrix(PauliOp::X), s, 1);
  CHECK(std::abs(s.amps[1] - amp(1)) < 1e-15);
  s = apply_1q(pauli_matrix(PauliOp::X), s, 0);  // -> |11>
  CHECK(std::abs(s.amps[3] - amp(1)) < 1e-15);
}

TEST_CASE("apply_cnot flips the target exactly when the control is 1") {
  PureState s = tensor(make_state(basis_z(), 1), make_state(basis_z(), 0));
  s = apply_cnot(s, 0, 1);  // |10> -> |11>
  CHECK(std::abs(s.amps[3] - amp(1)) < 1e-15);

  // (a|0> + b|1>)|0> -> a|00> + b|11>
  const PureState in = make_pure(1, {amp(0.6), amp(0.0, 0.8)});
  const PureState ent = apply_cnot(tensor(in, make_state(basis_z(), 0)), 0, 1);
  CHECK(std::abs(ent.amps[0] - amp(0.6)) < 1e-15);
  CHECK(std::abs(ent.amps[3] - amp(0.0, 0.8)) < 1e-15);
  CHECK(std::abs(ent.amps[1]) + std::abs(ent.amps[2]) < 1e-15);

  // |x+>|x+> is a fixed point
  const PureState xx = tensor(make_state(basis_x(), 0), make_state(basis_x(), 0));
  CHECK(equal_up_to_phase(apply_cnot(xx, 0, 1), xx, 1e-12));

  CHECK_THROWS_AS(apply_cnot(xx, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(apply_cnot(xx, 0, 2), std::out_of_range);
}

TEST_CASE("measure_branches reproduces textbook cases") {
  // |x+> in Z: both outcomes at probability 1/2
  const auto half = measure_branches(make_state(basis_x(), 0), 0, basis_z());
  REQUIRE(half.size() == 2);
  CHECK(half[0].outcome == 0);
  CHECK(half[0].prob == Catch::Approx(0.5).margin(1e-12));
  CHECK(half[1].prob == Catch::Approx(0.5).margin(1e-12));
  CHECK(equal_up_to_phase(half[0].post, make_state(basis_z(), 0), 1e-12));
  CHECK(equal_up_to_phase(half[1].post, make_state(basis_z(), 1), 1e-12));

  // eigenstate in its own basis: a single surviving branch
  const auto sure = measure_branches(make_state(basis_y(), 1), 0, basis_y());
  REQUIRE(sure.size() == 1);
  CHECK(sure[0].outcome == 1);
  CHECK(sure[0].prob == Catch::Approx(1.0).margin(1e-12));

  // a|00> + b|11>, wire 0 in Z: probabilities |a|^2, |b|^2, collapsed posts
  const PureState in = make_pure(1, {amp(0.6), amp(0.8)});
  const PureState ent = apply_cnot(tensor(in, make_state(basis_z(), 0)), 0, 1);
  const auto bell = measure_branches(ent, 0, basis_z());
  REQUIRE(bell.size() == 2);
  CHECK(bell[0].prob == Catch::Approx(0.36).margin(1e-12));
  CHECK(bell[1].prob == Catch::Approx(0.64).margin(1e-12));
  PureState e00{2, {amp(1), amp(0), amp(0), amp(0)}};
  PureState e11{2, {amp(0), amp(0), amp(0), amp(1)}};
  CHECK(equal_up_to_phase(bell[0].post, e00, 1e-12));
  CHECK(equal_up_to_phase(bell[1].post, e11, 1e-12));

  CHECK_THROWS_AS(measure_branches(in, 1, basis_z()), std::out_of_range);
}

TEST_CASE("equal_up_to_phase ignores exactly a global phase") {
  const PureState s = make_pure(1, {amp(0.6), amp(0.0, 0.8)});
  PureState rotated = s;
  const Amplitude phase = std::exp(Amplitude{0.0, 1.234});
  for (auto& a : rotated.amps) a *= phase;
  CHECK(equal_up_to_phase(s, rotated, 1e-12));
  CHECK_FALSE(equal_up_to_phase(s, make_state(basis_z(), 0), 1e-6));
  CHECK_THROWS_AS(
      equal_up_to_phase(s, tensor(s, make_state(basis_z(), 0)), 1e-12),
      std::invalid_argument);
}

TEST_CASE("random bases are orthonormal and complete") {
  CounterRng rng = CounterRng::for_trial(11, 0);
  for (int t = 0; t < 50; ++t) {
    const Basis b = random_basis(rng);
    const PureState e0 = make_state(b, 0);
    const PureState e1 = make_state(b, 1);
    CHECK(std::abs(norm(e0) - 1.0) < 1e-12);
    CHECK(std::abs(norm(e1) - 1.0) < 1e-12);
    const Amplitude ov = std::conj(e0.amps[0]) * e1.amps[0] +
                         std::conj(e0.amps[1]) * e1.amps[1];
    CHECK(std::abs(ov) < 1e-12);
  }
}

TEST_CASE("encoding ops are unitary involutions up to phase") {
  CounterRng rng = CounterRng::for_trial(12, 0);
  for (PauliOp op : kAllOps) {
    CHECK(is_unitary(pauli_matrix(op), 1e-12));
    for (int t = 0; t < 20; ++t) {
      const PureState s = random_1q(rng);
      const PureState twice =
          apply_1q(pauli_matrix(op), apply_1q(pauli_matrix(op), s, 0), 0);
      CHECK(equal_up_to_phase(twice, s, 1e-12));
      CHECK(std::abs(norm(apply_1q(pauli_matrix(op), s, 0)) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("cnot is an involution and preserves norm") {
  CounterRng rng = CounterRng::for_trial(13, 0);
  for (int t = 0; t < 20; ++t) {
    const PureState joint = tensor(random_1q(rng), random_1q(rng));
    for (const auto& [c, tg] : {std::pair{0, 1}, std::pair{1, 0}}) {
      const PureState once = apply_cnot(joint, c, tg);
      CHECK(std::abs(norm(once) - 1.0) < 1e-12);
      CHECK(equal_up_to_phase(apply_cnot(once, c, tg), joint, 1e-12));
    }
  }
}

TEST_CASE("measurement branches are complete and collapsed") {
  CounterRng rng = CounterRng::for_trial(14, 0);
  for (int t = 0; t < 50; ++t) {
    const PureState s = tensor(random_1q(rng), random_1q(rng));
    const Basis b = random_basis(rng);
    const int wire = static_cast<int>(rng.next_u64() % 2);
    double total = 0.0;
    for (const MeasBranch& br : measure_branches(s, wire, b)) {
      total += br.prob;
      CHECK(std::abs(norm(br.post) - 1.0) < 1e-12);
      // measuring the collapsed wire again is deterministic
      const auto again = measure_branches(br.post, wire, b);
      REQUIRE(again.size() == 1);
      CHECK(again[0].outcome == br.outcome);
    }
    CHECK(total == Catch::Approx(1.0).margin(1e-12));
  }
}
