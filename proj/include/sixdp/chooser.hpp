#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

// Branch resolution. Every probabilistic event in a protocol round goes
// through a BranchChooser: Monte Carlo samples one branch, exact enumeration
// replays the round once per path of the decision tree.

namespace sixdp {

// Counter-based stream: the state for trial t of seed s is a mix of both, so
// trials are independent substreams and aggregation order cannot change
// results. The mixer is the splitmix64 finalizer.
struct CounterRng {
  std::uint64_t state = 0;

  static std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  static CounterRng for_trial(std::uint64_t seed, std::uint64_t trial) {
    return CounterRng{mix64(seed ^ mix64(trial + 0x243F6A8885A308D3ull))};
  }

  std::uint64_t next_u64() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1) with 53 random bits
  double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }
};

class BranchChooser {
 public:
  virtual ~BranchChooser() = default;
  // weights are nonnegative and sum to 1 (within roundoff); returns the index
  // of the branch to follow
  virtual std::size_t pick(std::span<const double> weights) = 0;
};

class SamplingChooser final : public BranchChooser {
 public:
  explicit SamplingChooser(CounterRng rng) : rng_(rng) {}

  std::size_t pick(std::span<const double> weights) override {
    if (weights.empty()) throw std::logic_error("pick: no branches");
    if (weights.size() == 1) return 0;
    const double r = rng_.next_unit();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      acc += weights[i];
      if (r < acc) return i;
    }
    return weights.size() - 1;
  }

 private:
  CounterRng rng_;
};

// Depth-first path replay: each call to run() must make identical decision
// points given identical chooser answers, which holds because rounds are pure
// functions of their inputs and the picked branches.
class EnumeratingChooser final : public BranchChooser {
 public:
  std::size_t pick(std::span<const double> weights) override {
    if (weights.empty()) throw std::logic_error("pick: no branches");
    if (cursor_ < nodes_.size()) {
      Node& n = nodes_[cursor_];
      if (n.weights.size() != weights.size())
        throw std::logic_error("enumeration replay diverged");
      ++cursor_;
      prob_ *= weights[n.chosen];
      return n.chosen;
    }
    const std::size_t first = next_live(weights, 0);
    if (first == weights.size())
      throw std::logic_error("pick: no branch with positive weight");
    nodes_.push_back(Node{{weights.begin(), weights.end()}, first});
    ++cursor_;
    prob_ *= weights[first];
    return first;
  }

  void begin_path() {
    cursor_ = 0;
    prob_ = 1.0;
  }

  double path_probability() const { return prob_; }

  // Move to the next unexplored leaf; false once the tree is exhausted.
  bool advance() {
    while (!nodes_.empty()) {
      Node& n = nodes_.back();
      const std::size_t nxt = next_live({n.weights.data(), n.weights.size()},
                                        n.chosen + 1);
      if (nxt < n.weights.size()) {
        n.chosen = nxt;
        return true;
      }
      nodes_.pop_back();
    }
    return false;
  }

 private:
  struct Node {
    std::vector<double> weights;
    std::size_t chosen;
  };

  static std::size_t next_live(std::span<const double> w, std::size_t from) {
    for (std::size_t i = from; i < w.size(); ++i)
      if (w[i] > 0.0) return i;
    return w.size();
  }

  std::vector<Node> nodes_;
  std::size_t cursor_ = 0;
  double prob_ = 1.0;
};

// Runs `round` once per path of its decision tree and hands each leaf's
// probability and result to `leaf`.
template <typename RoundFn, typename LeafFn>
void for_each_path(RoundFn&& round, LeafFn&& leaf) {
  EnumeratingChooser chooser;
  while (true) {
    chooser.begin_path();
    auto result = round(chooser);
    leaf(chooser.path_probability(), result);
    if (!chooser.advance()) break;
  }
}

}  // namespace sixdp
