#pragma once

#include <cstdint>

namespace wildfire {

/// Counter-free seed mixing (splitmix64 finalizer). Used both to expand a
/// single seed into generator state and to derive independent stream seeds,
/// e.g. derive_seed(master, episode_index) for open-ended episode scenarios.
std::uint64_t mix_seed(std::uint64_t value);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt_a, std::uint64_t salt_b);

/// Deterministic random stream (xoshiro256**, splitmix64-seeded).
///
/// The standard-library distributions are not pinned across implementations,
/// so every draw the simulator and trainer make goes through this class.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, bound); bound must be > 0.
  std::uint32_t uniform_int(std::uint32_t bound);
  bool bernoulli(double p);
  /// Standard normal via Box-Muller.
  double normal();

  /// State capture for checkpointing.
  struct State {
    std::uint64_t s[4];
    double spare;
    bool has_spare;
  };
  State state() const;
  void set_state(const State& state);

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace wildfire
