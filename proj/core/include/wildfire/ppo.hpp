#pragma once

#include <optional>

#include "wildfire/icm.hpp"
#include "wildfire/nn.hpp"
#include "wildfire/policy.hpp"

namespace wildfire {

struct PPOConfig {
  int batch_size = 128;
  int buffer_size = 2048;
  double learning_rate = 3e-4;  // linear decay to zero over max_steps
  double beta = 0.01;           // entropy coefficient
  double epsilon = 0.2;         // clip range
  double lambda = 0.95;
  double gamma = 0.99;
  int num_epoch = 3;
  int time_horizon = 128;
  int hidden_units = 512;
  int num_layers = 2;
  double value_coef = 0.5;
  double max_grad_norm = 0.5;
  long max_steps = 500000;
  CuriosityConfig curiosity;

  void validate() const;  // throws std::invalid_argument on bad ranges
};

/// The clipped surrogate term for one sample:
/// min(ratio * A, g(eps, A)) with g = (1 + eps) A for A >= 0 else (1 - eps) A.
double clip_objective(double ratio, double advantage, double epsilon);

/// One experience tuple. `reward` already contains the intrinsic share.
struct Transition {
  Vector obs;
  Vector next_obs;
  std::vector<int> action;
  double log_prob = 0.0;
  double value = 0.0;
  double reward = 0.0;
  double intrinsic = 0.0;
  bool terminal = false;
  double advantage = 0.0;
  double ret = 0.0;
};

struct RolloutBuffer {
  std::vector<Transition> data;
  std::size_t size() const { return data.size(); }
  void clear() { data.clear(); }
};

struct UpdateDiagnostics {
  double mean_ratio = 0.0;
  double clip_fraction = 0.0;
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double icm_forward_loss = 0.0;
  double icm_inverse_loss = 0.0;
  double learning_rate = 0.0;
  double grad_norm = 0.0;
  bool aborted = false;  // non-finite loss encountered; no parameters touched
};

/// Clipped-surrogate policy optimization with entropy regularization and
/// value regression, over minibatches of a filled rollout buffer.
class PpoLearner {
 public:
  PpoLearner(PolicyNet& net, CuriosityModule* curiosity, const PPOConfig& config,
             std::uint64_t shuffle_seed);

  /// Scheduled learning rate after `steps_done` collected agent steps.
  double learning_rate_at(long steps_done) const;

  /// num_epoch passes of shuffled minibatches. Advantages are normalized to
  /// zero mean / unit std across the buffer first. The curiosity module, when
  /// present, takes one step per minibatch on the same samples.
  UpdateDiagnostics update(RolloutBuffer& buffer, long steps_done);

  AdamOptimizer& optimizer() { return *optimizer_; }
  RandomStream& shuffle_rng() { return shuffle_rng_; }

 private:
  PolicyNet& net_;
  CuriosityModule* curiosity_;
  PPOConfig config_;
  std::unique_ptr<AdamOptimizer> optimizer_;
  RandomStream shuffle_rng_;
};

}  // namespace wildfire
