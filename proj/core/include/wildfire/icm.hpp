#pragma once

#include <memory>

#include "wildfire/nn.hpp"
#include "wildfire/policy.hpp"

namespace wildfire {

struct CuriosityConfig {
  double gamma = 0.99;
  double strength = 0.02;
  int encoding_size = 256;
  double learning_rate = 3e-4;
};

/// Intrinsic curiosity module: a feature encoder, a forward model whose
/// prediction error is the exploration bonus, and an inverse model that
/// grounds the features by predicting the action. The encoder learns only
/// through the inverse path.
class CuriosityModule {
 public:
  CuriosityModule(int observation_dim, ActionLayout layout, CuriosityConfig config,
                  std::uint64_t init_seed);

  /// strength * 1/2 * mean squared feature prediction error; always >= 0.
  double intrinsic_reward(const Vector& obs, const std::vector<int>& action,
                          const Vector& next_obs);

  struct Losses {
    double forward_loss = 0.0;
    double inverse_loss = 0.0;
  };

  /// One Adam step on a minibatch of transitions.
  Losses update(const Matrix& obs, const std::vector<std::vector<int>>& actions,
                const Matrix& next_obs);

  const CuriosityConfig& config() const { return config_; }
  std::vector<ParamRef> params();
  AdamOptimizer& optimizer() { return *optimizer_; }

 private:
  Matrix encode(const Matrix& obs, Matrix& pre_cache) const;
  Matrix one_hot_actions(const std::vector<std::vector<int>>& actions) const;

  CuriosityConfig config_;
  ActionLayout layout_;
  int observation_dim_;

  Linear enc1_, enc2_;  // obs -> size -> size (linear output)
  Linear fwd1_, fwd2_;  // [feature, onehot action] -> size -> size
  Linear inv1_, inv2_;  // [feature_t, feature_t1] -> size -> action logits

  std::unique_ptr<AdamOptimizer> optimizer_;
};

}  // namespace wildfire
