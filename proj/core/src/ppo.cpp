#include "wildfire/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wildfire {

void PPOConfig::validate() const {
  if (epsilon <= 0.0 || epsilon >= 1.0) throw std::invalid_argument("epsilon must be in (0,1)");
  if (gamma <= 0.0 || gamma > 1.0) throw std::invalid_argument("gamma must be in (0,1]");
  if (lambda <= 0.0 || lambda > 1.0) throw std::invalid_argument("lambda must be in (0,1]");
  if (batch_size <= 0 || buffer_size <= 0 || num_epoch <= 0 || time_horizon <= 0 ||
      hidden_units <= 0 || num_layers <= 0 || max_steps <= 0) {
    throw std::invalid_argument("PPO counts must be positive");
  }
}

double clip_objective(double ratio, double advantage, double epsilon) {
  const double g = advantage >= 0.0 ? (1.0 + epsilon) * advantage : (1.0 - epsilon) * advantage;
  return std::min(ratio * advantage, g);
}

PpoLearner::PpoLearner(PolicyNet& net, CuriosityModule* curiosity, const PPOConfig& config,
                       std::uint64_t shuffle_seed)
    : net_(net), curiosity_(curiosity), config_(config), shuffle_rng_(shuffle_seed) {
  config_.validate();
  optimizer_ = std::make_unique<AdamOptimizer>(net_.params());
}

double PpoLearner::learning_rate_at(long steps_done) const {
  const double fraction =
      1.0 - static_cast<double>(steps_done) / static_cast<double>(config_.max_steps);
  return config_.learning_rate * std::max(0.0, fraction);
}

UpdateDiagnostics PpoLearner::update(RolloutBuffer& buffer, long steps_done) {
  const int n = static_cast<int>(buffer.size());
  const ActionLayout layout = net_.action_layout();
  UpdateDiagnostics diag;
  diag.learning_rate = learning_rate_at(steps_done);

  // Advantage normalization over the whole buffer.
  double mean = 0.0;
  for (const Transition& tr : buffer.data) mean += tr.advantage;
  mean /= n;
  double var = 0.0;
  for (const Transition& tr : buffer.data) {
    var += (tr.advantage - mean) * (tr.advantage - mean);
  }
  const double std_dev = std::sqrt(var / n) + 1e-8;
  std::vector<double> norm_adv(n);
  for (int i = 0; i < n; ++i) {
    norm_adv[i] = (buffer.data[i].advantage - mean) / std_dev;
  }

  std::vector<int> indices(n);
  std::iota(indices.begin(), indices.end(), 0);

  double sum_ratio = 0.0, sum_clip = 0.0, sum_policy = 0.0, sum_value = 0.0, sum_entropy = 0.0;
  double sum_icm_fwd = 0.0, sum_icm_inv = 0.0;
  long minibatches = 0;

  for (int epoch = 0; epoch < config_.num_epoch; ++epoch) {
    // Fisher-Yates with the learner's own stream.
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(shuffle_rng_.uniform_int(static_cast<std::uint32_t>(i + 1)));
      std::swap(indices[i], indices[j]);
    }
    for (int start = 0; start + config_.batch_size <= n; start += config_.batch_size) {
      const int b = config_.batch_size;
      Matrix obs(b, net_.observation_dim());
      Matrix next_obs(b, net_.observation_dim());
      std::vector<std::vector<int>> actions(b);
      Vector old_logp(b), adv(b), returns(b);
      for (int r = 0; r < b; ++r) {
        const Transition& tr = buffer.data[indices[start + r]];
        obs.row(r) = tr.obs.transpose();
        next_obs.row(r) = tr.next_obs.transpose();
        actions[r] = tr.action;
        old_logp[r] = tr.log_prob;
        adv[r] = norm_adv[indices[start + r]];
        returns[r] = tr.ret;
      }

      Matrix logits;
      Vector values;
      net_.forward(obs, logits, values);

      Matrix grad_logits = Matrix::Zero(b, layout.logits_dim());
      Vector grad_values(b);
      double batch_policy = 0.0, batch_value = 0.0, batch_entropy = 0.0;
      const double inv_b = 1.0 / b;

      for (int r = 0; r < b; ++r) {
        const Eigen::RowVectorXd row = logits.row(r);
        const double new_logp = action_log_prob(row, layout, actions[r]);
        const double ratio = std::exp(new_logp - old_logp[r]);
        const double surrogate = clip_objective(ratio, adv[r], config_.epsilon);
        const double g = adv[r] >= 0.0 ? (1.0 + config_.epsilon) * adv[r]
                                       : (1.0 - config_.epsilon) * adv[r];
        // Gradient flows through the unclipped branch only when it attains
        // the min.
        const double dlogp = ratio * adv[r] <= g ? ratio * adv[r] : 0.0;
        const double entropy = action_entropy(row, layout);

        batch_policy -= surrogate * inv_b;
        batch_entropy += entropy * inv_b;
        const double vdiff = values[r] - returns[r];
        batch_value += 0.5 * vdiff * vdiff * inv_b;

        sum_ratio += ratio;
        if (std::abs(ratio - 1.0) > config_.epsilon) sum_clip += 1.0;

        accumulate_distribution_grad(row, layout, actions[r], -dlogp * inv_b,
                                     -config_.beta * inv_b, grad_logits.row(r));
        grad_values[r] = config_.value_coef * vdiff * inv_b;
      }

      const double loss = batch_policy - config_.beta * batch_entropy +
                          config_.value_coef * batch_value;
      if (!std::isfinite(loss)) {
        diag.aborted = true;
        net_.zero_grad();
        return diag;
      }

      net_.zero_grad();
      net_.backward(grad_logits, grad_values);
      diag.grad_norm = optimizer_->clip_grad_norm(config_.max_grad_norm);
      optimizer_->step(diag.learning_rate);
      net_.zero_grad();

      if (curiosity_ != nullptr) {
        const CuriosityModule::Losses icm = curiosity_->update(obs, actions, next_obs);
        sum_icm_fwd += icm.forward_loss;
        sum_icm_inv += icm.inverse_loss;
      }

      sum_policy += batch_policy;
      sum_value += batch_value;
      sum_entropy += batch_entropy;
      minibatches += 1;
    }
  }

  if (minibatches > 0) {
    diag.mean_ratio = sum_ratio / (minibatches * config_.batch_size);
    diag.clip_fraction = sum_clip / (minibatches * config_.batch_size);
    diag.policy_loss = sum_policy / minibatches;
    diag.value_loss = sum_value / minibatches;
    diag.entropy = sum_entropy / minibatches;
    diag.icm_forward_loss = sum_icm_fwd / minibatches;
    diag.icm_inverse_loss = sum_icm_inv / minibatches;
  }
  return diag;
}

}  // namespace wildfire
