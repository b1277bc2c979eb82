#include "wildfire/policy.hpp"

#include <cmath>
#include <stdexcept>

#include "wildfire/weather.hpp"

namespace wildfire {

namespace {
constexpr double kReluGain = 1.4142135623730951;
constexpr double kPolicyHeadGain = 0.01;
constexpr double kValueHeadGain = 1.0;
}  // namespace

void encode_observation_scalars(const LocalObservation& obs, double world_extent,
                                double* out7) {
  if (obs.cof_valid) {
    out7[0] = obs.cof_pos.x / world_extent;
    out7[1] = obs.cof_pos.y / world_extent;
    out7[2] = obs.cof_pos.z / world_extent;
  } else {
    out7[0] = 0.0;
    out7[1] = 0.0;
    out7[2] = 0.0;
  }
  out7[3] = (obs.temp - kTemperatureMin) / (kTemperatureMax - kTemperatureMin);
  out7[4] = obs.hum;
  out7[5] = obs.prep;
  out7[6] = obs.oc;
}

void encode_frame_ma(const LocalObservation& local,
                     const std::vector<std::optional<BroadcastMessage>>& broadcast_inbox,
                     const std::deque<HelpRequest>& help_inbox, double reserve,
                     double world_extent, Eigen::Ref<Vector> out) {
  out.setZero();
  encode_observation_scalars(local, world_extent, out.data());
  for (int k = 0; k < FrameLayout::kMessages; ++k) {
    if (k < static_cast<int>(broadcast_inbox.size()) && broadcast_inbox[k]) {
      encode_observation_scalars(
          broadcast_inbox[k]->observation, world_extent,
          out.data() + FrameLayout::kMessageOffset + k * FrameLayout::kMessageDim);
    }
  }
  for (int k = 0; k < FrameLayout::kHelpFlags; ++k) {
    out[FrameLayout::kHelpOffset + k] =
        k < static_cast<int>(help_inbox.size()) ? 1.0 : 0.0;
  }
  out[FrameLayout::kReserveOffset] = reserve;
}

void encode_frame_sa(const std::vector<LocalObservation>& locals, double world_extent,
                     Eigen::Ref<Vector> out) {
  for (int i = 0; i < static_cast<int>(locals.size()); ++i) {
    encode_observation_scalars(locals[i], world_extent,
                               out.data() + i * FrameLayout::kLocal);
  }
}

MaAction greedy_act(double reserve) {
  return reserve >= 0.1 - 1e-12 ? MaAction::kSupportSelf : MaAction::kNoOp;
}

// ---------------------------------------------------------------------------
// MultiAgentPolicyNet
// ---------------------------------------------------------------------------

MultiAgentPolicyNet::MultiAgentPolicyNet(int hidden_units, int num_layers,
                                         std::uint64_t init_seed) {
  RandomStream rng(init_seed);
  encoder_.init(rng);
  int in_dim = encoder_.embedding_dim() * kStackSize;
  for (int i = 0; i < num_layers; ++i) {
    trunk_.emplace_back(in_dim, hidden_units);
    trunk_.back().init_orthogonal(kReluGain, rng);
    in_dim = hidden_units;
  }
  policy_head_ = Linear(in_dim, kMaActionCount);
  policy_head_.init_orthogonal(kPolicyHeadGain, rng);
  value_head_ = Linear(in_dim, 1);
  value_head_.init_orthogonal(kValueHeadGain, rng);
  trunk_pre_.resize(trunk_.size());
  trunk_act_.resize(trunk_.size());
}

void MultiAgentPolicyNet::forward(const Matrix& observations, Matrix& logits,
                                  Vector& values) {
  const long batch = observations.rows();
  const int frame = FrameLayout::kFrame;
  const Matrix emb_now = encoder_.forward(observations.leftCols(frame), enc_cache_now_);
  const Matrix emb_prev = encoder_.forward(observations.rightCols(frame), enc_cache_prev_);

  trunk_input_.resize(batch, emb_now.cols() + emb_prev.cols());
  trunk_input_ << emb_now, emb_prev;

  Matrix h = trunk_input_;
  for (std::size_t i = 0; i < trunk_.size(); ++i) {
    trunk_pre_[i] = trunk_[i].forward(h);
    trunk_act_[i] = relu(trunk_pre_[i]);
    h = trunk_act_[i];
  }
  logits = policy_head_.forward(h);
  values = value_head_.forward(h).col(0);
}

void MultiAgentPolicyNet::backward(const Matrix& grad_logits, const Vector& grad_values) {
  const Matrix& top = trunk_.empty() ? trunk_input_ : trunk_act_.back();
  Matrix grad_h = policy_head_.backward(top, grad_logits);
  grad_h += value_head_.backward(top, grad_values);
  for (int i = static_cast<int>(trunk_.size()) - 1; i >= 0; --i) {
    const Matrix grad_pre = relu_backward(trunk_pre_[i], grad_h);
    const Matrix& input = i == 0 ? trunk_input_ : trunk_act_[i - 1];
    grad_h = trunk_[i].backward(input, grad_pre);
  }
  const int emb = encoder_.embedding_dim();
  encoder_.backward(enc_cache_now_, grad_h.leftCols(emb));
  encoder_.backward(enc_cache_prev_, grad_h.rightCols(emb));
}

std::vector<ParamRef> MultiAgentPolicyNet::params() {
  std::vector<ParamRef> out = encoder_.params();
  for (Linear& layer : trunk_) {
    for (ParamRef p : layer.params()) out.push_back(p);
  }
  for (ParamRef p : policy_head_.params()) out.push_back(p);
  for (ParamRef p : value_head_.params()) out.push_back(p);
  return out;
}

// ---------------------------------------------------------------------------
// SingleAgentPolicyNet
// ---------------------------------------------------------------------------

SingleAgentPolicyNet::SingleAgentPolicyNet(int hidden_units, int num_layers,
                                           std::uint64_t init_seed) {
  RandomStream rng(init_seed);
  int in_dim = kSaObservationDim;
  for (int i = 0; i < num_layers; ++i) {
    trunk_.emplace_back(in_dim, hidden_units);
    trunk_.back().init_orthogonal(kReluGain, rng);
    in_dim = hidden_units;
  }
  policy_head_ = Linear(in_dim, kTowerCount * kSaSubActionCount);
  policy_head_.init_orthogonal(kPolicyHeadGain, rng);
  value_head_ = Linear(in_dim, 1);
  value_head_.init_orthogonal(kValueHeadGain, rng);
  trunk_pre_.resize(trunk_.size());
  trunk_act_.resize(trunk_.size());
}

void SingleAgentPolicyNet::forward(const Matrix& observations, Matrix& logits,
                                   Vector& values) {
  trunk_input_ = observations;
  Matrix h = trunk_input_;
  for (std::size_t i = 0; i < trunk_.size(); ++i) {
    trunk_pre_[i] = trunk_[i].forward(h);
    trunk_act_[i] = relu(trunk_pre_[i]);
    h = trunk_act_[i];
  }
  logits = policy_head_.forward(h);
  values = value_head_.forward(h).col(0);
}

void SingleAgentPolicyNet::backward(const Matrix& grad_logits, const Vector& grad_values) {
  const Matrix& top = trunk_.empty() ? trunk_input_ : trunk_act_.back();
  Matrix grad_h = policy_head_.backward(top, grad_logits);
  grad_h += value_head_.backward(top, grad_values);
  for (int i = static_cast<int>(trunk_.size()) - 1; i >= 0; --i) {
    const Matrix grad_pre = relu_backward(trunk_pre_[i], grad_h);
    const Matrix& input = i == 0 ? trunk_input_ : trunk_act_[i - 1];
    grad_h = trunk_[i].backward(input, grad_pre);
  }
}

std::vector<ParamRef> SingleAgentPolicyNet::params() {
  std::vector<ParamRef> out;
  for (Linear& layer : trunk_) {
    for (ParamRef p : layer.params()) out.push_back(p);
  }
  for (ParamRef p : policy_head_.params()) out.push_back(p);
  for (ParamRef p : value_head_.params()) out.push_back(p);
  return out;
}

// ---------------------------------------------------------------------------
// Factored categorical distribution
// ---------------------------------------------------------------------------

namespace {

Eigen::RowVectorXd group_log_probs(const Eigen::RowVectorXd& logits, int offset, int count) {
  const double max_logit = logits.segment(offset, count).maxCoeff();
  const double log_sum =
      max_logit +
      std::log((logits.segment(offset, count).array() - max_logit).exp().sum());
  return logits.segment(offset, count).array() - log_sum;
}

}  // namespace

ActionSample sample_action(const Eigen::RowVectorXd& logits, const ActionLayout& layout,
                           RandomStream& rng) {
  if (!logits.allFinite()) {
    throw std::runtime_error("sample_action: non-finite logits");
  }
  ActionSample out;
  out.action.resize(layout.groups);
  for (int g = 0; g < layout.groups; ++g) {
    const Eigen::RowVectorXd logp = group_log_probs(logits, g * layout.per_group,
                                                    layout.per_group);
    const double u = rng.uniform();
    double cumulative = 0.0;
    int choice = layout.per_group - 1;
    for (int a = 0; a < layout.per_group; ++a) {
      cumulative += std::exp(logp[a]);
      if (u < cumulative) {
        choice = a;
        break;
      }
    }
    out.action[g] = choice;
    out.log_prob += logp[choice];
  }
  return out;
}

double action_log_prob(const Eigen::RowVectorXd& logits, const ActionLayout& layout,
                       const std::vector<int>& action) {
  double total = 0.0;
  for (int g = 0; g < layout.groups; ++g) {
    total += group_log_probs(logits, g * layout.per_group, layout.per_group)[action[g]];
  }
  return total;
}

double action_entropy(const Eigen::RowVectorXd& logits, const ActionLayout& layout) {
  double total = 0.0;
  for (int g = 0; g < layout.groups; ++g) {
    const Eigen::RowVectorXd logp = group_log_probs(logits, g * layout.per_group,
                                                    layout.per_group);
    total -= (logp.array().exp() * logp.array()).sum();
  }
  return total;
}

void accumulate_distribution_grad(const Eigen::RowVectorXd& logits, const ActionLayout& layout,
                                  const std::vector<int>& action, double dlogp_coef,
                                  double dentropy_coef,
                                  Eigen::Ref<Eigen::RowVectorXd> dlogits) {
  for (int g = 0; g < layout.groups; ++g) {
    const int offset = g * layout.per_group;
    const Eigen::RowVectorXd logp = group_log_probs(logits, offset, layout.per_group);
    const Eigen::RowVectorXd p = logp.array().exp();
    const double entropy = -(p.array() * logp.array()).sum();
    // d log pi(a) / dz = onehot(a) - p;  dH / dz = -p .* (logp + H)
    for (int a = 0; a < layout.per_group; ++a) {
      double grad = dlogp_coef * ((a == action[g] ? 1.0 : 0.0) - p[a]);
      grad += dentropy_coef * (-p[a] * (logp[a] + entropy));
      dlogits[offset + a] += grad;
    }
  }
}

}  // namespace wildfire
