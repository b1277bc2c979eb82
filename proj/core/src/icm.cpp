#include "wildfire/icm.hpp"

#include <cmath>

namespace wildfire {

namespace {
constexpr double kReluGain = 1.4142135623730951;
// Joint loss weighting from the standard curiosity construction.
constexpr double kForwardLossWeight = 0.2;
constexpr double kInverseLossWeight = 0.8;
}  // namespace

CuriosityModule::CuriosityModule(int observation_dim, ActionLayout layout,
                                 CuriosityConfig config, std::uint64_t init_seed)
    : config_(config),
      layout_(layout),
      observation_dim_(observation_dim),
      enc1_(observation_dim, config.encoding_size),
      enc2_(config.encoding_size, config.encoding_size),
      fwd1_(config.encoding_size + layout.logits_dim(), config.encoding_size),
      fwd2_(config.encoding_size, config.encoding_size),
      inv1_(2 * config.encoding_size, config.encoding_size),
      inv2_(config.encoding_size, layout.logits_dim()) {
  RandomStream rng(init_seed);
  enc1_.init_orthogonal(kReluGain, rng);
  enc2_.init_orthogonal(1.0, rng);
  fwd1_.init_orthogonal(kReluGain, rng);
  fwd2_.init_orthogonal(1.0, rng);
  inv1_.init_orthogonal(kReluGain, rng);
  inv2_.init_orthogonal(0.01, rng);

  std::vector<ParamRef> refs = params();
  optimizer_ = std::make_unique<AdamOptimizer>(refs);
}

Matrix CuriosityModule::encode(const Matrix& obs, Matrix& pre_cache) const {
  pre_cache = enc1_.forward(obs);
  return enc2_.forward(relu(pre_cache));
}

Matrix CuriosityModule::one_hot_actions(const std::vector<std::vector<int>>& actions) const {
  Matrix out = Matrix::Zero(static_cast<long>(actions.size()), layout_.logits_dim());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    for (int g = 0; g < layout_.groups; ++g) {
      out(static_cast<long>(i), g * layout_.per_group + actions[i][g]) = 1.0;
    }
  }
  return out;
}

double CuriosityModule::intrinsic_reward(const Vector& obs, const std::vector<int>& action,
                                         const Vector& next_obs) {
  Matrix pre;
  const Matrix feat_t = encode(obs.transpose(), pre);
  const Matrix feat_t1 = encode(next_obs.transpose(), pre);

  Matrix input(1, feat_t.cols() + layout_.logits_dim());
  input.setZero();
  input.leftCols(feat_t.cols()) = feat_t;
  for (int g = 0; g < layout_.groups; ++g) {
    input(0, feat_t.cols() + g * layout_.per_group + action[g]) = 1.0;
  }
  const Matrix predicted = fwd2_.forward(relu(fwd1_.forward(input)));
  const double mse = (predicted - feat_t1).array().square().mean();
  return config_.strength * 0.5 * mse;
}

CuriosityModule::Losses CuriosityModule::update(const Matrix& obs,
                                                const std::vector<std::vector<int>>& actions,
                                                const Matrix& next_obs) {
  const long batch = obs.rows();
  const int size = config_.encoding_size;

  // Encoder forward, separate caches for s_t and s_{t+1}.
  const Matrix enc_pre_t = enc1_.forward(obs);
  const Matrix enc_act_t = relu(enc_pre_t);
  const Matrix feat_t = enc2_.forward(enc_act_t);
  const Matrix enc_pre_t1 = enc1_.forward(next_obs);
  const Matrix enc_act_t1 = relu(enc_pre_t1);
  const Matrix feat_t1 = enc2_.forward(enc_act_t1);

  // Forward model on detached features.
  const Matrix onehot = one_hot_actions(actions);
  Matrix fwd_input(batch, size + layout_.logits_dim());
  fwd_input << feat_t, onehot;
  const Matrix fwd_pre = fwd1_.forward(fwd_input);
  const Matrix fwd_act = relu(fwd_pre);
  const Matrix predicted = fwd2_.forward(fwd_act);
  const Matrix fwd_err = predicted - feat_t1;
  const double forward_loss = 0.5 * fwd_err.array().square().mean();

  // Inverse model through both encodings.
  Matrix inv_input(batch, 2 * size);
  inv_input << feat_t, feat_t1;
  const Matrix inv_pre = inv1_.forward(inv_input);
  const Matrix inv_act = relu(inv_pre);
  const Matrix inv_logits = inv2_.forward(inv_act);

  double inverse_loss = 0.0;
  Matrix grad_inv_logits = Matrix::Zero(batch, layout_.logits_dim());
  for (long i = 0; i < batch; ++i) {
    for (int g = 0; g < layout_.groups; ++g) {
      const int offset = g * layout_.per_group;
      const Eigen::RowVectorXd logits_g = inv_logits.block(i, offset, 1, layout_.per_group);
      const double max_logit = logits_g.maxCoeff();
      const double log_sum =
          max_logit + std::log((logits_g.array() - max_logit).exp().sum());
      const Eigen::RowVectorXd logp = logits_g.array() - log_sum;
      const int a = actions[i][g];
      inverse_loss -= logp[a];
      const Eigen::RowVectorXd p = logp.array().exp();
      for (int k = 0; k < layout_.per_group; ++k) {
        grad_inv_logits(i, offset + k) =
            kInverseLossWeight * (p[k] - (k == a ? 1.0 : 0.0)) / static_cast<double>(batch);
      }
    }
  }
  inverse_loss /= static_cast<double>(batch);

  // Backward. Forward-model loss updates only the forward model weights.
  for (ParamRef& p : params()) p.grad->setZero();

  const double fwd_scale =
      kForwardLossWeight / (static_cast<double>(batch) * static_cast<double>(size));
  const Matrix grad_predicted = fwd_scale * fwd_err;
  const Matrix grad_fwd_act = fwd2_.backward(fwd_act, grad_predicted);
  const Matrix grad_fwd_pre = relu_backward(fwd_pre, grad_fwd_act);
  fwd1_.backward(fwd_input, grad_fwd_pre);  // input grads discarded (detached)

  const Matrix grad_inv_act = inv2_.backward(inv_act, grad_inv_logits);
  const Matrix grad_inv_pre = relu_backward(inv_pre, grad_inv_act);
  const Matrix grad_inv_input = inv1_.backward(inv_input, grad_inv_pre);

  const Matrix grad_feat_t = grad_inv_input.leftCols(size);
  const Matrix grad_feat_t1 = grad_inv_input.rightCols(size);
  const Matrix grad_enc_act_t = enc2_.backward(enc_act_t, grad_feat_t);
  enc1_.backward(obs, relu_backward(enc_pre_t, grad_enc_act_t));
  const Matrix grad_enc_act_t1 = enc2_.backward(enc_act_t1, grad_feat_t1);
  enc1_.backward(next_obs, relu_backward(enc_pre_t1, grad_enc_act_t1));

  optimizer_->step(config_.learning_rate);
  for (ParamRef& p : params()) p.grad->setZero();

  return Losses{forward_loss, inverse_loss};
}

std::vector<ParamRef> CuriosityModule::params() {
  std::vector<ParamRef> out;
  for (Linear* layer : {&enc1_, &enc2_, &fwd1_, &fwd2_, &inv1_, &inv2_}) {
    for (ParamRef p : layer->params()) out.push_back(p);
  }
  return out;
}

}  // namespace wildfire
