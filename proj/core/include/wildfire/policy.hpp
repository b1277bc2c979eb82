#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "wildfire/comms.hpp"
#include "wildfire/gnn.hpp"
#include "wildfire/nn.hpp"
#include "wildfire/towers.hpp"

namespace wildfire {

/// Multi-agent discrete actions, one choice per agent per step.
enum class MaAction : int {
  kNoOp = 0,
  kSupportSelf = 1,
  kSupportRequester = 2,  // distribute to the sender of the oldest pending request
  kReclaim = 3,           // deduct the oldest own allocation back into reserve
  kSendHelpRequest = 4,
};
inline constexpr int kMaActionCount = 5;

/// Single-agent sub-actions, one per tower per step (9 x 4 = 36 in total).
enum class SaSubAction : int {
  kNoOp = 0,
  kSupportSelf = 1,
  kSupportFireNeighbor = 2,  // distribute to the nearest neighbor observing fire
  kReclaim = 3,
};
inline constexpr int kSaSubActionCount = 4;

/// Factored discrete action space: `groups` independent categorical choices
/// with `per_group` options each. MA = {1, 5}; SA = {9, 4}.
struct ActionLayout {
  int groups = 1;
  int per_group = kMaActionCount;
  int logits_dim() const { return groups * per_group; }
};

inline constexpr int kStackSize = 2;
inline constexpr int kMaObservationDim = FrameLayout::kFrame * kStackSize;          // 64
inline constexpr int kSaFrameDim = kTowerCount * FrameLayout::kLocal;               // 63
inline constexpr int kSaObservationDim = kSaFrameDim * kStackSize;                  // 126

/// Writes the seven scalars of one local observation: fire position
/// normalized by the world extent (zeros when no fire is observed),
/// temperature normalized to [0,1], then humidity, prep, overcast.
void encode_observation_scalars(const LocalObservation& obs, double world_extent,
                                double* out7);

/// One 32-wide multi-agent frame; see FrameLayout for the slot order.
void encode_frame_ma(const LocalObservation& local,
                     const std::vector<std::optional<BroadcastMessage>>& broadcast_inbox,
                     const std::deque<HelpRequest>& help_inbox, double reserve,
                     double world_extent, Eigen::Ref<Vector> out);

/// One 63-wide single-agent frame: all nine towers' local observations.
void encode_frame_sa(const std::vector<LocalObservation>& locals, double world_extent,
                     Eigen::Ref<Vector> out);

/// The greedy heuristic: support self while reserve allows, otherwise idle.
/// Never requests or answers help.
MaAction greedy_act(double reserve);

// ---------------------------------------------------------------------------
// Policy networks
// ---------------------------------------------------------------------------

/// Common surface for the PPO learner: batched forward producing action
/// logits and value estimates, with gradient accumulation on backward.
class PolicyNet {
 public:
  virtual ~PolicyNet() = default;
  virtual int observation_dim() const = 0;
  virtual ActionLayout action_layout() const = 0;
  /// observations: B x observation_dim. Caches activations for backward.
  virtual void forward(const Matrix& observations, Matrix& logits, Vector& values) = 0;
  /// Uses the cache of the last forward call; accumulates gradients.
  virtual void backward(const Matrix& grad_logits, const Vector& grad_values) = 0;
  virtual std::vector<ParamRef> params() = 0;
  void zero_grad() {
    for (ParamRef& p : params()) p.grad->setZero();
  }
};

/// Shared policy for the nine tower agents: per-frame GNN encoder (stack of
/// two frames, shared weights), MLP trunk, categorical policy head and
/// scalar value head.
class MultiAgentPolicyNet : public PolicyNet {
 public:
  MultiAgentPolicyNet(int hidden_units, int num_layers, std::uint64_t init_seed);

  int observation_dim() const override { return kMaObservationDim; }
  ActionLayout action_layout() const override { return {1, kMaActionCount}; }
  void forward(const Matrix& observations, Matrix& logits, Vector& values) override;
  void backward(const Matrix& grad_logits, const Vector& grad_values) override;
  std::vector<ParamRef> params() override;

  GnnEncoder& encoder() { return encoder_; }

 private:
  GnnEncoder encoder_;
  std::vector<Linear> trunk_;
  Linear policy_head_;
  Linear value_head_;

  GnnEncoder::Cache enc_cache_now_;
  GnnEncoder::Cache enc_cache_prev_;
  Matrix trunk_input_;
  std::vector<Matrix> trunk_pre_;
  std::vector<Matrix> trunk_act_;
};

/// Central controller policy: plain MLP over the 126-wide stacked global
/// observation with 9 x 4 factored action logits.
class SingleAgentPolicyNet : public PolicyNet {
 public:
  SingleAgentPolicyNet(int hidden_units, int num_layers, std::uint64_t init_seed);

  int observation_dim() const override { return kSaObservationDim; }
  ActionLayout action_layout() const override { return {kTowerCount, kSaSubActionCount}; }
  void forward(const Matrix& observations, Matrix& logits, Vector& values) override;
  void backward(const Matrix& grad_logits, const Vector& grad_values) override;
  std::vector<ParamRef> params() override;

 private:
  std::vector<Linear> trunk_;
  Linear policy_head_;
  Linear value_head_;

  Matrix trunk_input_;
  std::vector<Matrix> trunk_pre_;
  std::vector<Matrix> trunk_act_;
};

// ---------------------------------------------------------------------------
// Categorical action distribution over factored logits
// ---------------------------------------------------------------------------

struct ActionSample {
  std::vector<int> action;  // one choice per group
  double log_prob = 0.0;
};

/// Samples each group independently. Throws on non-finite logits.
ActionSample sample_action(const Eigen::RowVectorXd& logits, const ActionLayout& layout,
                           RandomStream& rng);

double action_log_prob(const Eigen::RowVectorXd& logits, const ActionLayout& layout,
                       const std::vector<int>& action);

double action_entropy(const Eigen::RowVectorXd& logits, const ActionLayout& layout);

/// Adds d(loss)/d(logits) for one sample given the coefficients multiplying
/// d(log pi(a)) and d(entropy).
void accumulate_distribution_grad(const Eigen::RowVectorXd& logits, const ActionLayout& layout,
                                  const std::vector<int>& action, double dlogp_coef,
                                  double dentropy_coef, Eigen::Ref<Eigen::RowVectorXd> dlogits);

}  // namespace wildfire
