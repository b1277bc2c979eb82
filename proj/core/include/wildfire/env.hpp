#pragma once

#include <array>
#include <deque>
#include <functional>
#include <memory>

#include "wildfire/policy.hpp"
#include "wildfire/reward.hpp"
#include "wildfire/world.hpp"

namespace wildfire {

enum class ControlMode { kMultiAgent, kSingleAgent };

struct EnvConfig {
  int episode_length = 500;
  ControlMode control = ControlMode::kMultiAgent;
  SpreadRules spread;
  bool help_bonus_requires_fire = true;
  PerformanceParams performance;
};

/// Per-step record handed to an optional logger.
struct StepRecord {
  int t = 0;
  int burning_count = 0;
  int burned_count = 0;
  Vec2 fire_min{0, 0};  // frontier bounding box (burning trees)
  Vec2 fire_max{0, 0};
  std::array<double, kTowerCount> reserve{};
  std::array<double, kTowerCount> support{};
  std::array<double, kTowerCount> egoistic{};
  std::array<double, kTowerCount> bonus{};
  std::array<double, kTowerCount> tower_performance{};
  double collective = 0.0;
  int rejected_actions = 0;
};

class StepLogger {
 public:
  virtual ~StepLogger() = default;
  virtual void on_step(const StepRecord& record, const std::vector<CommEvent>& events) = 0;
};

/// One episode of the lookout-tower world. The step loop runs in fixed
/// phases: (1) weather, (2) message delivery + observations (+ignition at
/// t=0), (3) actions in ascending agent id order, (4) fire advance,
/// (5) rewards.
///
/// Each episode owns all of its state and its random stream; concurrency
/// happens across Environment instances, never within one.
class Environment {
 public:
  Environment(const ScenarioConfig& scenario, const EnvConfig& config,
              std::uint64_t episode_seed);

  // CommsState holds a pointer into world_; pinning the instance keeps it valid.
  Environment(const Environment&) = delete;
  Environment& operator=(const Environment&) = delete;

  /// Phases 1-2 for the current step. Callable once per step; also legal at
  /// t == episode_length to expose terminal observations.
  void begin_step();

  /// Phases 3-5. `actions` holds one entry per tower: an MaAction id in
  /// multi-agent mode or an SaSubAction id in single-agent mode.
  const StepReward& finish_step(const std::vector<int>& actions);

  int t() const { return world_.t; }
  bool done() const { return world_.t >= config_.episode_length; }
  bool awaiting_actions() const { return observed_; }

  const WorldState& world() const { return world_; }
  const CommsState& comms() const { return comms_; }
  const EnvConfig& config() const { return config_; }
  const std::vector<LocalObservation>& observations() const { return observations_; }
  const std::vector<double>& tower_performances() const { return performances_; }
  const StepReward& last_reward() const { return reward_; }
  int rejected_actions_last_step() const { return rejected_last_step_; }

  /// Encoded, frame-stacked observation for one tower agent (64 wide).
  Vector agent_observation(int agent) const;
  /// Encoded, frame-stacked global observation (126 wide).
  Vector global_observation() const;

  void set_logger(StepLogger* logger) { logger_ = logger; }

  /// Episode-level tallies, updated every finish_step.
  struct Totals {
    std::array<double, kTowerCount> agent_reward{};  // extrinsic, cumulative
    double performance_sum = 0.0;                    // over towers and steps
    double collective_sum = 0.0;                     // over steps
    std::array<double, kTowerCount> tower_performance_sum{};
    long burning_count_sum = 0;
    double support_sum = 0.0;  // mean support value, summed over steps
    int help_count = 0;
    int help_request_count = 0;
    int rejected_actions = 0;
  };
  const Totals& totals() const { return totals_; }

 private:
  void apply_action_ma(int agent, int action);
  void apply_action_sa(int tower, int sub_action);
  void note_rejected();
  void distribute_and_track(int owner, int target);

  ScenarioConfig scenario_;
  EnvConfig config_;
  WorldState world_;
  TreeSpatialIndex spatial_index_;
  CommsState comms_;
  RandomStream fire_rng_;

  std::vector<LocalObservation> observations_;
  std::vector<double> performances_;
  std::vector<bool> approaching_;
  std::vector<double> prev_cof_distance_;  // negative = no previous observation
  std::vector<std::deque<int>> allocation_order_;  // per owner, oldest target first
  StepReward reward_;
  Totals totals_;
  Matrix frames_;       // kTowerCount x 32, current step
  Matrix prev_frames_;  // previous step (zeros at t = 0)
  Vector sa_frame_;
  Vector sa_prev_frame_;
  bool observed_ = false;
  int rejected_last_step_ = 0;
  StepLogger* logger_ = nullptr;
};

/// Runs a whole episode with `actor` choosing the per-tower action vector.
using ActorFn = std::function<std::vector<int>(Environment&)>;
void run_episode_loop(Environment& env, const ActorFn& actor);

/// An actor for the greedy heuristic baseline (multi-agent decode).
std::vector<int> greedy_actor(Environment& env);

/// Scalar reward of the central controller: the sum of every tower's
/// egoistic share plus the collective reward (once).
double single_agent_step_reward(const StepReward& reward);

}  // namespace wildfire
