#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "wildfire/env.hpp"

namespace wildfire {

/// One row per finished episode. Column schema documented in the README.
struct EpisodeMetrics {
  long episode = 0;
  std::uint64_t env_seed = 0;
  int difficulty = 1;
  int steps = 0;
  double mean_reward = 0.0;  // per-controller mean cumulative extrinsic reward
  std::array<double, kTowerCount> agent_reward{};
  double mean_performance = 0.0;
  double mean_collective_performance = 0.0;
  double mean_fire_count = 0.0;
  int trees_ignited = 0;
  int trees_burned = 0;
  int help_count = 0;
  int help_request_count = 0;
  double mean_resource_level = 0.0;
  int rejected_actions = 0;
  std::array<double, kTowerCount> tower_performance{};
};

/// Collects episode metrics from a finished Environment.
EpisodeMetrics summarize_episode(const Environment& env, long episode_index,
                                 std::uint64_t env_seed, int difficulty,
                                 ControlMode control);

std::string format_double(double value);

class EpisodeCsvWriter {
 public:
  explicit EpisodeCsvWriter(const std::string& path);
  void append(const EpisodeMetrics& metrics);

 private:
  std::ofstream out_;
};

/// Detailed per-step trace (fire snapshot, ledger, reward breakdown) plus a
/// communication event log; used by replay and detailed evaluation.
class StepCsvLogger : public StepLogger {
 public:
  StepCsvLogger(const std::string& steps_path, const std::string& comms_path);
  void on_step(const StepRecord& record, const std::vector<CommEvent>& events) override;
  void set_episode(long episode) { episode_ = episode; }

 private:
  std::ofstream steps_;
  std::ofstream comms_;
  long episode_ = 0;
};

/// Training summary rows, one every summary_freq collected steps.
struct SummaryRow {
  long step = 0;
  long episodes = 0;
  double mean_episode_reward = 0.0;  // over episodes since the last row
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double mean_ratio = 0.0;
  double clip_fraction = 0.0;
  double learning_rate = 0.0;
  double icm_forward_loss = 0.0;
  double icm_inverse_loss = 0.0;
  int lesson = 1;
  double smoothed_reward = 0.0;
};

class SummaryCsvWriter {
 public:
  explicit SummaryCsvWriter(const std::string& path);
  void append(const SummaryRow& row);

 private:
  std::ofstream out_;
};

}  // namespace wildfire
