#include "wildfire/env.hpp"

#include <limits>
#include <stdexcept>

namespace wildfire {

namespace {

constexpr std::uint64_t kFireStream = 21;

WorldState make_world(const ScenarioConfig& scenario) {
  WorldState world;
  world.scenario = scenario;
  world.terrain = generate_terrain(scenario);
  world.forest = place_forest(world.terrain, scenario);
  world.towers = make_tower_grid(world.terrain);
  world.graph = build_neighborhoods(world.towers);
  world.fire = FireState::initial(world.forest);
  world.ledger = ResourceLedger(kTowerCount);
  return world;
}

}  // namespace

Environment::Environment(const ScenarioConfig& scenario, const EnvConfig& config,
                         std::uint64_t episode_seed)
    : scenario_(scenario),
      config_(config),
      world_(make_world(scenario)),
      spatial_index_(world_.forest, scenario.world_extent),
      comms_(world_.graph),
      fire_rng_(derive_seed(episode_seed, kFireStream)) {
  observations_.resize(kTowerCount);
  performances_.assign(kTowerCount, 0.0);
  approaching_.assign(kTowerCount, false);
  prev_cof_distance_.assign(kTowerCount, -1.0);
  allocation_order_.resize(kTowerCount);
  reward_.egoistic.assign(kTowerCount, 0.0);
  reward_.bonus.assign(kTowerCount, 0.0);
  frames_ = Matrix::Zero(kTowerCount, FrameLayout::kFrame);
  prev_frames_ = Matrix::Zero(kTowerCount, FrameLayout::kFrame);
  sa_frame_ = Vector::Zero(kSaFrameDim);
  sa_prev_frame_ = Vector::Zero(kSaFrameDim);
}

void Environment::begin_step() {
  if (observed_) throw std::logic_error("begin_step called twice without finish_step");
  const GridGeometry geom = scenario_.geometry();
  world_.weather = generate_weather(scenario_.seed, world_.t, geom);

  if (world_.t == 0 && !world_.forest.trees.empty()) {
    world_.fire.ignite(select_ignition(world_.weather, world_.forest, geom), 0);
  }

  comms_.deliver(world_.t);

  for (int i = 0; i < kTowerCount; ++i) {
    observations_[i] =
        observe_local(world_.towers.towers[i], world_.weather, world_.fire, world_.forest,
                      geom, world_.ledger.support(i));
    // Approaching: distance shrank since the previous step, or first sighting.
    if (observations_[i].cof_valid) {
      approaching_[i] = prev_cof_distance_[i] < 0.0 ||
                        observations_[i].cof_distance < prev_cof_distance_[i];
    } else {
      approaching_[i] = false;
    }
  }

  comms_.stage_broadcasts(observations_, world_.t);

  prev_frames_ = frames_;
  sa_prev_frame_ = sa_frame_;
  for (int i = 0; i < kTowerCount; ++i) {
    encode_frame_ma(observations_[i], comms_.broadcast_inbox(i), comms_.help_inbox(i),
                    world_.ledger.reserve(i), scenario_.world_extent, frames_.row(i).transpose());
  }
  encode_frame_sa(observations_, scenario_.world_extent, sa_frame_);
  observed_ = true;
}

Vector Environment::agent_observation(int agent) const {
  Vector out(kMaObservationDim);
  out.head(FrameLayout::kFrame) = frames_.row(agent).transpose();
  out.tail(FrameLayout::kFrame) =
      world_.t == 0 ? Vector::Zero(FrameLayout::kFrame) : prev_frames_.row(agent).transpose();
  return out;
}

Vector Environment::global_observation() const {
  Vector out(kSaObservationDim);
  out.head(kSaFrameDim) = sa_frame_;
  out.tail(kSaFrameDim) = world_.t == 0 ? Vector::Zero(kSaFrameDim) : sa_prev_frame_;
  return out;
}

void Environment::note_rejected() {
  rejected_last_step_ += 1;
  totals_.rejected_actions += 1;
}

void Environment::distribute_and_track(int owner, int target) {
  const TransferResult result = world_.ledger.distribute(owner, target, world_.graph);
  if (!accepted(result)) {
    note_rejected();
    return;
  }
  allocation_order_[owner].push_back(target);
  if (target != owner) {
    // A cross-tower transfer may answer the oldest open request from the
    // receiver; the bonus settles when the support lands next step.
    if (const auto request = comms_.oldest_open_request_from(owner, target)) {
      comms_.note_response_candidate(request->id, owner, world_.t);
    }
  }
}

void Environment::apply_action_ma(int agent, int action) {
  switch (static_cast<MaAction>(action)) {
    case MaAction::kNoOp:
      break;
    case MaAction::kSupportSelf:
      distribute_and_track(agent, agent);
      break;
    case MaAction::kSupportRequester: {
      const auto request = comms_.oldest_request(agent);
      if (!request) {
        note_rejected();
        break;
      }
      distribute_and_track(agent, request->sender);
      break;
    }
    case MaAction::kReclaim: {
      if (allocation_order_[agent].empty()) {
        note_rejected();
        break;
      }
      const int target = allocation_order_[agent].front();
      const TransferResult result = world_.ledger.deduct(agent, target);
      if (accepted(result)) {
        allocation_order_[agent].pop_front();
      } else {
        note_rejected();
      }
      break;
    }
    case MaAction::kSendHelpRequest:
      comms_.send_help_request(agent, world_.t);
      totals_.help_request_count += 1;
      break;
    default:
      throw std::invalid_argument("unknown multi-agent action id");
  }
}

void Environment::apply_action_sa(int tower, int sub_action) {
  switch (static_cast<SaSubAction>(sub_action)) {
    case SaSubAction::kNoOp:
      break;
    case SaSubAction::kSupportSelf:
      distribute_and_track(tower, tower);
      break;
    case SaSubAction::kSupportFireNeighbor: {
      // Nearest neighbor currently observing fire; ties by lower id.
      int best = -1;
      double best_distance = std::numeric_limits<double>::infinity();
      for (int neighbor : world_.graph.neighbors[tower]) {
        if (!observations_[neighbor].cof_valid) continue;
        const double d = horizontal_distance(world_.towers.towers[neighbor].position,
                                             world_.towers.towers[tower].position);
        if (d < best_distance || (d == best_distance && neighbor < best)) {
          best = neighbor;
          best_distance = d;
        }
      }
      if (best < 0) {
        note_rejected();
        break;
      }
      distribute_and_track(tower, best);
      break;
    }
    case SaSubAction::kReclaim: {
      if (allocation_order_[tower].empty()) {
        note_rejected();
        break;
      }
      const int target = allocation_order_[tower].front();
      const TransferResult result = world_.ledger.deduct(tower, target);
      if (accepted(result)) {
        allocation_order_[tower].pop_front();
      } else {
        note_rejected();
      }
      break;
    }
    default:
      throw std::invalid_argument("unknown single-agent sub-action id");
  }
}

const StepReward& Environment::finish_step(const std::vector<int>& actions) {
  if (!observed_) throw std::logic_error("finish_step called before begin_step");
  if (done()) throw std::logic_error("episode already finished");
  if (static_cast<int>(actions.size()) != kTowerCount) {
    throw std::invalid_argument("expected one action per tower");
  }
  rejected_last_step_ = 0;

  // Phase 3: actions in ascending agent id order.
  for (int agent = 0; agent < kTowerCount; ++agent) {
    if (config_.control == ControlMode::kMultiAgent) {
      apply_action_ma(agent, actions[agent]);
    } else {
      apply_action_sa(agent, actions[agent]);
    }
  }

  // Phase 4: fire advance.
  const GridGeometry geom = scenario_.geometry();
  step_fire(world_.fire, world_.forest, spatial_index_, world_.weather, geom, config_.spread,
            fire_rng_);

  // Phase 5: rewards from this step's observations.
  for (int i = 0; i < kTowerCount; ++i) {
    performances_[i] =
        tower_performance(observations_[i], world_.towers.towers[i].observation_radius,
                          approaching_[i], config_.performance);
  }
  const double collective = collective_reward(performances_);
  reward_.collective = collective;
  std::fill(reward_.bonus.begin(), reward_.bonus.end(), 0.0);
  for (int winner : comms_.settle_responses(world_.t, observations_,
                                            config_.help_bonus_requires_fire)) {
    reward_.bonus[winner] += kHelpBonusReward;
    totals_.help_count += 1;
  }
  for (int i = 0; i < kTowerCount; ++i) {
    reward_.egoistic[i] = egoistic_reward(i, world_.ledger, performances_);
  }

  // Bookkeeping.
  double support_total = 0.0;
  for (int i = 0; i < kTowerCount; ++i) {
    totals_.agent_reward[i] += reward_.total(i);
    totals_.tower_performance_sum[i] += performances_[i];
    totals_.performance_sum += performances_[i];
    support_total += world_.ledger.support(i);
  }
  totals_.collective_sum += collective;
  totals_.burning_count_sum += static_cast<long>(world_.fire.burning.size());
  totals_.support_sum += support_total / kTowerCount;

  if (logger_ != nullptr) {
    StepRecord record;
    record.t = world_.t;
    record.burning_count = static_cast<int>(world_.fire.burning.size());
    record.burned_count = world_.fire.burned_count;
    if (!world_.fire.burning.empty()) {
      record.fire_min = Vec2{std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity()};
      record.fire_max = Vec2{-std::numeric_limits<double>::infinity(),
                             -std::numeric_limits<double>::infinity()};
      for (int idx : world_.fire.burning) {
        const Vec3& p = world_.forest.trees[idx].position;
        record.fire_min.x = std::min(record.fire_min.x, p.x);
        record.fire_min.z = std::min(record.fire_min.z, p.z);
        record.fire_max.x = std::max(record.fire_max.x, p.x);
        record.fire_max.z = std::max(record.fire_max.z, p.z);
      }
    }
    for (int i = 0; i < kTowerCount; ++i) {
      record.reserve[i] = world_.ledger.reserve(i);
      record.support[i] = world_.ledger.support(i);
      record.egoistic[i] = reward_.egoistic[i];
      record.bonus[i] = reward_.bonus[i];
      record.tower_performance[i] = performances_[i];
    }
    record.collective = collective;
    record.rejected_actions = rejected_last_step_;
    logger_->on_step(record, comms_.events());
  }
  comms_.clear_events();

  // Roll the previous-distance tracker for the next step's direction bit.
  for (int i = 0; i < kTowerCount; ++i) {
    prev_cof_distance_[i] = observations_[i].cof_valid ? observations_[i].cof_distance : -1.0;
  }

  world_.t += 1;
  observed_ = false;
  return reward_;
}

void run_episode_loop(Environment& env, const ActorFn& actor) {
  while (!env.done()) {
    env.begin_step();
    env.finish_step(actor(env));
  }
}

std::vector<int> greedy_actor(Environment& env) {
  std::vector<int> actions(kTowerCount);
  for (int i = 0; i < kTowerCount; ++i) {
    actions[i] = static_cast<int>(greedy_act(env.world().ledger.reserve(i)));
  }
  return actions;
}

double single_agent_step_reward(const StepReward& reward) {
  double total = reward.collective;
  for (double e : reward.egoistic) total += e;
  return total;
}

}  // namespace wildfire
