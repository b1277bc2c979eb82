#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "wildfire/towers.hpp"

namespace wildfire {

inline constexpr int kHelpInboxCapacity = 3;
inline constexpr int kHelpRequestTtlSteps = 5;

/// Snapshot of the sender's local observation, delivered one step later.
struct BroadcastMessage {
  LocalObservation observation;
  int sender = -1;
  int sent_at = -1;
};

struct HelpRequest {
  int id = -1;
  int sender = -1;
  int sent_at = -1;
};

/// Record of a cross-tower distribute that may earn the help bonus once its
/// support lands (one step after the action).
struct ResponseCandidate {
  int request_id = -1;
  int responder = -1;
  int action_step = -1;
};

/// Log row for the per-step communication trace.
struct CommEvent {
  enum class Kind { kBroadcast, kHelpRequest, kResponseBonus };
  Kind kind;
  int sender = -1;
  int t_sent = -1;
  std::vector<int> receivers;
  int responder = -1;
};

/// Owns both protocol strands for one episode: neighbor observation
/// broadcasting and help requests, with exact one-step delivery latency.
///
/// A tower's broadcast inbox carries the latest delivered observation of each
/// of its own 3 graph neighbors; help requests travel along the sender's
/// out-edges. Messages staged at t become readable at t+1.
class CommsState {
 public:
  explicit CommsState(const NeighborGraph& graph);

  /// Phase boundary: everything staged during step t-1 becomes readable.
  void deliver(int t);

  /// Stages each tower's observation of its neighbors for delivery at t+1.
  void stage_broadcasts(const std::vector<LocalObservation>& observations, int t);

  /// Stages a help request to all of sender's neighbors, readable at t+1.
  /// Returns the new request id.
  int send_help_request(int sender, int t);

  /// Readable inbox of `tower`: slot k mirrors neighbors(tower)[k]; empty
  /// optional before that neighbor's first delivery.
  const std::vector<std::optional<BroadcastMessage>>& broadcast_inbox(int tower) const {
    return broadcast_inbox_[tower];
  }

  /// Readable help requests at `tower`, oldest first (bounded, aged out).
  const std::deque<HelpRequest>& help_inbox(int tower) const { return help_inbox_[tower]; }

  /// Oldest readable, still unanswered request from `sender` sitting in
  /// `responder`'s inbox.
  std::optional<HelpRequest> oldest_open_request_from(int responder, int sender) const;

  /// Oldest readable request in `tower`'s inbox (response target selection).
  std::optional<HelpRequest> oldest_request(int tower) const;

  /// Notes an accepted cross-tower distribute for bonus settlement at t+1.
  void note_response_candidate(int request_id, int responder, int action_step);

  /// Settles candidates whose support lands at step t: the first responder of
  /// a still-open request earns the bonus iff the requester currently
  /// observes fire (when require_fire). Returns bonus-earning tower ids.
  std::vector<int> settle_responses(int t, const std::vector<LocalObservation>& observations,
                                    bool require_fire);

  bool request_answered(int request_id) const;
  std::optional<int> first_responder(int request_id) const;

  const std::vector<CommEvent>& events() const { return events_; }
  void clear_events() { events_.clear(); }

 private:
  void expire_requests(int t);

  const NeighborGraph* graph_;
  int tower_count_;
  int next_request_id_ = 0;

  std::vector<std::vector<std::optional<BroadcastMessage>>> broadcast_inbox_;
  std::vector<std::vector<std::optional<BroadcastMessage>>> staged_broadcasts_;
  std::vector<std::deque<HelpRequest>> help_inbox_;
  std::vector<std::vector<HelpRequest>> staged_requests_;
  std::vector<ResponseCandidate> pending_candidates_;
  std::vector<int> responder_by_request_;  // -1 while unanswered
  std::vector<int> request_sender_;
  std::vector<CommEvent> events_;
};

}  // namespace wildfire
