#include "wildfire/comms.hpp"

#include <algorithm>

namespace wildfire {

CommsState::CommsState(const NeighborGraph& graph)
    : graph_(&graph), tower_count_(static_cast<int>(graph.neighbors.size())) {
  broadcast_inbox_.resize(tower_count_);
  staged_broadcasts_.resize(tower_count_);
  help_inbox_.resize(tower_count_);
  staged_requests_.resize(tower_count_);
  for (int i = 0; i < tower_count_; ++i) {
    broadcast_inbox_[i].resize(graph.neighbors[i].size());
    staged_broadcasts_[i].resize(graph.neighbors[i].size());
  }
}

void CommsState::deliver(int t) {
  for (int tower = 0; tower < tower_count_; ++tower) {
    for (std::size_t slot = 0; slot < staged_broadcasts_[tower].size(); ++slot) {
      if (staged_broadcasts_[tower][slot]) {
        broadcast_inbox_[tower][slot] = std::move(staged_broadcasts_[tower][slot]);
        staged_broadcasts_[tower][slot].reset();
      }
    }
    for (const HelpRequest& request : staged_requests_[tower]) {
      help_inbox_[tower].push_back(request);
      while (static_cast<int>(help_inbox_[tower].size()) > kHelpInboxCapacity) {
        help_inbox_[tower].pop_front();  // overflow drops the oldest
      }
    }
    staged_requests_[tower].clear();
  }
  expire_requests(t);
}

void CommsState::expire_requests(int t) {
  for (auto& inbox : help_inbox_) {
    while (!inbox.empty() && t - inbox.front().sent_at > kHelpRequestTtlSteps) {
      inbox.pop_front();
    }
  }
}

void CommsState::stage_broadcasts(const std::vector<LocalObservation>& observations, int t) {
  for (int tower = 0; tower < tower_count_; ++tower) {
    const auto& neighbors = graph_->neighbors[tower];
    for (std::size_t slot = 0; slot < neighbors.size(); ++slot) {
      const int source = neighbors[slot];
      staged_broadcasts_[tower][slot] = BroadcastMessage{observations[source], source, t};
    }
  }
}

int CommsState::send_help_request(int sender, int t) {
  const int id = next_request_id_++;
  responder_by_request_.push_back(-1);
  request_sender_.push_back(sender);
  const auto& receivers = graph_->neighbors[sender];
  for (int receiver : receivers) {
    staged_requests_[receiver].push_back(HelpRequest{id, sender, t});
  }
  events_.push_back(CommEvent{CommEvent::Kind::kHelpRequest, sender, t,
                              {receivers.begin(), receivers.end()}, -1});
  return id;
}

std::optional<HelpRequest> CommsState::oldest_open_request_from(int responder,
                                                                int sender) const {
  for (const HelpRequest& request : help_inbox_[responder]) {
    if (request.sender == sender && responder_by_request_[request.id] < 0) {
      return request;
    }
  }
  return std::nullopt;
}

std::optional<HelpRequest> CommsState::oldest_request(int tower) const {
  if (help_inbox_[tower].empty()) return std::nullopt;
  return help_inbox_[tower].front();
}

void CommsState::note_response_candidate(int request_id, int responder, int action_step) {
  pending_candidates_.push_back(ResponseCandidate{request_id, responder, action_step});
}

std::vector<int> CommsState::settle_responses(int t,
                                              const std::vector<LocalObservation>& observations,
                                              bool require_fire) {
  std::vector<int> awarded;
  std::vector<ResponseCandidate> not_yet_landed;
  for (const ResponseCandidate& candidate : pending_candidates_) {
    if (candidate.action_step + 1 > t) {
      not_yet_landed.push_back(candidate);
      continue;
    }
    if (responder_by_request_[candidate.request_id] >= 0) continue;  // answered already
    const int sender = request_sender_[candidate.request_id];
    const bool helps = !require_fire || observations[sender].cof_valid;
    if (!helps) continue;  // request stays open for later responders
    responder_by_request_[candidate.request_id] = candidate.responder;
    awarded.push_back(candidate.responder);
    events_.push_back(
        CommEvent{CommEvent::Kind::kResponseBonus, sender, t, {}, candidate.responder});
  }
  pending_candidates_ = std::move(not_yet_landed);
  return awarded;
}

bool CommsState::request_answered(int request_id) const {
  return responder_by_request_[request_id] >= 0;
}

std::optional<int> CommsState::first_responder(int request_id) const {
  const int responder = responder_by_request_[request_id];
  if (responder < 0) return std::nullopt;
  return responder;
}

}  // namespace wildfire
