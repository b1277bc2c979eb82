#include "wildfire/resources.hpp"

#include <numeric>

namespace wildfire {

ResourceLedger::ResourceLedger(int tower_count)
    : count_(tower_count),
      reserve_(tower_count, 10),
      support_(tower_count, 0),
      allocation_(static_cast<std::size_t>(tower_count) * tower_count, 0) {}

TransferResult ResourceLedger::distribute(int owner, int target, const NeighborGraph& graph) {
  if (target != owner && !graph.is_neighbor(owner, target)) {
    return TransferResult::kRejectedInvalidTarget;
  }
  if (reserve_[owner] < kTransferTenths) {
    return TransferResult::kRejectedInsufficientReserve;
  }
  reserve_[owner] -= kTransferTenths;
  support_[target] += kTransferTenths;
  alloc_at(owner, target) += kTransferTenths;
  return TransferResult::kAccepted;
}

TransferResult ResourceLedger::deduct(int owner, int from_target) {
  if (reserve_[owner] >= kTransferTenths) {
    return TransferResult::kRejectedReserveNotEmpty;
  }
  if (alloc_at(owner, from_target) < kTransferTenths) {
    return TransferResult::kRejectedNoAllocation;
  }
  support_[from_target] -= kTransferTenths;
  alloc_at(owner, from_target) -= kTransferTenths;
  reserve_[owner] += kTransferTenths;
  return TransferResult::kAccepted;
}

int ResourceLedger::total_tenths() const {
  return std::accumulate(reserve_.begin(), reserve_.end(), 0) +
         std::accumulate(support_.begin(), support_.end(), 0);
}

}  // namespace wildfire
