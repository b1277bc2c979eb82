#pragma once

#include <vector>

#include "wildfire/towers.hpp"

namespace wildfire {

inline constexpr int kTransferTenths = 1;  // every move is exactly 0.1

enum class TransferResult {
  kAccepted,
  kRejectedInsufficientReserve,
  kRejectedInvalidTarget,
  kRejectedReserveNotEmpty,
  kRejectedNoAllocation,
};

inline bool accepted(TransferResult r) { return r == TransferResult::kAccepted; }

/// Per-tower reserve and support bookkeeping in integer tenths, so the
/// global conservation sum is exact. Every owner also records where it
/// placed support value; only the owner may take it back.
class ResourceLedger {
 public:
  explicit ResourceLedger(int tower_count = kTowerCount);

  int tower_count() const { return count_; }

  double reserve(int tower) const { return reserve_[tower] * 0.1; }
  double support(int tower) const { return support_[tower] * 0.1; }
  double allocation(int owner, int target) const { return alloc_at(owner, target) * 0.1; }
  int reserve_tenths(int tower) const { return reserve_[tower]; }
  int support_tenths(int tower) const { return support_[tower]; }
  int allocation_tenths(int owner, int target) const { return alloc_at(owner, target); }

  /// Moves 0.1 from owner's reserve to target's support. Target must be the
  /// owner itself or one of its graph neighbors. Rejections mutate nothing.
  TransferResult distribute(int owner, int target, const NeighborGraph& graph);

  /// Frees 0.1 back into owner's reserve from support the owner previously
  /// placed at from_target. Only legal while the owner's reserve is empty.
  TransferResult deduct(int owner, int from_target);

  /// Sum of all reserve and support, in tenths (conserved: 10 * tower count).
  int total_tenths() const;

 private:
  int alloc_at(int owner, int target) const { return allocation_[owner * count_ + target]; }
  int& alloc_at(int owner, int target) { return allocation_[owner * count_ + target]; }

  int count_;
  std::vector<int> reserve_;
  std::vector<int> support_;
  std::vector<int> allocation_;  // row-major owner x target
};

}  // namespace wildfire
