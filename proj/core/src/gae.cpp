#include "wildfire/gae.hpp"

#include <stdexcept>

namespace wildfire {

GaeResult compute_gae(std::span<const double> rewards, std::span<const double> values,
                      double bootstrap_value, double gamma, double lambda) {
  if (rewards.size() != values.size()) {
    throw std::invalid_argument("compute_gae: rewards/values length mismatch");
  }
  const int n = static_cast<int>(rewards.size());
  GaeResult out;
  out.advantages.resize(n);
  out.returns.resize(n);
  double carry = 0.0;
  for (int t = n - 1; t >= 0; --t) {
    const double next_value = t == n - 1 ? bootstrap_value : values[t + 1];
    const double delta = rewards[t] + gamma * next_value - values[t];
    carry = delta + gamma * lambda * carry;
    out.advantages[t] = carry;
    out.returns[t] = carry + values[t];
  }
  return out;
}

}  // namespace wildfire
