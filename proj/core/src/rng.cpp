#include "wildfire/rng.hpp"

#include <cmath>
#include <numbers>

namespace wildfire {

namespace {

std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t mix_seed(std::uint64_t value) {
  std::uint64_t state = value;
  return splitmix64_next(state);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t state = base ^ (0x9e3779b97f4a7c15ULL * (salt + 1));
  std::uint64_t a = splitmix64_next(state);
  return splitmix64_next(state) ^ a;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt_a, std::uint64_t salt_b) {
  return derive_seed(derive_seed(base, salt_a), salt_b);
}

RandomStream::RandomStream(std::uint64_t seed) {
  std::uint64_t state = seed;
  for (auto& word : s_) {
    word = splitmix64_next(state);
  }
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

std::uint32_t RandomStream::uniform_int(std::uint32_t bound) {
  // Lemire's multiply-shift; the 2^-64-scale bias is irrelevant here.
  const unsigned __int128 product =
      static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(bound);
  return static_cast<std::uint32_t>(product >> 64);
}

bool RandomStream::bernoulli(double p) { return uniform() < p; }

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

RandomStream::State RandomStream::state() const {
  State out;
  for (int i = 0; i < 4; ++i) out.s[i] = s_[i];
  out.spare = spare_;
  out.has_spare = has_spare_;
  return out;
}

void RandomStream::set_state(const State& state) {
  for (int i = 0; i < 4; ++i) s_[i] = state.s[i];
  spare_ = state.spare;
  has_spare_ = state.has_spare;
}

}  // namespace wildfire
