#pragma once

#include <cstdint>

namespace kendall {

// Deterministic random stream (xoshiro256++ with splitmix64 seeding). A
// stream is exclusively owned by one worker; parallel simulations use
// distinct stream indices off one master seed and never share a stream.
// Identical (master_seed, stream_index) pairs yield identical draw sequences.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : master_seed_(master_seed), stream_index_(stream_index) {
    std::uint64_t z = master_seed ^ (0x9E3779B97F4A7C15ull * (stream_index + 0x632BE59BD9B4E019ull));
    for (auto& word : state_) word = splitmix64(z);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as input to inverse transforms with a pole at 0.
  double uniform_open01() { return 1.0 - uniform01(); }

  bool coin() { return (next_u64() >> 63) != 0; }

  double sign() { return coin() ? 1.0 : -1.0; }

 private:
  static std::uint64_t splitmix64(std::uint64_t& z) {
    z += 0x9E3779B97F4A7C15ull;
    std::uint64_t x = z;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t state_[4];
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
};

}  // namespace kendall
