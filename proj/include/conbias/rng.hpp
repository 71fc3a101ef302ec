#pragma once

#include <array>
#include <cstdint>

namespace conbias::rng {

// Philox-4x64-10 counter-based generator (Salmon, Moraes, Dror, Shaw 2011).
// A pure block function: 256-bit counter + 128-bit key -> 256 random bits.
// Because draws are addressed rather than produced by mutating state, any
// position in any stream can be read in O(1); this is what makes re-using
// the same signal / tie-break / placement randomness across networks and
// partisanship levels structural instead of an accident of call order.
using Counter = std::array<std::uint64_t, 4>;
using Key = std::array<std::uint64_t, 2>;

Counter philox4x64(Counter ctr, Key key);

enum class Role : std::uint32_t {
  Signals = 0,
  TieBreak = 1,
  Placement = 2,
  Generic = 3,
};

// One logical stream, identified by (master seed, stream id, role).
// Streams with distinct ids or roles are statistically independent.
class Stream {
public:
  Stream(std::uint64_t master_seed, std::uint64_t stream_id, Role role);

  // Random access: the index-th 64-bit word / uniform double of the stream.
  std::uint64_t u64_at(std::uint64_t index) const;
  double uniform_at(std::uint64_t index) const;  // U[0,1), 53-bit mantissa

  // Sequential access with block caching (same sequence as u64_at(0,1,...)).
  std::uint64_t next_u64();
  double next_uniform();

  void reset() { cursor_ = 0; block_index_ = ~std::uint64_t{0}; }

private:
  Counter block_at(std::uint64_t block) const;

  Key key_;
  std::uint64_t stream_id_;
  std::uint64_t role_;
  std::uint64_t cursor_ = 0;
  std::uint64_t block_index_ = ~std::uint64_t{0};  // cached block, if any
  Counter cache_{};
};

inline double to_uniform(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace conbias::rng
