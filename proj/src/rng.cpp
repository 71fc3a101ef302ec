#include "conbias/rng.hpp"

namespace conbias::rng {

namespace {

constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kMult1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

inline Counter round_once(const Counter& c, const Key& k) {
  std::uint64_t hi0, lo0, hi1, lo1;
  mulhilo(kMult0, c[0], hi0, lo0);
  mulhilo(kMult1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

// splitmix64 finalizer; used only to decorrelate the user-facing seed
// from the Philox key so that seeds 0,1,2,... give unrelated keys.
inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

Counter philox4x64(Counter ctr, Key key) {
  for (int r = 0; r < 9; ++r) {
    ctr = round_once(ctr, key);
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return round_once(ctr, key);
}

Stream::Stream(std::uint64_t master_seed, std::uint64_t stream_id, Role role)
    : key_{master_seed, mix(master_seed)},
      stream_id_(stream_id),
      role_(static_cast<std::uint64_t>(role)) {}

Counter Stream::block_at(std::uint64_t block) const {
  return philox4x64({block, stream_id_, role_, 0}, key_);
}

std::uint64_t Stream::u64_at(std::uint64_t index) const {
  const Counter out = block_at(index >> 2);
  return out[index & 3];
}

double Stream::uniform_at(std::uint64_t index) const {
  return to_uniform(u64_at(index));
}

std::uint64_t Stream::next_u64() {
  const std::uint64_t block = cursor_ >> 2;
  if (block != block_index_) {
    cache_ = block_at(block);
    block_index_ = block;
  }
  return cache_[cursor_++ & 3];
}

double Stream::next_uniform() { return to_uniform(next_u64()); }

}  // namespace conbias::rng
