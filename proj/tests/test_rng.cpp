#include <doctest.h>

#include <set>

#include "conbias/rng.hpp"

using namespace conbias;

// Known-answer vectors for philox4x64-10 (Random123 reference test set,
// cross-checked against an independent implementation).
TEST_CASE("philox4x64-10 known-answer vectors") {
  const rng::Counter zeros = rng::philox4x64({0, 0, 0, 0}, {0, 0});
  CHECK(zeros[0] == 0x16554d9eca36314cull);
  CHECK(zeros[1] == 0xdb20fe9d672d0fdcull);
  CHECK(zeros[2] == 0xd7e772cee186176bull);
  CHECK(zeros[3] == 0x7e68b68aec7ba23bull);

  const std::uint64_t ff = 0xffffffffffffffffull;
  const rng::Counter ones = rng::philox4x64({ff, ff, ff, ff}, {ff, ff});
  CHECK(ones[0] == 0x87b092c3013fe90bull);
  CHECK(ones[1] == 0x438c3c67be8d0224ull);
  CHECK(ones[2] == 0x9cc7d7c69cd777b6ull);
  CHECK(ones[3] == 0xa09caebf594f0ba0ull);

  const rng::Counter pi =
      rng::philox4x64({0x243f6a8885a308d3ull, 0x13198a2e03707344ull,
                       0xa4093822299f31d0ull, 0x082efa98ec4e6c89ull},
                      {0x452821e638d01377ull, 0xbe5466cf34e90c6cull});
  CHECK(pi[0] == 0xa528f45403e61d95ull);
  CHECK(pi[1] == 0x38c72dbd566e9788ull);
  CHECK(pi[2] == 0xa5a1610e72fd18b5ull);
  CHECK(pi[3] == 0x57bd43b5e52b7fe6ull);
}

TEST_CASE("sequential and random access agree") {
  rng::Stream s(42, 7, rng::Role::Signals);
  for (std::uint64_t i = 0; i < 40; ++i) CHECK(s.next_u64() == s.u64_at(i));
}

TEST_CASE("streams with different roles or ids differ") {
  rng::Stream a(1, 0, rng::Role::Signals);
  rng::Stream b(1, 0, rng::Role::TieBreak);
  rng::Stream c(1, 1, rng::Role::Signals);
  rng::Stream d(2, 0, rng::Role::Signals);
  std::set<std::uint64_t> firsts{a.next_u64(), b.next_u64(), c.next_u64(),
                                 d.next_u64()};
  CHECK(firsts.size() == 4);
}

TEST_CASE("uniforms live in [0,1) and look uniform") {
  rng::Stream s(123, 0, rng::Role::Generic);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = s.next_uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}
