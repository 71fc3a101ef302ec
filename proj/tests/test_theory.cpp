#include <doctest.h>

#include <cmath>

#include "conbias/rng.hpp"
#include "conbias/theory.hpp"

using namespace conbias;

TEST_CASE("limiting opinions: worked examples") {
  const LimitPair vaccine = limiting_opinions(0.8, 0.3, 0.6);
  CHECK(vaccine.y_right == doctest::Approx(0.74).epsilon(1e-12));
  CHECK(vaccine.y_left == doctest::Approx(0.68).epsilon(1e-12));

  const LimitPair low = limiting_opinions(0.1, 0.2, 1.0);
  CHECK(low.y_right == doctest::Approx(0.28).epsilon(1e-12));
  CHECK(low.y_left == doctest::Approx(0.08).epsilon(1e-12));

  const LimitPair clean = limiting_opinions(0.37, 0.0, 0.9);
  CHECK(clean.y_left == doctest::Approx(0.37));
  CHECK(clean.y_right == doctest::Approx(0.37));
}

TEST_CASE("gap between limits is mu*(2*gamma - 1)") {
  rng::Stream s(1, 0, rng::Role::Generic);
  for (int k = 0; k < 500; ++k) {
    const double theta = s.next_uniform();
    const double mu = s.next_uniform();
    const double gamma = 0.5 + 0.5 * s.next_uniform();
    const LimitPair lim = limiting_opinions(theta, mu, gamma);
    CHECK(lim.y_right - lim.y_left == doctest::Approx(mu * (2 * gamma - 1)).epsilon(1e-12));
    CHECK(lim.y_left >= 0.0);
    CHECK(lim.y_right <= 1.0);
  }
}

TEST_CASE("bias decomposition") {
  const BiasPair bias = bias_decomposition(0.8, 0.3, 0.6);
  CHECK(bias.right == doctest::Approx(-0.06).epsilon(1e-12));
  CHECK(bias.left == doctest::Approx(-0.12).epsilon(1e-12));
  CHECK(bias_decomposition(0.7, 0.4, 0.7).right == doctest::Approx(0.0));
  // equally biased at theta = 1/2
  for (double gamma : {0.5, 0.7, 1.0})
    for (double mu : {0.1, 0.6, 1.0}) {
      const BiasPair b = bias_decomposition(0.5, mu, gamma);
      CHECK(std::fabs(b.left) == doctest::Approx(std::fabs(b.right)));
    }
}

TEST_CASE("less biased side") {
  CHECK(less_biased_side(0.8) == Side::Right);
  CHECK(less_biased_side(0.2) == Side::Left);
  CHECK(less_biased_side(0.5) == Side::Tie);
}

TEST_CASE("region classification") {
  CHECK(classify_region(0.9, 0.2, 1.0) == Region::R);   // boundary 0.444
  CHECK(classify_region(0.8, 0.6, 1.0) == Region::W);   // boundary 0.375
  CHECK(classify_region(0.1, 0.2, 1.0) == Region::L);
  for (double mu : {0.01, 0.5, 1.0}) CHECK(classify_region(0.5, mu, 0.9) == Region::W);
  // boundary points are in W (strict inequalities); all values exact in binary
  CHECK(classify_region(0.75, 0.5, 0.75) == Region::W);
  CHECK(classify_region(0.75, 0.4999999999, 0.75) == Region::R);
}

TEST_CASE("region tags agree with where both limits fall") {
  rng::Stream s(2, 0, rng::Role::Generic);
  for (int k = 0; k < 2000; ++k) {
    const double theta = s.next_uniform();
    const double mu = s.next_uniform();
    const double gamma = 0.5 + 0.5 * s.next_uniform();
    if (gamma <= 0.5) continue;
    const Region r = classify_region(theta, mu, gamma);
    const LimitPair lim = limiting_opinions(theta, mu, gamma);
    if (lim.y_left > 0.5 && lim.y_right > 0.5)
      CHECK(r == Region::R);
    else if (lim.y_left < 0.5 && lim.y_right < 0.5)
      CHECK(r == Region::L);
    else
      CHECK(r == Region::W);
  }
}

TEST_CASE("impartial limit") {
  CHECK(impartial_limit(0.3, 0.4) == doctest::Approx(0.38).epsilon(1e-12));
  CHECK(impartial_limit(0.5, 0.77) == doctest::Approx(0.5));
  CHECK(impartial_limit(0.9, 1.0) == doctest::Approx(0.5));
  // midpoint of the pair at gamma = 1/2
  const LimitPair lim = limiting_opinions(0.3, 0.4, 0.5);
  CHECK(impartial_limit(0.3, 0.4) == doctest::Approx(0.5 * (lim.y_left + lim.y_right)));
}

TEST_CASE("extreme opinions need mu = gamma = 1") {
  CHECK(is_extreme_capable(1.0, 1.0));
  CHECK_FALSE(is_extreme_capable(0.99, 1.0));
  CHECK_FALSE(is_extreme_capable(1.0, 0.5));
}

TEST_CASE("degroot consensus") {
  CHECK(degroot_consensus({0.25, 0.5, 0.25}, {1, 1, 1}, {1, 1, 1}) ==
        doctest::Approx(0.5));
  // symmetric partisans at the equally weighted endpoints cancel
  CHECK(degroot_consensus({0.25, 0.5, 0.25}, {1, 1, 31}, {31, 1, 1}) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(degroot_consensus({0.25, 0.5, 0.25}, {31, 1, 1}, {1, 1, 31}) ==
        doctest::Approx(0.5).epsilon(1e-12));
  // invariant to scaling all priors by a positive constant
  rng::Stream s(3, 0, rng::Role::Generic);
  for (int k = 0; k < 200; ++k) {
    std::vector<double> pi = {0.2, 0.3, 0.5};
    std::vector<double> a = {1 + 5 * s.next_uniform(), 1 + 5 * s.next_uniform(),
                             1 + 5 * s.next_uniform()};
    std::vector<double> b = {1 + 5 * s.next_uniform(), 1 + 5 * s.next_uniform(),
                             1 + 5 * s.next_uniform()};
    const double base = degroot_consensus(pi, a, b);
    const double c = 0.1 + 10 * s.next_uniform();
    std::vector<double> sa = a, sb = b;
    for (double& v : sa) v *= c;
    for (double& v : sb) v *= c;
    CHECK(degroot_consensus(pi, sa, sb) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("network consensus pair") {
  // line of three, b = 0.5: pi = (1/4, 1/2, 1/4)
  const std::vector<double> pi_line = {0.25, 0.5, 0.25};
  const std::vector<double> gammas = {0.8, 1.0, 0.2};
  CHECK(gamma_bar(gammas, pi_line) == doctest::Approx(0.75));
  const LimitPair cons = network_consensus(0.5, 0.5, gammas, pi_line);
  CHECK(cons.y_right == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(cons.y_left == doctest::Approx(0.375).epsilon(1e-12));

  // triangle: uniform weights
  const std::vector<double> pi_tri(3, 1.0 / 3.0);
  const LimitPair tri = network_consensus(0.5, 0.5, gammas, pi_tri);
  CHECK(tri.y_right == doctest::Approx(0.25 + 1.0 / 3.0));
  CHECK(tri.y_left == doctest::Approx(0.25 + 1.0 / 6.0));

  // homogeneous gammas reduce to the single-agent pair
  const LimitPair single = limiting_opinions(0.8, 0.6, 1.0);
  const LimitPair net = network_consensus(0.8, 0.6, {1.0, 1.0, 1.0}, pi_line);
  CHECK(net.y_left == doctest::Approx(single.y_left));
  CHECK(net.y_right == doctest::Approx(single.y_right));
}
