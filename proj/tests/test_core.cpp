#include <doctest.h>

#include <cmath>

#include "conbias/belief.hpp"

using namespace conbias;

namespace {

// Quadrature oracle for Beta moments: Simpson's rule on the normalized
// density. The shapes used below are small integers, so the integrand is a
// polynomial and the rule is effectively exact.
double beta_moment(double alpha, double beta, int power) {
  const double lognorm =
      std::lgamma(alpha + beta) - std::lgamma(alpha) - std::lgamma(beta);
  const int segments = 20000;
  const double h = 1.0 / segments;
  auto f = [&](double t) {
    if (t <= 0.0 || t >= 1.0) {
      // endpoint values: zero unless the density is positive there
      if (alpha == 1.0 && t == 0.0) return power == 0 ? std::exp(lognorm) : 0.0;
      if (beta == 1.0 && t == 1.0)
        return std::exp(lognorm + power * std::log(t > 0 ? t : 1.0));
      return 0.0;
    }
    return std::exp(lognorm + (alpha - 1.0) * std::log(t) +
                    (beta - 1.0) * std::log1p(-t) + power * std::log(t));
  };
  double acc = f(0.0) + f(1.0);
  for (int i = 1; i < segments; ++i) acc += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

double precision_oracle(double alpha, double beta) {
  const double m1 = beta_moment(alpha, beta, 1);
  const double m2 = beta_moment(alpha, beta, 2);
  return 1.0 / (m2 - m1 * m1);
}

}  // namespace

TEST_CASE("opinion is the posterior mean") {
  CHECK(opinion({1, 1}) == doctest::Approx(0.5));
  CHECK(opinion({31, 1}) == doctest::Approx(31.0 / 32.0));  // rightist, tau = 30
  CHECK(opinion({1, 31}) == doctest::Approx(1.0 / 32.0));   // leftist, tau = 30
}

TEST_CASE("precision matches the definitional formula and quadrature") {
  CHECK(precision({1, 1}) == doctest::Approx(12.0));
  CHECK(precision({1, 2}) == doctest::Approx(18.0));
  CHECK(precision({2, 2}) == doctest::Approx(20.0));
  CHECK(precision({1, 1}) == doctest::Approx(precision_oracle(1, 1)).epsilon(1e-8));
  CHECK(precision({1, 2}) == doctest::Approx(precision_oracle(1, 2)).epsilon(1e-8));
  CHECK(precision({2, 2}) == doctest::Approx(precision_oracle(2, 2)).epsilon(1e-8));
  CHECK(precision({4, 7}) == doctest::Approx(precision_oracle(4, 7)).epsilon(1e-8));
}

TEST_CASE("beta_stats: mean, mode cases, median approximation") {
  const BetaStats sym = beta_stats({2, 2});
  CHECK(sym.mean == doctest::Approx(0.5));
  REQUIRE(sym.mode.has_value());
  CHECK(*sym.mode == doctest::Approx(0.5));
  CHECK(sym.median == doctest::Approx(0.5));

  CHECK(beta_stats({1, 5}).mode.value() == doctest::Approx(0.0));
  CHECK(beta_stats({5, 1}).mode.value() == doctest::Approx(1.0));
  CHECK_FALSE(beta_stats({1, 1}).mode.has_value());  // flat density

  // mode < median < mean whenever 1 < alpha < beta
  rng::Stream s(5, 0, rng::Role::Generic);
  for (int k = 0; k < 200; ++k) {
    const double a = 1.0 + 9.0 * s.next_uniform() + 1e-3;
    const double b = a + 9.0 * s.next_uniform() + 1e-3;
    const BetaStats st = beta_stats({a, b});
    CHECK(st.mode.value() < st.median);
    CHECK(st.median < st.mean);
  }
}

TEST_CASE("signal process frequencies") {
  rng::Stream s(11, 0, rng::Role::Generic);
  for (int k = 0; k < 10000; ++k)
    CHECK(draw_signal(0.3, 0.0, s) != Signal::Ambiguous);
  for (int k = 0; k < 10000; ++k)
    CHECK(draw_signal(0.3, 1.0, s) == Signal::Ambiguous);

  long ones = 0, zeros = 0;
  for (long k = 0; k < 1000000; ++k) {
    const Signal sig = draw_signal(0.8, 0.6, s);
    if (sig == Signal::One) ++ones;
    if (sig == Signal::Zero) ++zeros;
  }
  const double frac_unambiguous = double(ones + zeros) / 1e6;
  CHECK(frac_unambiguous == doctest::Approx(0.4).epsilon(0.01));
  CHECK(double(ones) / double(ones + zeros) == doctest::Approx(0.8).epsilon(0.0025));
}

TEST_CASE("interpret: pass-through and confirmation rule") {
  const InterpretationProfile biased{1.0};
  for (double u : {0.0, 0.3, 1.0}) {
    CHECK(interpret(Signal::One, 0.1, biased, u).s1 == 1);
    CHECK(interpret(Signal::Zero, 0.9, biased, u).s0 == 1);
  }
  // fully biased agent above 0.5: psi = 1, every u goes right
  for (double u : {0.0, 0.5, 1.0})
    CHECK(interpret(Signal::Ambiguous, 0.7, biased, u).s1 == 1);
  // fully biased agent below 0.5: psi = 0, only u = 0 can go right
  for (double u : {1e-12, 0.5, 1.0})
    CHECK(interpret(Signal::Ambiguous, 0.3, biased, u).s0 == 1);
  CHECK(interpret(Signal::Ambiguous, 0.3, biased, 0.0).s1 == 1);  // u <= psi non-strict

  // boundary opinion counts as the right side
  CHECK(interpret(Signal::Ambiguous, 0.5, {0.8}, 0.6).s1 == 1);
  CHECK(interpret(Signal::Ambiguous, 0.5, {0.8}, 0.9).s0 == 1);

  // deterministic in its inputs
  const InterpretedSignal a = interpret(Signal::Ambiguous, 0.42, {0.7}, 0.33);
  const InterpretedSignal b = interpret(Signal::Ambiguous, 0.42, {0.7}, 0.33);
  CHECK(a.s0 == b.s0);
  CHECK(a.s1 == b.s1);
}

TEST_CASE("interpret: every reading is one-hot") {
  rng::Stream s(3, 0, rng::Role::Generic);
  for (int k = 0; k < 5000; ++k) {
    const Signal sig = draw_signal(s.next_uniform(), s.next_uniform(), s);
    const InterpretedSignal is =
        interpret(sig, s.next_uniform(), {0.5 + 0.5 * s.next_uniform()},
                  s.next_uniform());
    CHECK(is.s0 + is.s1 == 1);
  }
}

TEST_CASE("impartial agents read ambiguity as a coin flip") {
  rng::Stream s(17, 0, rng::Role::Generic);
  long ones = 0;
  const long n = 100000;
  for (long k = 0; k < n; ++k) {
    const double y = s.next_uniform();
    ones += interpret(Signal::Ambiguous, y, {0.5}, s.next_uniform()).s1;
  }
  CHECK(double(ones) / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("bayes_step: conjugate update") {
  const Belief up = bayes_step({1, 1}, {0, 1});
  CHECK(up.alpha == 2);
  CHECK(up.beta == 1);
  CHECK(opinion(up) == doctest::Approx(2.0 / 3.0));
  const Belief down = bayes_step({1, 1}, {1, 0});
  CHECK(opinion(down) == doctest::Approx(1.0 / 3.0));

  Belief b{1, 1};
  for (int t = 1; t <= 500; ++t) {
    b = bayes_step(b, {0, 1});
    CHECK(b.alpha + b.beta == doctest::Approx(2.0 + t));  // mass grows by 1
    CHECK(opinion(b) == doctest::Approx((1.0 + t) / (2.0 + t)));
  }
  CHECK(opinion(b) > 0.99);
  CHECK(opinion(b) < 1.0);  // strictly inside (0,1) at any finite t
}
