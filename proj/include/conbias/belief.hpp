#pragma once

#include <optional>

#include "conbias/rng.hpp"

namespace conbias {

// Beta(alpha, beta) belief about the unknown state. Shape parameters start
// at >= 1 and only grow under the update rule, so opinion stays in (0,1).
struct Belief {
  double alpha = 1.0;
  double beta = 1.0;
};

enum class Signal { One, Zero, Ambiguous };

// gamma in [1/2, 1]: probability of reading an ambiguous signal in agreement
// with the current opinion side. 1/2 = impartial, 1 = fully biased.
struct InterpretationProfile {
  double gamma = 1.0;

  bool impartial() const { return gamma == 0.5; }
  bool fully_biased() const { return gamma == 1.0; }
};

// Binary reading of one public signal; exactly one of s0/s1 is set.
struct InterpretedSignal {
  int s0 = 0;
  int s1 = 0;
};

// Posterior mean alpha / (alpha + beta).
double opinion(const Belief& b);

// Precision sigma^-2 = (alpha+beta)^2 (alpha+beta+1) / (alpha*beta).
double precision(const Belief& b);

struct BetaStats {
  double mean;
  std::optional<double> mode;  // nullopt when alpha == beta == 1 (flat density)
  double median;               // (a - 1/3)/(a + b - 2/3), accurate for a,b >= 1
};
BetaStats beta_stats(const Belief& b);

// Public signal process: ambiguous with probability mu, otherwise One with
// probability theta and Zero with probability 1-theta. The single-uniform
// form lets callers share one stream position per period.
Signal signal_from_uniform(double theta, double mu, double v);
Signal draw_signal(double theta, double mu, rng::Stream& stream);

// Reads the period's public signal. Unambiguous signals pass through; an
// ambiguous one is read as 1 iff u <= psi, where
//   psi = gamma * 1{y_prev >= 0.5} + (1-gamma) * 1{y_prev < 0.5}.
// The comparison is non-strict and the boundary y_prev = 0.5 counts as the
// right side; u is the period's tie-break draw, shared across agents unless
// the caller opts into per-agent draws.
InterpretedSignal interpret(Signal s, double y_prev, InterpretationProfile profile,
                            double u);

// Conjugate update: alpha += s1, beta += s0.
Belief bayes_step(const Belief& b, const InterpretedSignal& is);

}  // namespace conbias
