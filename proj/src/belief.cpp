#include "conbias/belief.hpp"

namespace conbias {

double opinion(const Belief& b) { return b.alpha / (b.alpha + b.beta); }

double precision(const Belief& b) {
  const double s = b.alpha + b.beta;
  return s * s * (s + 1.0) / (b.alpha * b.beta);
}

BetaStats beta_stats(const Belief& b) {
  BetaStats st{};
  st.mean = opinion(b);
  st.median = (b.alpha - 1.0 / 3.0) / (b.alpha + b.beta - 2.0 / 3.0);
  if (b.alpha > 1.0 && b.beta > 1.0) {
    st.mode = (b.alpha - 1.0) / (b.alpha + b.beta - 2.0);
  } else if (b.alpha == 1.0 && b.beta > 1.0) {
    st.mode = 0.0;
  } else if (b.alpha > 1.0 && b.beta == 1.0) {
    st.mode = 1.0;
  }
  // alpha == beta == 1: density is flat, every value is a mode.
  return st;
}

Signal signal_from_uniform(double theta, double mu, double v) {
  if (v < mu) return Signal::Ambiguous;
  return (v < mu + (1.0 - mu) * theta) ? Signal::One : Signal::Zero;
}

Signal draw_signal(double theta, double mu, rng::Stream& stream) {
  return signal_from_uniform(theta, mu, stream.next_uniform());
}

InterpretedSignal interpret(Signal s, double y_prev, InterpretationProfile profile,
                            double u) {
  switch (s) {
    case Signal::One:
      return {0, 1};
    case Signal::Zero:
      return {1, 0};
    case Signal::Ambiguous: {
      const double psi = (y_prev >= 0.5) ? profile.gamma : 1.0 - profile.gamma;
      return (u <= psi) ? InterpretedSignal{0, 1} : InterpretedSignal{1, 0};
    }
  }
  return {1, 0};  // unreachable
}

Belief bayes_step(const Belief& b, const InterpretedSignal& is) {
  return {b.alpha + is.s1, b.beta + is.s0};
}

}  // namespace conbias
