#include "conbias/theory.hpp"

#include <stdexcept>

namespace conbias {

LimitPair limiting_opinions(double theta, double mu, double gamma) {
  return {(1.0 - mu) * theta + mu * (1.0 - gamma), (1.0 - mu) * theta + mu * gamma};
}

BiasPair bias_decomposition(double theta, double mu, double gamma) {
  return {mu * ((1.0 - gamma) - theta), mu * (gamma - theta)};
}

Side less_biased_side(double theta) {
  if (theta > 0.5) return Side::Right;
  if (theta < 0.5) return Side::Left;
  return Side::Tie;
}

Region classify_region(double theta, double mu, double gamma) {
  if (theta > 0.5 && mu < (theta - 0.5) / (gamma + theta - 1.0)) return Region::R;
  if (theta < 0.5 && mu < (theta - 0.5) / (theta - gamma)) return Region::L;
  return Region::W;
}

double impartial_limit(double theta, double mu) {
  return (1.0 - mu) * theta + mu * 0.5;
}

bool is_extreme_capable(double mu, double gamma) {
  return mu == 1.0 && gamma == 1.0;
}

double degroot_consensus(const std::vector<double>& pi,
                         const std::vector<double>& alpha0,
                         const std::vector<double>& beta0) {
  if (pi.size() != alpha0.size() || pi.size() != beta0.size())
    throw std::invalid_argument("degroot_consensus: size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < pi.size(); ++j) {
    num += pi[j] * alpha0[j];
    den += pi[j] * (alpha0[j] + beta0[j]);
  }
  return num / den;
}

double gamma_bar(const std::vector<double>& gammas, const std::vector<double>& pi) {
  if (gammas.size() != pi.size())
    throw std::invalid_argument("gamma_bar: size mismatch");
  double acc = 0.0;
  for (std::size_t j = 0; j < pi.size(); ++j) acc += pi[j] * gammas[j];
  return acc;
}

LimitPair network_consensus(double theta, double mu, const std::vector<double>& gammas,
                            const std::vector<double>& pi) {
  return limiting_opinions(theta, mu, gamma_bar(gammas, pi));
}

}  // namespace conbias
