#pragma once

#include <vector>

#include "conbias/network.hpp"

namespace conbias {

// The two limiting opinions an agent (or society) can settle on.
// y_right - y_left = mu * (2*gamma - 1) always.
struct LimitPair {
  double y_left = 0.0;
  double y_right = 0.0;
};

enum class Region { R, L, W };
enum class Side { Left, Right, Tie };

struct BiasPair {
  double left = 0.0;   // y_left  - theta
  double right = 0.0;  // y_right - theta
};

// y_r = (1-mu)*theta + mu*gamma, y_l = (1-mu)*theta + mu*(1-gamma).
LimitPair limiting_opinions(double theta, double mu, double gamma);

// Limits rewritten as theta plus a bias term: mu*(gamma-theta) on the right,
// mu*((1-gamma)-theta) on the left.
BiasPair bias_decomposition(double theta, double mu, double gamma);

// Which limit sits closer to theta. Tie exactly at theta = 1/2.
Side less_biased_side(double theta);

// Parameter regions: in R (L) the right- (left-) biased opinion emerges with
// probability one; in W either can. Boundaries are strict, so boundary
// points fall in W. For impartial agents (gamma = 1/2) the two limits
// coincide; see impartial_limit.
Region classify_region(double theta, double mu, double gamma);

// (1-mu)*theta + mu/2: the almost-sure limit under impartial interpretation.
double impartial_limit(double theta, double mu);

// Extreme opinions 0 or 1 require both maximal ambiguity and full bias.
bool is_extreme_capable(double mu, double gamma);

// Consensus when signals are ignored (b = 0): the pi-weighted prior masses,
//   ybar = sum_j pi_j alpha_j0 / sum_j pi_j (alpha_j0 + beta_j0).
double degroot_consensus(const std::vector<double>& pi,
                         const std::vector<double>& alpha0,
                         const std::vector<double>& beta0);

double gamma_bar(const std::vector<double>& gammas, const std::vector<double>& pi);

// Networked consensus pair (0 < b < 1): the single-agent limits with gamma
// replaced by the influence-weighted average gamma_bar = sum_j pi_j gamma_j.
LimitPair network_consensus(double theta, double mu, const std::vector<double>& gammas,
                            const std::vector<double>& pi);

}  // namespace conbias
