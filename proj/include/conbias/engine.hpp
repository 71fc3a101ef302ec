#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conbias/belief.hpp"
#include "conbias/network.hpp"
#include "conbias/theory.hpp"

namespace conbias {

// One simulated society run. gammas may hold a single entry (applied to all
// agents) or one entry per agent. epsilon <= 0 selects the default rule:
// one fifth of the consensus gap mu*(2*gamma_bar - 1), with a 0.02 floor for
// degenerate gaps.
struct TrialConfig {
  std::string net_label = "B";
  double theta = 0.8;
  double mu = 0.6;
  double b = 0.5;
  std::vector<double> gammas = {1.0};
  int tau_left = 0;
  int tau_right = 0;
  long horizon = 700;
  std::uint64_t seed = 0;
  double epsilon = -1.0;
  bool per_agent_u = false;
};

double default_epsilon(double mu, double gbar);
double resolve_epsilon(const TrialConfig& cfg, double gbar);
std::vector<double> expand_gammas(const TrialConfig& cfg, int n);

// Partisan node ids; -1 when none were placed (n = 1).
struct Placement {
  int left = -1;
  int right = -1;
  bool placed() const { return left >= 0; }
};

struct SocietyState {
  std::vector<Belief> agents;
  long period = 0;
};

// Everyone starts from the uniform prior (1,1). On networks with n >= 2 two
// distinct nodes are drawn from the placement stream (uniformly over ordered
// pairs) and receive the leftist (1, 1+tau_l) and rightist (1+tau_r, 1)
// priors. The draw happens even when tau = 0 so that the same positions --
// and the same downstream randomness -- are used at every partisanship
// level.
SocietyState init_society(const TrialConfig& cfg, const Network& net,
                          rng::Stream& placement_stream, Placement& placement);

// One period: every agent reads the same public signal with its own psi,
// then parameters mix through the network:
//   alpha' = W alpha + b s1,  beta' = W beta + b s0.
// us holds either one shared tie-break draw or one per agent.
void step(SocietyState& state, const MixingMatrix& mix, Signal signal,
          std::span<const double> us, std::span<const double> gammas,
          std::vector<InterpretedSignal>* interpreted = nullptr);

// Closed-form forward iteration
//   alpha_t = W^t alpha_0 + sum_{k=0}^{t-1} W^k B s1_{t-k}
// from a recorded history of per-agent interpreted signals. Serves as an
// independent oracle for repeated step().
SocietyState forward_iterate(const SocietyState& initial, const MixingMatrix& mix,
                             const std::vector<std::vector<InterpretedSignal>>& history);

enum class Classification { LessBiased, MoreBiased, Unresolved };
const char* to_string(Classification c);

struct OutcomeReadout {
  std::optional<Classification> classification;
  double mean_opinion = 0.0;
  double spread = 0.0;    // max - min final opinion across agents
  double distance = 0.0;  // to the nearest consensus target
  LimitPair targets;      // network consensus pair for this trial
};

// Classifies the run against the consensus pair from network_consensus.
// theta = 1/2 has no less-biased side and is rejected.
OutcomeReadout classify_outcome(const SocietyState& final_state,
                                const TrialConfig& cfg,
                                const std::vector<double>& pi);

struct Covariates {
  int fi = -1;
  int om = -1;
  int pca = -1;
};

int first_impression(Signal first, double theta);

// OM: the two partisans are adjacent. PCA: the partisan aligned with the
// true state's side has strictly higher degree (ties count as 0).
Covariates extract_covariates(const Placement& placement, const Network& net,
                              Signal first_signal, double theta);

struct TrialOutcome {
  OutcomeReadout readout;
  std::vector<double> final_opinions;
  Covariates covariates;
  Placement placement;
  int deg_left = -1;
  int deg_right = -1;
  Signal first_signal = Signal::Ambiguous;
};

// Optional capture of a run's internals (oracle tests, --trace).
struct TrialRecord {
  std::vector<Signal> signals;
  std::vector<std::vector<InterpretedSignal>> interpreted;  // [t][agent]
  std::vector<std::vector<double>> opinions;                // [t][agent], t=0..T
  SocietyState initial;
};

// Runs one trial with streams derived from (master seed, trial index).
// Signal draw t comes from stream position t-1 and tie-break draws from
// position t-1 (or (t-1)*n+i per agent), so two trials with equal seed and
// index consume identical randomness regardless of the network they run on.
TrialOutcome run_trial(const TrialConfig& cfg, const Network& net,
                       const MixingMatrix& mix, const std::vector<double>& pi,
                       std::uint64_t trial_index, TrialRecord* record = nullptr);

// Convenience: builds network/mixing/pi from cfg.
TrialOutcome run_trial(const TrialConfig& cfg, TrialRecord* record = nullptr);

// Long-run influence weights used for classification targets: the stationary
// distribution of W for b < 1. At b = 1 agents decouple and no unique pi
// exists; uniform weights are used so the homogeneous-gamma targets stay the
// single-agent pair.
std::vector<double> influence_weights(const Network& net, const MixingMatrix& mix);

// ---------------------------------------------------------------------------
// Monte Carlo sweeps

struct SweepConfig {
  std::vector<std::string> nets = {"SA", "A", "B", "C", "D", "E", "F", "G", "H"};
  std::vector<int> taus = {0, 1, 10, 30};
  long trials = 21040;
  long horizon = 700;
  double mu = 0.6;
  double b = 0.5;
  double gamma = 1.0;
  std::vector<double> thetas = {0.2, 0.8};  // deterministic alternation
  double epsilon = -1.0;
  std::uint64_t master_seed = 0;
  int threads = 0;  // 0 = hardware concurrency
  bool per_agent_u = false;
};

struct SweepRow {
  long sim_id = 0;
  std::string net;
  double theta = 0.0;
  double mu = 0.0;
  int tau = 0;
  double b = 0.0;
  std::uint64_t seed = 0;
  Classification classification = Classification::Unresolved;
  int less_biased = 0;
  double final_opinion_mean = 0.0;
  double opinion_spread = 0.0;
  int fi = -1;
  int om = -1;
  int pca = -1;
  int deg_left = -1;
  int deg_right = -1;
  int node_left = -1;
  int node_right = -1;
  double distance = 0.0;
};

struct CellStats {
  long trials = 0;
  long less_biased = 0;
  long unresolved = 0;
  double phat() const { return trials ? double(less_biased) / double(trials) : 0.0; }
  double unresolved_rate() const {
    return trials ? double(unresolved) / double(trials) : 0.0;
  }
};

struct SweepTable {
  std::vector<SweepRow> rows;

  void write_csv(std::ostream& out) const;
  static SweepTable read_csv(std::istream& in);

  // p-hat over a (network, tau) cell; om filters on the open-minded dummy
  // (-1 = pooled, 0 = narrow-minded rows, 1 = open-minded rows).
  CellStats cell(const std::string& net, int tau, int om = -1) const;
};

// Runs trials x (network, tau) cells with common random numbers: trial s
// uses the same signal stream, tie-break stream, placement draw and theta
// in every cell. Row order and content depend only on (config, seed), not
// on the number of worker threads.
SweepTable monte_carlo(const SweepConfig& cfg);

}  // namespace conbias
