#include "conbias/engine.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace conbias {

namespace {

constexpr double kEpsilonFloor = 0.02;

std::string fmt(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

int pick_node(double u, int n) {
  const int k = static_cast<int>(u * n);
  return std::min(k, n - 1);
}

}  // namespace

double default_epsilon(double mu, double gbar) {
  // One fifth of the consensus gap. Anything much tighter misclassifies
  // strong-partisan runs at the benchmark horizon: the initial mass M0 pulls
  // the period-T opinion about M0/(M0 + bT) of the way back toward 1/2,
  // which at tau = 30, T = 700 already costs 0.035 of the 0.06 a gap/10 ball
  // would allow. gap/5 stays well inside the gap/2 separation bound.
  const double gap = mu * (2.0 * gbar - 1.0);
  return gap > 0.0 ? 0.2 * gap : kEpsilonFloor;
}

double resolve_epsilon(const TrialConfig& cfg, double gbar) {
  return cfg.epsilon > 0.0 ? cfg.epsilon : default_epsilon(cfg.mu, gbar);
}

std::vector<double> expand_gammas(const TrialConfig& cfg, int n) {
  if (cfg.gammas.size() == 1) return std::vector<double>(n, cfg.gammas[0]);
  if (static_cast<int>(cfg.gammas.size()) == n) return cfg.gammas;
  throw std::invalid_argument("gamma vector needs 1 or n entries");
}

SocietyState init_society(const TrialConfig& cfg, const Network& net,
                          rng::Stream& placement_stream, Placement& placement) {
  if ((cfg.tau_left > 0 || cfg.tau_right > 0) && net.n < 2)
    throw std::invalid_argument("partisans need at least two nodes");
  SocietyState state;
  state.agents.assign(net.n, Belief{1.0, 1.0});
  placement = Placement{};
  if (net.n >= 2) {
    // Ordered distinct pair, uniform. Two fixed stream positions are read so
    // every (network, tau) cell of a trial sees the same underlying draws.
    const double u1 = placement_stream.uniform_at(0);
    const double u2 = placement_stream.uniform_at(1);
    placement.left = pick_node(u1, net.n);
    const int k = pick_node(u2, net.n - 1);
    placement.right = (k >= placement.left) ? k + 1 : k;
    state.agents[placement.left] = Belief{1.0, 1.0 + cfg.tau_left};
    state.agents[placement.right] = Belief{1.0 + cfg.tau_right, 1.0};
  }
  return state;
}

void step(SocietyState& state, const MixingMatrix& mix, Signal signal,
          std::span<const double> us, std::span<const double> gammas,
          std::vector<InterpretedSignal>* interpreted) {
  const int n = static_cast<int>(state.agents.size());
  thread_local std::vector<double> s1v, s0v, na, nb;
  s1v.resize(n);
  s0v.resize(n);
  na.resize(n);
  nb.resize(n);

  for (int i = 0; i < n; ++i) {
    const double y_prev = opinion(state.agents[i]);
    const double u = us.size() == 1 ? us[0] : us[i];
    const InterpretedSignal is = interpret(signal, y_prev, {gammas[i]}, u);
    s1v[i] = is.s1;
    s0v[i] = is.s0;
    if (interpreted) (*interpreted)[i] = is;
  }
  // Diffusion form of the row-stochastic average: x_i + sum_j w_ij (x_j - x_i).
  // Algebraically identical to W x, but exact when all entries agree, so
  // identical agents stay bit-identical on every topology (weights like 1/3
  // would otherwise leak one-ulp drift into the 0.5 tie-break).
  for (int i = 0; i < n; ++i) {
    const double ai = state.agents[i].alpha;
    const double bi = state.agents[i].beta;
    double acc_a = 0.0, acc_b = 0.0;
    for (int j = 0; j < n; ++j) {
      const double w = mix.w(i, j);
      acc_a += w * (state.agents[j].alpha - ai);
      acc_b += w * (state.agents[j].beta - bi);
    }
    na[i] = ai + acc_a + mix.b * s1v[i];
    nb[i] = bi + acc_b + mix.b * s0v[i];
  }
  for (int i = 0; i < n; ++i) state.agents[i] = Belief{na[i], nb[i]};
  ++state.period;
}

SocietyState forward_iterate(const SocietyState& initial, const MixingMatrix& mix,
                             const std::vector<std::vector<InterpretedSignal>>& history) {
  const int n = static_cast<int>(initial.agents.size());
  const long t = static_cast<long>(history.size());
  la::Matrix power = la::Matrix::identity(n);  // W^k
  std::vector<double> acc_a(n, 0.0), acc_b(n, 0.0), sig(n);

  for (long k = 0; k < t; ++k) {
    const auto& s = history[t - 1 - k];  // interpreted signals of period t-k
    for (int i = 0; i < n; ++i) sig[i] = mix.b * s[i].s1;
    auto va = la::matvec(power, sig);
    for (int i = 0; i < n; ++i) sig[i] = mix.b * s[i].s0;
    auto vb = la::matvec(power, sig);
    for (int i = 0; i < n; ++i) {
      acc_a[i] += va[i];
      acc_b[i] += vb[i];
    }
    power = la::matmul(power, mix.w);
  }
  std::vector<double> a0(n), b0(n);
  for (int i = 0; i < n; ++i) {
    a0[i] = initial.agents[i].alpha;
    b0[i] = initial.agents[i].beta;
  }
  const auto wa = la::matvec(power, a0);
  const auto wb = la::matvec(power, b0);

  SocietyState out;
  out.period = initial.period + t;
  out.agents.resize(n);
  for (int i = 0; i < n; ++i) out.agents[i] = Belief{wa[i] + acc_a[i], wb[i] + acc_b[i]};
  return out;
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::LessBiased: return "less_biased";
    case Classification::MoreBiased: return "more_biased";
    case Classification::Unresolved: return "unresolved";
  }
  return "?";
}

namespace {

OutcomeReadout readout(const SocietyState& state, double theta, double eps,
                       const LimitPair& targets, bool classify) {
  OutcomeReadout r;
  r.targets = targets;
  double mean = 0.0, lo = 1.0, hi = 0.0;
  for (const Belief& b : state.agents) {
    const double y = opinion(b);
    mean += y;
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  }
  mean /= static_cast<double>(state.agents.size());
  r.mean_opinion = mean;
  r.spread = hi - lo;

  const double d_left = std::fabs(mean - targets.y_left);
  const double d_right = std::fabs(mean - targets.y_right);
  r.distance = std::min(d_left, d_right);
  if (!classify) return r;

  const Side side = less_biased_side(theta);
  const double d_less = side == Side::Right ? d_right : d_left;
  const double d_more = side == Side::Right ? d_left : d_right;
  if (d_less <= d_more && d_less < eps)
    r.classification = Classification::LessBiased;
  else if (d_more < d_less && d_more < eps)
    r.classification = Classification::MoreBiased;
  else
    r.classification = Classification::Unresolved;
  return r;
}

}  // namespace

OutcomeReadout classify_outcome(const SocietyState& final_state,
                                const TrialConfig& cfg,
                                const std::vector<double>& pi) {
  if (cfg.theta == 0.5)
    throw std::invalid_argument("theta = 0.5 has no less-biased side");
  const auto gammas = expand_gammas(cfg, static_cast<int>(final_state.agents.size()));
  const double gbar = gamma_bar(gammas, pi);
  const LimitPair targets = limiting_opinions(cfg.theta, cfg.mu, gbar);
  return readout(final_state, cfg.theta, resolve_epsilon(cfg, gbar), targets, true);
}

int first_impression(Signal first, double theta) {
  if (theta >= 0.5) return (first == Signal::Ambiguous || first == Signal::One) ? 1 : 0;
  return first == Signal::Zero ? 1 : 0;
}

Covariates extract_covariates(const Placement& placement, const Network& net,
                              Signal first_signal, double theta) {
  Covariates cov;
  cov.fi = first_impression(first_signal, theta);
  if (!placement.placed()) return cov;
  cov.om = (net.edge(placement.left, placement.right) ||
            net.edge(placement.right, placement.left))
               ? 1
               : 0;
  const int dl = degree(net, placement.left);
  const int dr = degree(net, placement.right);
  cov.pca = (theta >= 0.5) ? (dr > dl ? 1 : 0) : (dl > dr ? 1 : 0);
  return cov;
}

namespace {

// Shared workhorse: signals[t-1] is period t's public signal; us has one
// entry per period (shared tie-break) or n per period (per-agent draws).
TrialOutcome run_trial_core(const TrialConfig& cfg, const Network& net,
                            const MixingMatrix& mix, const std::vector<double>& pi,
                            std::span<const Signal> signals, std::span<const double> us,
                            rng::Stream& placement_stream, TrialRecord* record) {
  const int n = net.n;
  const auto gammas = expand_gammas(cfg, n);
  const int stride = cfg.per_agent_u ? n : 1;

  Placement placement;
  SocietyState state = init_society(cfg, net, placement_stream, placement);

  if (record) {
    record->initial = state;
    record->signals.assign(signals.begin(), signals.end());
    record->interpreted.assign(cfg.horizon, std::vector<InterpretedSignal>(n));
    record->opinions.clear();
    record->opinions.reserve(cfg.horizon + 1);
  }
  auto log_opinions = [&] {
    std::vector<double> ys(n);
    for (int i = 0; i < n; ++i) ys[i] = opinion(state.agents[i]);
    record->opinions.push_back(std::move(ys));
  };
  if (record) log_opinions();

  for (long t = 0; t < cfg.horizon; ++t) {
    std::vector<InterpretedSignal>* interp = record ? &record->interpreted[t] : nullptr;
    step(state, mix, signals[t], us.subspan(t * stride, stride), gammas, interp);
    if (record) log_opinions();
  }

  TrialOutcome out;
  out.first_signal = signals.empty() ? Signal::Ambiguous : signals[0];
  out.placement = placement;
  if (placement.placed()) {
    out.deg_left = degree(net, placement.left);
    out.deg_right = degree(net, placement.right);
  }
  out.covariates = extract_covariates(placement, net, out.first_signal, cfg.theta);
  out.final_opinions.resize(n);
  for (int i = 0; i < n; ++i) out.final_opinions[i] = opinion(state.agents[i]);

  const double gbar = gamma_bar(gammas, pi);
  const LimitPair targets = limiting_opinions(cfg.theta, cfg.mu, gbar);
  out.readout = readout(state, cfg.theta, resolve_epsilon(cfg, gbar), targets,
                        cfg.theta != 0.5);
  return out;
}

}  // namespace

TrialOutcome run_trial(const TrialConfig& cfg, const Network& net,
                       const MixingMatrix& mix, const std::vector<double>& pi,
                       std::uint64_t trial_index, TrialRecord* record) {
  if (cfg.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  rng::Stream signal_stream(cfg.seed, trial_index, rng::Role::Signals);
  rng::Stream tie_stream(cfg.seed, trial_index, rng::Role::TieBreak);
  rng::Stream placement_stream(cfg.seed, trial_index, rng::Role::Placement);

  std::vector<Signal> signals(cfg.horizon);
  for (long t = 0; t < cfg.horizon; ++t)
    signals[t] = signal_from_uniform(cfg.theta, cfg.mu, signal_stream.next_uniform());

  const int stride = cfg.per_agent_u ? net.n : 1;
  std::vector<double> us(cfg.horizon * stride);
  for (std::size_t k = 0; k < us.size(); ++k) us[k] = tie_stream.next_uniform();

  return run_trial_core(cfg, net, mix, pi, signals, us, placement_stream, record);
}

std::vector<double> influence_weights(const Network& net, const MixingMatrix& mix) {
  if (mix.b >= 1.0) return std::vector<double>(net.n, 1.0 / net.n);
  return stationary(mix).pi;
}

TrialOutcome run_trial(const TrialConfig& cfg, TrialRecord* record) {
  const Network net = build_topology(cfg.net_label);
  const MixingMatrix mix = mixing_matrix(net, cfg.b);
  return run_trial(cfg, net, mix, influence_weights(net, mix), 0, record);
}

// ---------------------------------------------------------------------------
// Sweeps

namespace {

struct NetCell {
  std::string label;
  Network net;
  MixingMatrix mix;
  std::vector<double> pi;
};

std::string na_or(int v) { return v < 0 ? "NA" : std::to_string(v); }

int parse_na(const std::string& s) { return s == "NA" ? -1 : std::stoi(s); }

}  // namespace

void SweepTable::write_csv(std::ostream& out) const {
  out << "# conbias sweep v1\n";
  out << "sim_id,network,theta,mu,tau,b,seed,classification,less_biased,"
         "final_opinion_mean,opinion_spread,fi,om,pca,deg_left,deg_right,"
         "node_left,node_right,distance\n";
  for (const SweepRow& r : rows) {
    out << r.sim_id << ',' << r.net << ',' << fmt(r.theta) << ',' << fmt(r.mu) << ','
        << r.tau << ',' << fmt(r.b) << ',' << r.seed << ',' << to_string(r.classification)
        << ',' << r.less_biased << ',' << fmt(r.final_opinion_mean) << ','
        << fmt(r.opinion_spread) << ',' << r.fi << ',' << na_or(r.om) << ','
        << na_or(r.pca) << ',' << na_or(r.deg_left) << ',' << na_or(r.deg_right) << ','
        << na_or(r.node_left) << ',' << na_or(r.node_right) << ',' << fmt(r.distance)
        << '\n';
  }
}

SweepTable SweepTable::read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# conbias sweep", 0) != 0)
    throw std::invalid_argument("not a conbias sweep file (missing version line)");
  if (!std::getline(in, line))
    throw std::invalid_argument("sweep file has no header");
  const std::string expected =
      "sim_id,network,theta,mu,tau,b,seed,classification,less_biased,"
      "final_opinion_mean,opinion_spread,fi,om,pca,deg_left,deg_right,"
      "node_left,node_right,distance";
  if (line != expected)
    throw std::invalid_argument("unexpected sweep header: " + line);

  SweepTable table;
  std::vector<std::string> f;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    f.clear();
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = line.find(',', start);
      f.push_back(line.substr(start, pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    if (f.size() != 19)
      throw std::invalid_argument("malformed sweep row: " + line);
    SweepRow r;
    r.sim_id = std::stol(f[0]);
    r.net = f[1];
    r.theta = std::stod(f[2]);
    r.mu = std::stod(f[3]);
    r.tau = std::stoi(f[4]);
    r.b = std::stod(f[5]);
    r.seed = std::stoull(f[6]);
    if (f[7] == "less_biased")
      r.classification = Classification::LessBiased;
    else if (f[7] == "more_biased")
      r.classification = Classification::MoreBiased;
    else
      r.classification = Classification::Unresolved;
    r.less_biased = std::stoi(f[8]);
    r.final_opinion_mean = std::stod(f[9]);
    r.opinion_spread = std::stod(f[10]);
    r.fi = std::stoi(f[11]);
    r.om = parse_na(f[12]);
    r.pca = parse_na(f[13]);
    r.deg_left = parse_na(f[14]);
    r.deg_right = parse_na(f[15]);
    r.node_left = parse_na(f[16]);
    r.node_right = parse_na(f[17]);
    r.distance = std::stod(f[18]);
    table.rows.push_back(std::move(r));
  }
  return table;
}

CellStats SweepTable::cell(const std::string& net, int tau, int om) const {
  CellStats st;
  for (const SweepRow& r : rows) {
    if (r.net != net || r.tau != tau) continue;
    if (om >= 0 && r.om != om) continue;
    ++st.trials;
    st.less_biased += r.less_biased;
    if (r.classification == Classification::Unresolved) ++st.unresolved;
  }
  return st;
}

SweepTable monte_carlo(const SweepConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.thetas.empty()) throw std::invalid_argument("theta set must be non-empty");
  for (double th : cfg.thetas)
    if (th == 0.5)
      throw std::invalid_argument("theta = 0.5 cannot be classified; drop it");

  std::vector<NetCell> nets;
  for (const std::string& label : cfg.nets) {
    NetCell cell;
    cell.label = label;
    cell.net = build_topology(label);
    cell.mix = mixing_matrix(cell.net, cfg.b);
    cell.pi = stationary(cell.mix).pi;
    nets.push_back(std::move(cell));
  }

  // (network, tau) cells; the single agent only supports tau = 0.
  struct Cell {
    const NetCell* net;
    int tau;
  };
  std::vector<Cell> cells;
  for (const NetCell& nc : nets)
    for (int tau : cfg.taus) {
      if (nc.net.n < 2 && tau > 0) continue;
      cells.push_back({&nc, tau});
    }
  if (cells.empty()) throw std::invalid_argument("sweep has no cells");

  SweepTable table;
  table.rows.resize(cells.size() * cfg.trials);

  const int threads = cfg.threads > 0
                          ? cfg.threads
                          : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<long> next_chunk{0};
  constexpr long kChunk = 64;

  auto worker = [&] {
    std::vector<Signal> signals(cfg.horizon);
    std::vector<double> us;
    while (true) {
      const long chunk = next_chunk.fetch_add(1);
      const long begin = chunk * kChunk;
      if (begin >= cfg.trials) return;
      const long end = std::min(cfg.trials, begin + kChunk);
      for (long s = begin; s < end; ++s) {
        const double theta = cfg.thetas[s % cfg.thetas.size()];

        rng::Stream signal_stream(cfg.master_seed, s, rng::Role::Signals);
        for (long t = 0; t < cfg.horizon; ++t)
          signals[t] = signal_from_uniform(theta, cfg.mu, signal_stream.next_uniform());
        if (!cfg.per_agent_u) {
          rng::Stream tie_stream(cfg.master_seed, s, rng::Role::TieBreak);
          us.resize(cfg.horizon);
          for (std::size_t k = 0; k < us.size(); ++k) us[k] = tie_stream.next_uniform();
        }

        for (std::size_t c = 0; c < cells.size(); ++c) {
          const Cell& cell = cells[c];
          TrialConfig tc;
          tc.net_label = cell.net->label;
          tc.theta = theta;
          tc.mu = cfg.mu;
          tc.b = cfg.b;
          tc.gammas = {cfg.gamma};
          tc.tau_left = cell.tau;
          tc.tau_right = cell.tau;
          tc.horizon = cfg.horizon;
          tc.seed = cfg.master_seed;
          tc.epsilon = cfg.epsilon;
          tc.per_agent_u = cfg.per_agent_u;

          TrialOutcome outcome;
          if (cfg.per_agent_u) {
            // Per-agent tie-break draws depend on the cell's node count, so
            // this sensitivity mode regenerates them inside run_trial.
            outcome = run_trial(tc, cell.net->net, cell.net->mix, cell.net->pi, s);
          } else {
            rng::Stream placement_stream(cfg.master_seed, s, rng::Role::Placement);
            outcome = run_trial_core(tc, cell.net->net, cell.net->mix, cell.net->pi,
                                     signals, us, placement_stream, nullptr);
          }

          SweepRow& row = table.rows[c * cfg.trials + s];
          row.sim_id = s;
          row.net = cell.net->label;
          row.theta = theta;
          row.mu = cfg.mu;
          row.tau = cell.tau;
          row.b = cfg.b;
          row.seed = cfg.master_seed;
          row.classification = outcome.readout.classification.value();
          row.less_biased =
              outcome.readout.classification == Classification::LessBiased ? 1 : 0;
          row.final_opinion_mean = outcome.readout.mean_opinion;
          row.opinion_spread = outcome.readout.spread;
          row.fi = outcome.covariates.fi;
          row.om = outcome.covariates.om;
          row.pca = outcome.covariates.pca;
          row.deg_left = outcome.deg_left;
          row.deg_right = outcome.deg_right;
          row.node_left = outcome.placement.left;
          row.node_right = outcome.placement.right;
          row.distance = outcome.readout.distance;
        }
      }
    }
  };

  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  return table;
}

}  // namespace conbias
