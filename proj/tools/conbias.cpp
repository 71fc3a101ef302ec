// conbias: simulation and inference CLI for confirmation-biased social
// learning on small networks. Subcommands: theory | run | sweep | analyze.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "conbias/engine.hpp"
#include "conbias/stats.hpp"

namespace {

constexpr const char* kVersion = "conbias 1.0.0";

using conbias::Classification;
using conbias::LimitPair;
using conbias::Region;
using conbias::Side;
using json = nlohmann::json;

std::string side_name(Side s) {
  switch (s) {
    case Side::Left: return "left";
    case Side::Right: return "right";
    case Side::Tie: return "tie";
  }
  return "?";
}

std::string region_name(Region r) {
  switch (r) {
    case Region::R: return "R";
    case Region::L: return "L";
    case Region::W: return "W";
  }
  return "?";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const std::string& tok : split(s, ',')) out.push_back(std::stod(tok));
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (const std::string& tok : split(s, ',')) out.push_back(std::stoi(tok));
  return out;
}

std::uint64_t env_or(std::uint64_t seed) {
  if (const char* env = std::getenv("CONBIAS_SEED")) return std::stoull(env);
  return seed;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void write_manifest(const std::string& path, const std::string& command,
                    const json& config, std::uint64_t seed,
                    const std::vector<std::string>& outputs, double seconds) {
  json m;
  m["tool"] = kVersion;
  m["command"] = command;
  m["master_seed"] = seed;
  m["config"] = config;
  m["outputs"] = outputs;
  m["duration_seconds"] = seconds;
  std::ofstream out(path);
  out << m.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

struct TheoryArgs {
  double theta = 0.5, mu = 0.5, gamma = 1.0, b = 0.5;
  std::string net, gammas;
};

int cmd_theory(const TheoryArgs& a) {
  require(a.theta >= 0.0 && a.theta <= 1.0, "--theta must lie in [0,1]");
  require(a.mu >= 0.0 && a.mu <= 1.0, "--mu must lie in [0,1]");
  require(a.gamma >= 0.5 && a.gamma <= 1.0, "--gamma must lie in [0.5,1]");

  const LimitPair lim = conbias::limiting_opinions(a.theta, a.mu, a.gamma);
  const auto bias = conbias::bias_decomposition(a.theta, a.mu, a.gamma);
  std::cout << "theta = " << a.theta << ", mu = " << a.mu << ", gamma = " << a.gamma
            << "\n";
  std::cout << "y_left  = " << lim.y_left << "  (bias " << bias.left << ")\n";
  std::cout << "y_right = " << lim.y_right << "  (bias " << bias.right << ")\n";
  std::cout << "gap     = " << lim.y_right - lim.y_left << "\n";
  std::cout << "region  = " << region_name(conbias::classify_region(a.theta, a.mu, a.gamma))
            << "\n";
  std::cout << "less biased side = " << side_name(conbias::less_biased_side(a.theta))
            << "\n";
  if (a.gamma == 0.5)
    std::cout << "impartial limit  = " << conbias::impartial_limit(a.theta, a.mu) << "\n";
  std::cout << "extreme opinions possible = "
            << (conbias::is_extreme_capable(a.mu, a.gamma) ? "yes" : "no") << "\n";

  if (!a.net.empty()) {
    require(a.b >= 0.0 && a.b <= 1.0, "--b must lie in [0,1]");
    const conbias::Network net = conbias::build_topology(a.net);
    const auto mix = conbias::mixing_matrix(net, a.b);
    const auto pi = conbias::stationary(mix).pi;
    std::vector<double> gammas(net.n, a.gamma);
    if (!a.gammas.empty()) {
      gammas = parse_doubles(a.gammas);
      require(static_cast<int>(gammas.size()) == net.n,
              "--gammas needs one entry per node");
      for (double g : gammas)
        require(g >= 0.0 && g <= 1.0, "--gammas entries must lie in [0,1]");
    }
    std::cout << "\nnetwork " << a.net << " (n = " << net.n << "), b = " << a.b << "\n";
    std::cout << "pi = (";
    for (int i = 0; i < net.n; ++i) std::cout << (i ? ", " : "") << pi[i];
    std::cout << ")\n";
    const double gbar = conbias::gamma_bar(gammas, pi);
    const LimitPair cons = conbias::network_consensus(a.theta, a.mu, gammas, pi);
    std::cout << "gamma_bar = " << gbar << "\n";
    std::cout << "consensus pair: y_left = " << cons.y_left
              << ", y_right = " << cons.y_right << "\n";
  } else {
    require(a.gammas.empty(), "--gammas requires --net (pi weights the average)");
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct RunArgs {
  conbias::TrialConfig cfg;
  std::string gammas;
  int tau = -1;
  std::string trace_path, out_path;
  bool no_manifest = false;
};

int cmd_run(RunArgs& a) {
  auto& cfg = a.cfg;
  require(cfg.theta >= 0.0 && cfg.theta <= 1.0, "--theta must lie in [0,1]");
  require(cfg.mu >= 0.0 && cfg.mu <= 1.0, "--mu must lie in [0,1]");
  require(cfg.b >= 0.0 && cfg.b <= 1.0, "--b must lie in [0,1]");
  require(cfg.horizon >= 1, "--T must be >= 1");
  if (a.tau >= 0) cfg.tau_left = cfg.tau_right = a.tau;
  if (!a.gammas.empty()) cfg.gammas = parse_doubles(a.gammas);
  for (double g : cfg.gammas)
    require(g >= 0.0 && g <= 1.0, "gamma entries must lie in [0,1]");
  cfg.seed = env_or(cfg.seed);

  const auto start = std::chrono::steady_clock::now();
  conbias::TrialRecord record;
  const conbias::TrialOutcome outcome = conbias::run_trial(cfg, &record);
  const int n = static_cast<int>(outcome.final_opinions.size());

  std::vector<std::string> outputs;
  if (!a.trace_path.empty()) {
    std::ofstream trace(a.trace_path);
    require(trace.good(), "cannot open --trace file " + a.trace_path);
    trace << "period";
    for (int i = 0; i < n; ++i) trace << ",y_" << i;
    trace << "\n";
    for (std::size_t t = 0; t < record.opinions.size(); ++t) {
      trace << t;
      for (double y : record.opinions[t]) trace << ',' << std::setprecision(17) << y;
      trace << "\n";
    }
    outputs.push_back(a.trace_path);
  }

  std::cout << "network " << cfg.net_label << " (n = " << n << "), T = " << cfg.horizon
            << ", seed = " << cfg.seed << "\n";
  std::cout << "final opinions: ";
  for (int i = 0; i < n; ++i)
    std::cout << (i ? ", " : "") << std::setprecision(10) << outcome.final_opinions[i];
  std::cout << "\nmean = " << outcome.readout.mean_opinion
            << ", spread = " << outcome.readout.spread << "\n";
  std::cout << "consensus targets: y_left = " << outcome.readout.targets.y_left
            << ", y_right = " << outcome.readout.targets.y_right << "\n";
  std::cout << "distance to nearest target = " << outcome.readout.distance << "\n";
  if (outcome.readout.classification)
    std::cout << "classification = " << conbias::to_string(*outcome.readout.classification)
              << "\n";
  else
    std::cout << "classification = n/a (theta = 0.5 has no less-biased side)\n";
  if (outcome.placement.placed()) {
    std::cout << "partisans: leftist node " << outcome.placement.left << " (deg "
              << outcome.deg_left << "), rightist node " << outcome.placement.right
              << " (deg " << outcome.deg_right << ")\n";
    std::cout << "covariates: fi = " << outcome.covariates.fi
              << ", om = " << outcome.covariates.om
              << ", pca = " << outcome.covariates.pca << "\n";
  } else {
    std::cout << "covariates: fi = " << outcome.covariates.fi << "\n";
  }

  if (!a.out_path.empty()) {
    conbias::SweepTable table;
    conbias::SweepRow row;
    row.sim_id = 0;
    row.net = cfg.net_label;
    row.theta = cfg.theta;
    row.mu = cfg.mu;
    row.tau = cfg.tau_left;
    row.b = cfg.b;
    row.seed = cfg.seed;
    row.classification =
        outcome.readout.classification.value_or(Classification::Unresolved);
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
    table.rows.push_back(row);
    std::ofstream out(a.out_path);
    require(out.good(), "cannot open --out file " + a.out_path);
    table.write_csv(out);
    outputs.push_back(a.out_path);
  }

  if (!outputs.empty() && !a.no_manifest) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json config = {{"net", cfg.net_label},   {"theta", cfg.theta},
                   {"mu", cfg.mu},           {"b", cfg.b},
                   {"gammas", cfg.gammas},   {"tau_left", cfg.tau_left},
                   {"tau_right", cfg.tau_right}, {"T", cfg.horizon},
                   {"epsilon", cfg.epsilon}, {"per_agent_u", cfg.per_agent_u}};
    write_manifest(outputs.front() + ".manifest.json", "run", config, cfg.seed,
                   outputs, secs);
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  conbias::SweepConfig cfg;
  std::string nets, taus, thetas;
  bool paper_table2 = false;
  bool paper_table4 = false;
  std::string out_path = "sweep.csv";
  bool no_manifest = false;
};

void print_pivot(const conbias::SweepTable& table, const conbias::SweepConfig& cfg) {
  std::cout << "\np-hat (less-biased consensus frequency), " << cfg.trials
            << " trials per cell\n";
  std::cout << std::left << std::setw(8) << "net";
  for (int tau : cfg.taus) std::cout << std::setw(10) << ("tau=" + std::to_string(tau));
  std::cout << std::setw(12) << "unresolved" << "\n";
  for (const std::string& net : cfg.nets) {
    std::cout << std::setw(8) << net;
    double unresolved = 0.0;
    long cells = 0;
    for (int tau : cfg.taus) {
      const auto st = table.cell(net, tau);
      if (st.trials == 0) {
        std::cout << std::setw(10) << "-";
        continue;
      }
      std::cout << std::setw(10) << std::fixed << std::setprecision(3) << st.phat();
      unresolved += st.unresolved_rate();
      ++cells;
    }
    std::cout << std::setw(12) << std::fixed << std::setprecision(4)
              << (cells ? unresolved / cells : 0.0) << "\n";
  }
  std::cout.unsetf(std::ios::fixed);
  std::cout << std::setprecision(6);
}

void print_om_split(const conbias::SweepTable& table, const conbias::SweepConfig& cfg) {
  std::cout << "\nopen- vs narrow-minded partisans (p-hat by om dummy)\n";
  std::cout << std::left << std::setw(8) << "net" << std::setw(15) << "partisans";
  for (int tau : cfg.taus) std::cout << std::setw(10) << ("tau=" + std::to_string(tau));
  std::cout << "\n";
  for (const std::string& net : cfg.nets) {
    const conbias::Network n = conbias::build_topology(net);
    if (n.n < 2) continue;
    // complete graphs have no narrow-minded placements; skip the split
    const auto any = table.cell(net, cfg.taus.front(), 0);
    if (any.trials == 0) continue;
    for (int om = 2; om >= 0; --om) {
      std::cout << std::setw(8) << (om == 2 ? net : "");
      std::cout << std::setw(15)
                << (om == 2 ? "pooled" : (om == 1 ? "open-minded" : "narrow-minded"));
      for (int tau : cfg.taus) {
        const auto st = table.cell(net, tau, om == 2 ? -1 : om);
        if (st.trials == 0)
          std::cout << std::setw(10) << "-";
        else
          std::cout << std::setw(10) << std::fixed << std::setprecision(3) << st.phat();
      }
      std::cout << "\n";
    }
  }
  std::cout.unsetf(std::ios::fixed);
  std::cout << std::setprecision(6);
}

int cmd_sweep(SweepArgs& a) {
  auto& cfg = a.cfg;
  if (a.paper_table2 || a.paper_table4) {
    // The benchmark grid: every classic network plus the single agent,
    // b = 0.5, T = 700, mu = 0.6, gamma = 1, theta alternating {0.2, 0.8},
    // tau in {0, 1, 10, 30}.
    cfg.nets = {"SA", "A", "B", "C", "D", "E", "F", "G", "H"};
    cfg.taus = {0, 1, 10, 30};
    cfg.horizon = 700;
    cfg.mu = 0.6;
    cfg.b = 0.5;
    cfg.gamma = 1.0;
    cfg.thetas = {0.2, 0.8};
  }
  if (!a.nets.empty()) cfg.nets = split(a.nets, ',');
  if (!a.taus.empty()) cfg.taus = parse_ints(a.taus);
  if (!a.thetas.empty()) cfg.thetas = parse_doubles(a.thetas);
  require(cfg.mu >= 0.0 && cfg.mu <= 1.0, "--mu must lie in [0,1]");
  require(cfg.b >= 0.0 && cfg.b <= 1.0, "--b must lie in [0,1]");
  require(cfg.gamma >= 0.5 && cfg.gamma <= 1.0, "--gamma must lie in [0.5,1]");
  for (int tau : cfg.taus) require(tau >= 0, "--taus entries must be >= 0");
  cfg.master_seed = env_or(cfg.master_seed);

  const auto start = std::chrono::steady_clock::now();
  const conbias::SweepTable table = conbias::monte_carlo(cfg);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::ofstream out(a.out_path);
  require(out.good(), "cannot open --out file " + a.out_path);
  table.write_csv(out);
  out.close();
  std::cout << "wrote " << table.rows.size() << " rows to " << a.out_path << " ("
            << std::setprecision(3) << secs << " s)\n";

  print_pivot(table, cfg);
  if (a.paper_table4) print_om_split(table, cfg);

  if (!a.no_manifest) {
    json config = {{"nets", cfg.nets},       {"taus", cfg.taus},
                   {"trials", cfg.trials},   {"T", cfg.horizon},
                   {"mu", cfg.mu},           {"b", cfg.b},
                   {"gamma", cfg.gamma},     {"thetas", cfg.thetas},
                   {"epsilon", cfg.epsilon}, {"per_agent_u", cfg.per_agent_u},
                   {"threads", cfg.threads}};
    write_manifest(a.out_path + ".manifest.json", "sweep", config, cfg.master_seed,
                   {a.out_path}, secs);
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  std::string table_path;
  bool probit = false;
  bool proptest = false;
  std::string nets, taus, coef_csv;
};

void print_probit(const conbias::stats::ProbitFit& fit,
                  const conbias::stats::Design& design, const std::string& net,
                  long rows) {
  std::cout << "\nProbit, network (" << net << "), N = " << rows << "\n";
  std::cout << std::left << std::setw(12) << "column" << std::right << std::setw(12)
            << "coef" << std::setw(5) << "" << std::setw(12) << "se" << std::setw(12)
            << "z" << std::setw(12) << "p" << "\n";
  for (std::size_t i = 0; i < fit.coef.size(); ++i) {
    const double p = conbias::stats::wald_p(fit.coef[i], fit.se[i]);
    const double z = fit.se[i] > 0 ? fit.coef[i] / fit.se[i] : 0.0;
    std::cout << std::left << std::setw(12) << fit.names[i] << std::right
              << std::setw(12) << std::fixed << std::setprecision(3) << fit.coef[i]
              << std::setw(5) << conbias::stats::stars(p) << std::setw(12)
              << std::setprecision(3) << fit.se[i] << std::setw(12) << z << std::setw(12)
              << std::setprecision(4) << p << "\n";
  }
  std::cout.unsetf(std::ios::fixed);
  std::cout << std::setprecision(6);
  std::cout << "log likelihood = " << std::setprecision(10) << fit.log_likelihood
            << (fit.converged ? "" : "  [NOT CONVERGED]") << " (" << fit.iterations
            << " iterations)\n";
  for (const std::string& d : design.dropped) std::cout << "excluded: " << d << "\n";
}

int cmd_analyze(AnalyzeArgs& a) {
  require(a.probit || a.proptest, "pick --probit and/or --proptest");
  std::ifstream in(a.table_path);
  require(in.good(), "cannot open table " + a.table_path);
  const conbias::SweepTable table = conbias::SweepTable::read_csv(in);

  std::vector<std::string> nets = split(a.nets, ',');
  if (nets.empty()) {
    std::set<std::string> seen;
    for (const auto& r : table.rows) seen.insert(r.net);
    nets.assign(seen.begin(), seen.end());
  }

  int rc = 0;
  if (a.probit) {
    std::ofstream coef_out;
    if (!a.coef_csv.empty()) {
      coef_out.open(a.coef_csv);
      require(coef_out.good(), "cannot open --coef-csv file " + a.coef_csv);
      coef_out << "network,column,coef,se,z,p\n";
    }
    for (const std::string& net : nets) {
      if (net == "SA") continue;  // no covariate variation for one agent
      const auto design = conbias::stats::build_design(table, net);
      const auto fit = conbias::stats::probit_fit(design);
      print_probit(fit, design, net, design.rows);
      if (coef_out.is_open()) {
        for (std::size_t i = 0; i < fit.coef.size(); ++i) {
          const double p = conbias::stats::wald_p(fit.coef[i], fit.se[i]);
          coef_out << net << ',' << fit.names[i] << ',' << fit.coef[i] << ','
                   << fit.se[i] << ',' << (fit.se[i] > 0 ? fit.coef[i] / fit.se[i] : 0.)
                   << ',' << p << "\n";
        }
      }
    }
  }

  if (a.proptest) {
    const std::vector<int> taus = parse_ints(a.taus);
    require(!taus.empty(), "--proptest needs --tau values");
    // Two cells: one net + two taus, or two nets + one (or two) taus.
    std::vector<std::pair<std::string, int>> cells;
    if (nets.size() == 1) {
      require(taus.size() == 2, "--proptest with one net needs two --tau values");
      cells = {{nets[0], taus[0]}, {nets[0], taus[1]}};
    } else if (nets.size() == 2) {
      if (taus.size() == 1)
        cells = {{nets[0], taus[0]}, {nets[1], taus[0]}};
      else if (taus.size() == 2)
        cells = {{nets[0], taus[0]}, {nets[1], taus[1]}};
      else
        throw std::invalid_argument("--proptest with two nets needs 1 or 2 --tau values");
    } else {
      throw std::invalid_argument("--proptest compares exactly two cells");
    }
    const auto c1 = table.cell(cells[0].first, cells[0].second);
    const auto c2 = table.cell(cells[1].first, cells[1].second);
    require(c1.trials > 0 && c2.trials > 0, "a requested cell has no rows");
    const auto t = conbias::stats::two_proportion_test(c1.less_biased, c1.trials,
                                                       c2.less_biased, c2.trials);
    std::cout << "two-proportion test: (" << cells[0].first << ", tau="
              << cells[0].second << ") vs (" << cells[1].first << ", tau="
              << cells[1].second << ")\n";
    std::cout << "p1 = " << t.p1 << " (" << c1.less_biased << "/" << c1.trials
              << "), p2 = " << t.p2 << " (" << c2.less_biased << "/" << c2.trials
              << ")\n";
    std::cout << "diff = " << t.diff << ", 95% CI [" << t.ci_low << ", " << t.ci_high
              << "]\n";
    std::cout << "chi2 = " << t.chi2 << " (df = " << t.df << "), p = " << t.p_value
              << "\n";
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kVersion) +
               " - confirmation-biased social learning on networks"};
  app.require_subcommand(1);

  TheoryArgs th;
  CLI::App* theory = app.add_subcommand(
      "theory", "closed-form limiting opinions, regions and consensus");
  theory->add_option("--theta", th.theta, "true state in [0,1]")->required();
  theory->add_option("--mu", th.mu, "ambiguity mass in [0,1]")->required();
  theory->add_option("--gamma", th.gamma, "confirmation bias in [0.5,1]")->required();
  theory->add_option("--net", th.net, "topology label A..H or SA");
  theory->add_option("--b", th.b, "self-reliance weight (default 0.5)");
  theory->add_option("--gammas", th.gammas, "per-node gamma list, e.g. 0.8,1,0.2");

  RunArgs run;
  CLI::App* runc = app.add_subcommand("run", "simulate a single trial");
  runc->add_option("--net", run.cfg.net_label, "topology label A..H or SA")->required();
  runc->add_option("--theta", run.cfg.theta, "true state")->required();
  runc->add_option("--mu", run.cfg.mu, "ambiguity mass")->required();
  runc->add_option("--b", run.cfg.b, "self-reliance weight");
  runc->add_option("--gamma", run.cfg.gammas[0], "homogeneous confirmation bias");
  runc->add_option("--gammas", run.gammas, "per-node gamma list");
  runc->add_option("--tau", run.tau, "partisanship for both partisans");
  runc->add_option("--tau-left", run.cfg.tau_left, "leftist partisanship");
  runc->add_option("--tau-right", run.cfg.tau_right, "rightist partisanship");
  runc->add_option("--T", run.cfg.horizon, "number of periods");
  runc->add_option("--seed", run.cfg.seed, "master seed");
  runc->add_option("--epsilon", run.cfg.epsilon,
                   "classification tolerance (default: gap/5)");
  runc->add_flag("--per-agent-u", run.cfg.per_agent_u,
                 "independent tie-break draws per agent");
  runc->add_option("--trace", run.trace_path, "write per-period opinions CSV");
  runc->add_option("--out", run.out_path, "write one-row outcome CSV");
  runc->add_flag("--no-manifest", run.no_manifest, "skip manifest file");

  SweepArgs sw;
  CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over cells");
  sweep->add_flag("--paper-table2", sw.paper_table2, "benchmark grid, p-hat pivot");
  sweep->add_flag("--paper-table4", sw.paper_table4,
                  "benchmark grid plus open/narrow-minded split");
  sweep->add_option("--nets", sw.nets, "topology labels, e.g. A,B,SA");
  sweep->add_option("--taus", sw.taus, "partisanship levels, e.g. 0,1,10,30");
  sweep->add_option("--thetas", sw.thetas, "alternating true states (default 0.2,0.8)");
  sweep->add_option("--trials", sw.cfg.trials, "trials per cell (default 21040)");
  sweep->add_option("--T", sw.cfg.horizon, "periods per trial (default 700)");
  sweep->add_option("--mu", sw.cfg.mu, "ambiguity mass (default 0.6)");
  sweep->add_option("--b", sw.cfg.b, "self-reliance weight (default 0.5)");
  sweep->add_option("--gamma", sw.cfg.gamma, "homogeneous bias (default 1)");
  sweep->add_option("--epsilon", sw.cfg.epsilon,
                    "classification tolerance (default: gap/5)");
  sweep->add_option("--seed", sw.cfg.master_seed, "master seed");
  sweep->add_option("--threads", sw.cfg.threads, "worker threads (0 = all cores)");
  sweep->add_flag("--per-agent-u", sw.cfg.per_agent_u,
                  "independent tie-break draws per agent");
  sweep->add_option("--out", sw.out_path, "output CSV path (default sweep.csv)");
  sweep->add_flag("--no-manifest", sw.no_manifest, "skip manifest file");

  AnalyzeArgs an;
  CLI::App* analyze =
      app.add_subcommand("analyze", "probit regressions and proportion tests");
  analyze->add_flag("--probit", an.probit, "per-network probit table");
  analyze->add_flag("--proptest", an.proptest, "two-proportion test between cells");
  analyze->add_option("--net", an.nets, "network label(s), e.g. B or B,D");
  analyze->add_option("--tau", an.taus, "tau value(s) for --proptest, e.g. 0,30");
  analyze->add_option("--coef-csv", an.coef_csv, "write coefficients CSV");
  analyze->add_option("table", an.table_path, "sweep CSV produced by `conbias sweep`")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*theory) return cmd_theory(th);
    if (*runc) return cmd_run(run);
    if (*sweep) return cmd_sweep(sw);
    if (*analyze) return cmd_analyze(an);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
