#include "conbias/network.hpp"

#include <cmath>
#include <stdexcept>

namespace conbias {

namespace {

std::vector<std::uint8_t> undirected_edges(
    int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * n, 0);
  for (auto [i, j] : edges) {
    adj[static_cast<std::size_t>(i) * n + j] = 1;
    adj[static_cast<std::size_t>(j) * n + i] = 1;
  }
  return adj;
}

bool reaches_all(const Network& net, bool reversed) {
  std::vector<char> seen(net.n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int j = 0; j < net.n; ++j) {
      const bool connected = reversed ? net.edge(j, v) : net.edge(v, j);
      if (connected && !seen[j]) {
        seen[j] = 1;
        stack.push_back(j);
      }
    }
  }
  for (char s : seen)
    if (!s) return false;
  return true;
}

}  // namespace

Network Network::from_adjacency(int n, std::vector<std::uint8_t> adjacency) {
  if (n < 1) throw std::invalid_argument("network needs at least one node");
  if (adjacency.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("adjacency size does not match node count");
  Network net;
  net.n = n;
  net.adj = std::move(adjacency);
  net.weights = la::Matrix(n);
  for (int i = 0; i < n; ++i) {
    int deg = 0;
    for (int j = 0; j < n; ++j) deg += net.adj[static_cast<std::size_t>(i) * n + j];
    if (deg == 0)
      throw std::invalid_argument("node " + std::to_string(i) +
                                  " has no out-neighbors; weights undefined");
    for (int j = 0; j < n; ++j)
      net.weights(i, j) = net.adj[static_cast<std::size_t>(i) * n + j] / double(deg);
  }
  return net;
}

Network build_topology(Topology kind, int n) {
  std::vector<std::pair<int, int>> edges;
  switch (kind) {
    case Topology::SingleAgent:
      if (n != 1) throw std::invalid_argument("single-agent topology has n=1");
      return Network::from_adjacency(1, {1});  // self-loop
    case Topology::Line:
      if (n < 2) throw std::invalid_argument("line needs n >= 2");
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      break;
    case Topology::Wheel:  // wheel here means the n-cycle
      if (n < 3) throw std::invalid_argument("wheel needs n >= 3");
      for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
      break;
    case Topology::Complete:
      if (n < 2) throw std::invalid_argument("complete needs n >= 2");
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
      break;
    case Topology::Star:
      if (n < 3) throw std::invalid_argument("star needs n >= 3");
      for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
      break;
    case Topology::Paw:
      if (n != 4) throw std::invalid_argument("paw is a 4-node topology");
      edges = {{0, 1}, {1, 2}, {1, 3}, {2, 3}};
      break;
  }
  return Network::from_adjacency(n, undirected_edges(n, edges));
}

Network build_topology(const std::string& label) {
  if (label == "SA") return build_topology(Topology::SingleAgent, 1);
  if (label == "A") return build_topology(Topology::Line, 2);
  if (label == "B") return build_topology(Topology::Line, 3);
  if (label == "C") return build_topology(Topology::Wheel, 3);
  if (label == "D") return build_topology(Topology::Line, 4);
  if (label == "E") return build_topology(Topology::Star, 4);
  if (label == "F") return build_topology(Topology::Wheel, 4);
  if (label == "G") return build_topology(Topology::Complete, 4);
  if (label == "H") return build_topology(Topology::Paw, 4);
  throw std::invalid_argument("unknown topology label '" + label +
                              "' (expected A..H or SA)");
}

const std::vector<std::string>& topology_labels() {
  static const std::vector<std::string> labels = {"A", "B", "C", "D", "E",
                                                  "F", "G", "H", "SA"};
  return labels;
}

int degree(const Network& net, int i) {
  int deg = 0;
  for (int j = 0; j < net.n; ++j) deg += net.edge(i, j) ? 1 : 0;
  return deg;
}

bool is_strongly_connected(const Network& net) {
  return reaches_all(net, false) && reaches_all(net, true);
}

MixingMatrix mixing_matrix(const Network& net, double b) {
  if (b < 0.0 || b > 1.0) throw std::invalid_argument("b must lie in [0,1]");
  MixingMatrix mix;
  mix.b = b;
  mix.w = la::Matrix(net.n);
  for (int i = 0; i < net.n; ++i)
    for (int j = 0; j < net.n; ++j)
      mix.w(i, j) = (i == j ? b : 0.0) + (1.0 - b) * net.weights(i, j);
  return mix;
}

double stationary_residual(const MixingMatrix& mix, const std::vector<double>& pi) {
  const int n = mix.w.n;
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += pi[i] * mix.w(i, j);
    worst = std::max(worst, std::fabs(acc - pi[j]));
  }
  return worst;
}

StationaryDistribution stationary(const MixingMatrix& mix) {
  const int n = mix.w.n;
  if (n == 1) return {{1.0}};  // single state, pi trivially unique
  if (mix.b >= 1.0)
    throw std::invalid_argument("b = 1 decouples agents; no unique stationary pi");

  // (W^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
  la::Matrix a(n);
  std::vector<double> rhs(n, 0.0);
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = mix.w(j, i) - (i == j ? 1.0 : 0.0);
  for (int j = 0; j < n; ++j) a(n - 1, j) = 1.0;
  rhs[n - 1] = 1.0;

  std::vector<double> pi;
  bool ok = la::solve(a, rhs, pi);
  if (ok) {
    for (double& p : pi)
      if (p < 0.0 && p > -1e-12) p = 0.0;  // scrub round-off
    for (double p : pi) ok = ok && p >= 0.0;
    ok = ok && stationary_residual(mix, pi) <= 1e-10;
  }
  if (!ok) {
    // Lazy power iteration: (I + W^T)/2 has the same stationary vector and
    // is aperiodic even when W itself is periodic (b = 0 on bipartite graphs).
    pi.assign(n, 1.0 / n);
    for (long it = 0; it < 1000000; ++it) {
      std::vector<double> next(n, 0.0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) next[j] += pi[i] * mix.w(i, j);
      double delta = 0.0, total = 0.0;
      for (int j = 0; j < n; ++j) {
        next[j] = 0.5 * (next[j] + pi[j]);
        total += next[j];
      }
      for (int j = 0; j < n; ++j) {
        next[j] /= total;
        delta = std::max(delta, std::fabs(next[j] - pi[j]));
      }
      pi.swap(next);
      if (delta < 1e-15) break;
    }
    if (stationary_residual(mix, pi) > 1e-10)
      throw std::runtime_error("stationary distribution did not converge");
  }
  return {pi};
}

}  // namespace conbias
