#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "conbias/linalg.hpp"

namespace conbias {

enum class Topology { SingleAgent, Line, Wheel, Complete, Star, Paw };

// Directed listening structure: adj[i*n+j] = 1 means i pays attention to j.
// weights is the row-normalized matrix ghat with ghat_ij = g_ij / outdeg(i).
struct Network {
  int n = 0;
  std::vector<std::uint8_t> adj;
  la::Matrix weights;

  bool edge(int i, int j) const { return adj[static_cast<std::size_t>(i) * n + j] != 0; }

  // Validates that every node has at least one out-neighbor (otherwise the
  // normalized weights are undefined) and builds ghat.
  static Network from_adjacency(int n, std::vector<std::uint8_t> adjacency);
};

// Classic topologies. Canonical node order, so partisan placement is
// reproducible: line = path order; wheel = cycle order; star = node 0 is the
// center; paw = node 0 pendant, node 1 hub, nodes 2,3 the remaining triangle.
// The single-agent graph is the one-node self-loop.
Network build_topology(Topology kind, int n);

// Paper labels "A".."H" plus "SA" for the single agent.
Network build_topology(const std::string& label);
const std::vector<std::string>& topology_labels();  // A..H, SA

int degree(const Network& net, int i);  // |N_i^out|
bool is_strongly_connected(const Network& net);

// W = b*I + (1-b)*ghat, row-stochastic.
struct MixingMatrix {
  la::Matrix w;
  double b = 0.5;
};
MixingMatrix mixing_matrix(const Network& net, double b);

struct StationaryDistribution {
  std::vector<double> pi;
};

// Left unit eigenvector of W, normalized to sum 1: pi^T W = pi^T.
// Direct linear solve; lazy power iteration as a fallback. Requires the
// underlying graph to be strongly connected and b < 1.
StationaryDistribution stationary(const MixingMatrix& mix);

double stationary_residual(const MixingMatrix& mix, const std::vector<double>& pi);

}  // namespace conbias
