#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "conbias/network.hpp"

using namespace conbias;

namespace {

double row_sum_error(const la::Matrix& m) {
  double worst = 0.0;
  for (int i = 0; i < m.n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < m.n; ++j) acc += m(i, j);
    worst = std::max(worst, std::fabs(acc - 1.0));
  }
  return worst;
}

// Degree-proportional oracle: for an undirected graph the random walk's
// stationary weights are d_i / sum(d), and adding the lazy b*I part does not
// change them.
std::vector<double> degree_pi(const Network& net) {
  std::vector<double> pi(net.n);
  double total = 0.0;
  for (int i = 0; i < net.n; ++i) {
    pi[i] = degree(net, i);
    total += pi[i];
  }
  for (double& p : pi) p /= total;
  return pi;
}

}  // namespace

TEST_CASE("topology construction matches the catalog") {
  const Network tri = build_topology(Topology::Wheel, 3);
  for (int i = 0; i < 3; ++i) CHECK(degree(tri, i) == 2);

  const Network star = build_topology(Topology::Star, 4);
  CHECK(degree(star, 0) == 3);
  for (int i = 1; i < 4; ++i) CHECK(degree(star, i) == 1);

  const Network paw = build_topology(Topology::Paw, 4);
  CHECK(degree(paw, 0) == 1);  // pendant
  CHECK(degree(paw, 1) == 3);  // hub
  CHECK(degree(paw, 2) == 2);
  CHECK(degree(paw, 3) == 2);
  int edge_sum = 0;
  for (int i = 0; i < 4; ++i) edge_sum += degree(paw, i);
  CHECK(edge_sum == 8);  // 4 undirected edges

  const Network line4 = build_topology(Topology::Line, 4);
  CHECK(degree(line4, 0) == 1);
  CHECK(degree(line4, 1) == 2);

  CHECK_THROWS_AS(build_topology(Topology::Paw, 5), std::invalid_argument);
  CHECK_THROWS_AS(build_topology(Topology::Line, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_topology("Z"), std::invalid_argument);
}

TEST_CASE("labels map to the benchmark networks") {
  struct Expect {
    const char* label;
    int n;
    int max_degree;
  };
  const Expect table[] = {{"A", 2, 1}, {"B", 3, 2}, {"C", 3, 2},
                          {"D", 4, 2}, {"E", 4, 3}, {"F", 4, 2},
                          {"G", 4, 3}, {"H", 4, 3}, {"SA", 1, 1}};
  for (const Expect& e : table) {
    const Network net = build_topology(e.label);
    CHECK(net.n == e.n);
    int maxd = 0;
    for (int i = 0; i < net.n; ++i) maxd = std::max(maxd, degree(net, i));
    CHECK(maxd == e.max_degree);
    CHECK(is_strongly_connected(net));
  }
}

TEST_CASE("rows of ghat and W are stochastic") {
  for (const std::string& label : topology_labels()) {
    const Network net = build_topology(label);
    CHECK(row_sum_error(net.weights) <= 1e-12);
    for (double b : {0.0, 0.3, 0.5, 1.0})
      CHECK(row_sum_error(mixing_matrix(net, b).w) <= 1e-12);
  }
}

TEST_CASE("mixing matrix limits and a worked example") {
  const Network line3 = build_topology("B");
  const MixingMatrix id = mixing_matrix(line3, 1.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(id.w(i, j) == doctest::Approx(i == j ? 1 : 0));

  const MixingMatrix pure = mixing_matrix(line3, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(pure.w(i, j) == doctest::Approx(line3.weights(i, j)));

  const MixingMatrix half = mixing_matrix(line3, 0.5);
  const double expected[3][3] = {{0.5, 0.5, 0.0}, {0.25, 0.5, 0.25}, {0.0, 0.5, 0.5}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(half.w(i, j) == doctest::Approx(expected[i][j]));
}

TEST_CASE("strong connectivity") {
  CHECK(is_strongly_connected(build_topology(Topology::Complete, 4)));
  // two isolated dyads
  const Network dyads = Network::from_adjacency(
      4, {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
  CHECK_FALSE(is_strongly_connected(dyads));
  // a directed cycle is strongly connected, an acyclic orientation is not
  const Network cycle = Network::from_adjacency(3, {0, 1, 0, 0, 0, 1, 1, 0, 0});
  CHECK(is_strongly_connected(cycle));
  CHECK_THROWS_AS(Network::from_adjacency(2, {0, 1, 0, 0}), std::invalid_argument);
}

TEST_CASE("stationary distribution: worked examples and oracle") {
  const auto uniform3 = stationary(mixing_matrix(build_topology("C"), 0.5));
  for (double p : uniform3.pi) CHECK(p == doctest::Approx(1.0 / 3.0));

  const auto line3 = stationary(mixing_matrix(build_topology("B"), 0.5));
  CHECK(line3.pi[0] == doctest::Approx(0.25));
  CHECK(line3.pi[1] == doctest::Approx(0.5));
  CHECK(line3.pi[2] == doctest::Approx(0.25));

  for (const std::string& label : topology_labels()) {
    const Network net = build_topology(label);
    for (double b : {0.0, 0.25, 0.5, 0.9}) {
      const MixingMatrix mix = mixing_matrix(net, b);
      const auto sd = stationary(mix);
      double total = 0.0;
      for (double p : sd.pi) {
        CHECK(p >= 0.0);
        total += p;
      }
      CHECK(total == doctest::Approx(1.0));
      CHECK(stationary_residual(mix, sd.pi) <= 1e-10);
      // undirected graphs: degree-proportional stationary weights
      const auto oracle = degree_pi(net);
      for (int i = 0; i < net.n; ++i)
        CHECK(sd.pi[i] == doctest::Approx(oracle[i]).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(stationary(mixing_matrix(build_topology("B"), 1.0)),
                  std::invalid_argument);
}

TEST_CASE("regular networks have uniform stationary weights") {
  for (const char* label : {"A", "C", "F", "G"}) {
    const Network net = build_topology(label);
    const auto sd = stationary(mixing_matrix(net, 0.5));
    for (double p : sd.pi) CHECK(p == doctest::Approx(1.0 / net.n));
  }
}

TEST_CASE("W^t converges to the rank-one stationary matrix") {
  for (const std::string& label : topology_labels()) {
    const Network net = build_topology(label);
    const MixingMatrix mix = mixing_matrix(net, 0.5);
    const auto sd = stationary(mix);

    la::Matrix power = la::Matrix::identity(net.n);
    for (int t = 0; t < 500; ++t) power = la::matmul(power, mix.w);
    double worst = 0.0;
    for (int i = 0; i < net.n; ++i)
      for (int j = 0; j < net.n; ++j)
        worst = std::max(worst, std::fabs(power(i, j) - sd.pi[j]));
    CHECK(worst <= 1e-8);

    // the solver agrees with an empirical row of W^200
    la::Matrix p200 = la::Matrix::identity(net.n);
    for (int t = 0; t < 200; ++t) p200 = la::matmul(p200, mix.w);
    for (int j = 0; j < net.n; ++j)
      CHECK(p200(0, j) == doctest::Approx(sd.pi[j]).epsilon(1e-8));
  }
}
