#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "triadnet/dynamics.hpp"
#include "triadnet/errors.hpp"
#include "triadnet/measures.hpp"
#include "triadnet/trgm.hpp"

using namespace triadnet;
using namespace oracle;

namespace {

constexpr double kPi = std::numbers::pi;

DirectedGraph bidirectional_complete(std::size_t n) {
  std::vector<Arc> arcs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if (u != v) arcs.push_back({u, v});
  return DirectedGraph(n, arcs);
}

bool strongly_connected(const DirectedGraph& g) {
  return connected_components(g, ComponentMode::strong).size() == 1;
}

}  // namespace

TEST_CASE("noise-free uncoupled oscillator follows the exact solution") {
  const DirectedGraph g(2);
  OscillatorParams p;
  p.b = 0.0;
  p.noise = 0.0;
  std::vector<std::complex<double>> x{{1.0, 0.0}, {0.0, 2.0}};
  const auto x0 = x;
  evolve(g, p, x, 100);  // one time unit
  const std::complex<double> hl = std::complex<double>(-p.a, p.omega) * p.dt;
  const auto heun = 1.0 + hl + hl * hl / 2.0;  // one-step amplification
  // global error bound of a second-order scheme: steps * |h lambda|^3 / 6
  const double bound = 100 * std::pow(std::abs(hl), 3) / 6 * 1.05;
  for (std::size_t j = 0; j < 2; ++j) {
    const auto exact = x0[j] * std::exp(std::complex<double>(-p.a, p.omega) * 1.0);
    CHECK(std::abs(x[j] - x0[j] * std::pow(heun, 100)) < 1e-12);
    CHECK(std::abs(x[j] - exact) / std::abs(exact) < bound);
  }
}

TEST_CASE("uncoupled noisy oscillators match the stationary OU variance") {
  const DirectedGraph g(4);
  for (double a : {1.0, 2.0}) {
    OscillatorParams p;
    p.a = a;
    p.b = 0.0;
    p.steps = 200000;
    p.transient = 2000;
    p.seed = 3;
    const auto o = simulate(g, p);
    // dx = (-a + i w) x dt + dW with unit-variance real and imaginary parts:
    // E|x|^2 = 1 / a.
    CHECK(o.output == doctest::Approx(1.0 / a).epsilon(0.05));
    CHECK(o.correlation < 3.0 / std::sqrt(a * p.steps * p.dt));
  }
}

TEST_CASE("isolated motifs") {
  SweepOptions o;
  o.base.steps = 20000;
  o.base.transient = 1000;
  o.workers = 1;
  const auto grid = theta_grid(24);
  const std::vector<Arc> ffl{{0, 1}, {0, 2}, {1, 2}}, cycle{{0, 1}, {1, 2}, {2, 0}};

  const auto s = theta_sweep(DirectedGraph(3, ffl), grid, 4, o);
  const auto argmax = std::max_element(s.correlation.begin(), s.correlation.end()) - s.correlation.begin();
  const auto argmin = std::min_element(s.correlation.begin(), s.correlation.end()) - s.correlation.begin();
  CHECK((argmax <= 1 || argmax >= 23));
  CHECK(std::abs(argmin - 12) <= 1);

  const auto c = theta_sweep(DirectedGraph(3, cycle), grid, 4, o);
  for (double target : {kPi / 3, kPi, 5 * kPi / 3}) {
    const auto i = nearest_grid_index(grid, target);
    CHECK(is_local_minimum(c.correlation, c.correlation_se, i, 2));
  }
  for (double target : {0.0, 2 * kPi / 3, 4 * kPi / 3}) {
    const auto i = nearest_grid_index(grid, target);
    CHECK(c.correlation[i] > c.correlation[(i + 4) % 24]);
  }
}

TEST_CASE("coupling strength") {
  const std::vector<Arc> cycle{{0, 1}, {1, 2}, {2, 0}}, ffl{{0, 1}, {0, 2}, {1, 2}};
  CHECK(adjacency_spectral_radius(DirectedGraph(3, cycle)) == doctest::Approx(1.0));
  CHECK(default_coupling(DirectedGraph(3, cycle)) == doctest::Approx(0.8));
  CHECK(adjacency_spectral_radius(bidirectional_complete(5)) == doctest::Approx(4.0));
  CHECK(default_coupling(DirectedGraph(3, ffl), 0.5) == 0.5);
}

TEST_CASE("spectral gap") {
  for (std::size_t n : {3u, 5u, 10u, 20u})
    CHECK(spectral_gap(bidirectional_complete(n)) == doctest::Approx(1.0 - 1.0 / (n - 1)).epsilon(1e-9));
  const std::vector<Arc> pairs{{0, 1}, {1, 0}, {2, 3}, {3, 2}};
  CHECK(spectral_gap(DirectedGraph(4, pairs)) == 0.0);

  std::mt19937_64 rng(2);
  int tested = 0;
  while (tested < 100) {
    const auto g = random_digraph(rng, 8 + tested % 15, 0.3);
    if (!strongly_connected(g)) continue;
    ++tested;
    for (auto norm : {Normalization::row, Normalization::column}) {
      const auto ev = coupling_eigenvalues(g, norm);
      CHECK(std::abs(ev.front()) == doctest::Approx(1.0).epsilon(1e-9));
      double lead = -1e9;
      for (auto e : ev) lead = std::max(lead, e.real());
      CHECK(std::abs(lead - 1.0) < 1e-9);
      const double d = spectral_gap(g, norm);
      CHECK(d >= 0.0);
      // relabeling invariance
      std::vector<NodeId> perm(g.node_count());
      std::iota(perm.begin(), perm.end(), NodeId{0});
      std::shuffle(perm.begin(), perm.end(), rng);
      CHECK(spectral_gap(g.relabeled(perm), norm) == doctest::Approx(d).epsilon(1e-9));
    }
  }

  const std::vector<Arc> sink{{0, 1}, {1, 2}};
  try {
    spectral_gap(DirectedGraph(3, sink));
    FAIL("expected a normalization error");
  } catch (const NormalizationError& e) {
    CHECK(e.nodes() == std::vector<std::size_t>{2});
  }
}

TEST_CASE("removal experiment") {
  std::mt19937_64 rng(6);
  DirectedGraph g;
  do g = random_digraph(rng, 30, 0.15);
  while (!strongly_connected(g));

  RemovalOptions opts;
  opts.ranking = RemovalRanking::random;
  opts.seed = 4;
  const auto a = removal_experiment(g, opts);
  const auto b = removal_experiment(g, opts);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].node == b[i].node);
    CHECK(a[i].delta == b[i].delta);
  }
  CHECK(!a.front().node.has_value());
  CHECK(a.front().edges_removed == 0);
  CHECK(a.front().delta == doctest::Approx(spectral_gap(g)));
  CHECK(a.back().nodes_left == 0);
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i].edges_removed >= a[i - 1].edges_removed);
  CHECK(a.back().edges_removed == g.arc_count());

  // degree ranking: first victim has the largest total degree, smallest id on ties
  opts.ranking = RemovalRanking::degree;
  opts.max_removals = 3;
  const auto d = removal_experiment(g, opts);
  CHECK(d.size() == 4);
  std::size_t best = 0;
  for (NodeId u = 1; u < g.node_count(); ++u)
    if (g.in_degree(u) + g.out_degree(u) > g.in_degree(best) + g.out_degree(best)) best = u;
  CHECK(*d[1].node == best);
  opts.recompute = true;
  CHECK(*removal_experiment(g, opts)[1].node == best);

  // pruning cascades along a path into a cycle
  const std::vector<Arc> chain{{0, 1}, {1, 2}, {2, 0}, {3, 0}, {4, 3}};
  RemovalOptions s;
  s.ranking = RemovalRanking::scores;
  s.scores = {0, 0, 0, 1, 0};
  s.max_removals = 1;
  const auto r = removal_experiment(DirectedGraph(5, chain), s);
  CHECK(r[1].node == NodeId{3});
  CHECK(r[1].pruned == std::vector<NodeId>{4});  // its only arc went to 3
  CHECK(r[1].edges_removed == 2);
  CHECK(r[1].nodes_left == 3);
}

TEST_CASE("z profile under removal") {
  PatternCounts counts{};
  counts[0] = 86;
  counts[kFeedForwardLoop - 1] = 31;
  const auto g = sample_trgm(27u, counts, 5);
  std::vector<NodeId> order(27);
  std::iota(order.begin(), order.end(), NodeId{0});
  ZProfileOptions zo;
  zo.ensemble.instances = 30;
  zo.ensemble.steps_per_edge = 20;
  zo.ensemble.workers = 1;
  const auto seq = z_profile_under_removal(g, order, 5, 2, zo);
  REQUIRE(seq.size() == 3);
  std::vector<bool> removed(27, false);
  for (int i = 0; i < 5; ++i) removed[i] = true;
  const auto fresh = z_profile(g.without_nodes(removed), zo);
  CHECK(seq[1].z == fresh.z);
  CHECK(seq[1].original[ZProfile::index(kFeedForwardLoop)] < seq[0].original[ZProfile::index(kFeedForwardLoop)]);

  // isolated nodes leave the profile unchanged
  std::vector<Arc> arcs = g.arcs();
  const DirectedGraph padded(30, arcs);
  const auto iso = z_profile_under_removal(padded, {27, 28, 29}, 3, 1, zo);
  CHECK(iso[0].original == iso[1].original);
  CHECK(iso[0].mean == iso[1].mean);
}
