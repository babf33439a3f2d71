#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "triadnet/errors.hpp"
#include "triadnet/measures.hpp"

using namespace triadnet;

namespace {

// 1-based arc list helper.
DirectedGraph from_one_based(std::size_t n, std::initializer_list<std::pair<int, int>> arcs) {
  std::vector<Arc> list;
  for (auto [u, v] : arcs) list.push_back({static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1)});
  return DirectedGraph(n, list);
}

DirectedGraph complete(std::size_t n) {
  std::vector<Arc> arcs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if (u != v) arcs.push_back({u, v});
  return DirectedGraph(n, arcs);
}

// Graph with weak components {1..10},{11..13} and strong components
// {1..6},{7},{8..10},{11..13}.
DirectedGraph component_fixture() {
  return from_one_based(13, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 1}, {3, 6},
                             {6, 7}, {7, 8}, {8, 9}, {9, 10}, {10, 8},
                             {11, 12}, {12, 13}, {13, 11}});
}

std::vector<std::vector<bool>> reachability(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (NodeId u = 0; u < n; ++u) {
    r[u][u] = true;
    for (NodeId v : g.out_neighbors(u)) r[u][v] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  return r;
}

const std::size_t kInf = 1u << 30;

std::vector<std::vector<std::size_t>> all_pairs(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, kInf));
  for (NodeId u = 0; u < n; ++u) {
    d[u][u] = 0;
    for (NodeId v : g.out_neighbors(u)) d[u][v] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Geodesic counting by dynamic programming over distances, then the
// sigma_st(v) = sigma_sv * sigma_vt identity.
std::vector<double> brute_betweenness(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  auto d = all_pairs(g);
  std::vector<std::vector<double>> sigma(n, std::vector<double>(n, 0.0));
  for (std::size_t s = 0; s < n; ++s) {
    sigma[s][s] = 1;
    std::size_t maxd = 0;
    for (std::size_t t = 0; t < n; ++t)
      if (d[s][t] < kInf) maxd = std::max(maxd, d[s][t]);
    for (std::size_t len = 1; len <= maxd; ++len)
      for (std::size_t t = 0; t < n; ++t)
        if (d[s][t] == len)
          for (NodeId p : g.in_neighbors(static_cast<NodeId>(t)))
            if (d[s][p] == len - 1) sigma[s][t] += sigma[s][p];
  }
  std::vector<double> b(n, 0.0);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      if (s == t || d[s][t] >= kInf) continue;
      for (std::size_t v = 0; v < n; ++v)
        if (v != s && v != t && d[s][v] + d[v][t] == d[s][t])
          b[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
    }
  return b;
}

}  // namespace

TEST_CASE("edge list loading") {
  std::istringstream a("a b\nb a\n");
  auto la = parse_edge_list(a);
  CHECK(la.graph.node_count() == 2);
  CHECK(la.graph.arcs() == std::vector<Arc>{{0, 1}, {1, 0}});

  std::istringstream b("# comment\na b\n\na b  # again\n");
  auto lb = parse_edge_list(b);
  CHECK(lb.graph.arc_count() == 1);
  CHECK(lb.duplicate_arcs == 1);

  std::istringstream c("a a\n");
  auto lc = parse_edge_list(c);
  CHECK(lc.graph.arc_count() == 0);
  CHECK(lc.self_arcs == 1);

  std::istringstream bad("a b\nc\n");
  try {
    parse_edge_list(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  std::istringstream s("x y +1\ny z -1\n");
  auto ls = parse_signed_edge_list(s);
  CHECK(ls.graph.edge_count() == 2);
  CHECK(ls.graph.sign(1, 2) == -1);
  CHECK(ls.graph.sign(2, 1) == -1);
  CHECK(ls.graph.sign(0, 2) == 0);
}

TEST_CASE("degrees and density") {
  auto fig = from_one_based(4, {{1, 2}, {1, 3}, {1, 4}, {3, 1}, {4, 3}});
  auto d = degrees(fig);
  std::vector<std::size_t> out;
  for (auto p : d) out.push_back(p.out);
  CHECK(out == std::vector<std::size_t>{3, 0, 1, 1});
  CHECK(density(fig) == doctest::Approx(5.0 / 12.0));
  for (auto p : degrees(DirectedGraph(4))) CHECK(p == DegreePair{0, 0});
  for (auto p : degrees(complete(6))) CHECK(p == DegreePair{5, 5});
  CHECK(density(complete(6)) == 1.0);
  CHECK(density(DirectedGraph(10)) == 0.0);
  CHECK_THROWS_AS(density(DirectedGraph(1)), UndefinedInputError);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    auto g = oracle::random_digraph(rng, 30, 0.1);
    std::size_t in = 0, o = 0;
    for (auto p : degrees(g)) {
      in += p.in;
      o += p.out;
    }
    CHECK(in == g.arc_count());
    CHECK(o == g.arc_count());
  }
}

TEST_CASE("components") {
  auto g = component_fixture();
  auto weak = connected_components(g, ComponentMode::weak);
  auto strong = connected_components(g, ComponentMode::strong);
  REQUIRE(weak.size() == 2);
  CHECK(weak[0].size() == 10);
  CHECK(weak[1] == std::vector<NodeId>{10, 11, 12});
  REQUIRE(strong.size() == 4);
  CHECK(strong[0] == std::vector<NodeId>{0, 1, 2, 3, 4, 5});
  CHECK(strong[1] == std::vector<NodeId>{6});
  CHECK(strong[2] == std::vector<NodeId>{7, 8, 9});
  CHECK(strong[3] == std::vector<NodeId>{10, 11, 12});

  CHECK(connected_components(DirectedGraph(3), ComponentMode::weak).size() == 3);
  CHECK(connected_components(DirectedGraph(3), ComponentMode::strong).size() == 3);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto r = oracle::random_digraph(rng, 50, 0.03);
    auto reach = reachability(r);
    auto comps = connected_components(r, ComponentMode::strong);
    std::vector<std::size_t> label(50);
    std::size_t total = 0;
    for (std::size_t k = 0; k < comps.size(); ++k) {
      total += comps[k].size();
      for (NodeId v : comps[k]) label[v] = k;
    }
    CHECK(total == 50);
    for (std::size_t i = 0; i < 50; ++i)
      for (std::size_t j = 0; j < 50; ++j)
        CHECK((label[i] == label[j]) == (reach[i][j] && reach[j][i]));
  }
}

TEST_CASE("clustering") {
  auto tri = from_one_based(3, {{1, 2}, {2, 3}, {3, 1}});
  for (double c : local_clustering(tri)) CHECK(c == 1.0);
  CHECK(global_clustering(tri) == 1.0);
  auto star = from_one_based(4, {{1, 2}, {1, 3}, {1, 4}});
  CHECK(global_clustering(star) == 0.0);
  CHECK(local_clustering(star)[1] == 0.0);

  // naive enumeration oracle for the global coefficient
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = oracle::random_digraph(rng, 30, 0.08);
    std::vector<std::vector<bool>> a(30, std::vector<bool>(30, false));
    for (const Arc& arc : g.arcs()) a[arc.source][arc.target] = a[arc.target][arc.source] = true;
    double triangles = 0, wedges = 0;
    for (int i = 0; i < 30; ++i) {
      int k = 0;
      for (int j = 0; j < 30; ++j) k += a[i][j];
      wedges += k * (k - 1);
      for (int j = i + 1; j < 30; ++j)
        for (int l = j + 1; l < 30; ++l) triangles += a[i][j] && a[j][l] && a[i][l];
    }
    CHECK(triangle_count(g) == static_cast<std::uint64_t>(triangles));
    CHECK(global_clustering(g) == doctest::Approx(wedges > 0 ? 6 * triangles / wedges : 0.0));
    for (double c : local_clustering(g)) CHECK((c >= 0.0 && c <= 1.0));
  }

  // undirected ER with edge probability 0.3 has <C> close to 0.3
  std::vector<double> means;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 r(seed);
    std::bernoulli_distribution coin(0.3);
    std::vector<Arc> arcs;
    for (NodeId u = 0; u < 100; ++u)
      for (NodeId v = u + 1; v < 100; ++v)
        if (coin(r)) arcs.push_back({u, v});
    means.push_back(average_clustering(DirectedGraph(100, arcs)));
  }
  double m = std::accumulate(means.begin(), means.end(), 0.0) / means.size();
  double var = 0;
  for (double x : means) var += (x - m) * (x - m);
  double se = std::sqrt(var / (means.size() - 1) / means.size());
  CHECK(std::abs(m - 0.3) < 3 * se + 1e-3);
}

TEST_CASE("shortest paths") {
  auto cycle = from_one_based(3, {{1, 2}, {2, 3}, {3, 1}});
  auto s = shortest_path_stats(cycle);
  REQUIRE(s.average_length);
  CHECK(*s.average_length == doctest::Approx(1.5));
  CHECK(*s.diameter == 2);
  auto iso = shortest_path_stats(DirectedGraph(2));
  CHECK_FALSE(iso.average_length);
  CHECK(iso.unreachable_pairs == 2);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = oracle::random_digraph(rng, 30, 0.06);
    auto d = all_pairs(g);
    double total = 0;
    std::size_t reach = 0, unreach = 0, diam = 0;
    for (std::size_t i = 0; i < 30; ++i)
      for (std::size_t j = 0; j < 30; ++j) {
        if (i == j) continue;
        if (d[i][j] >= kInf) ++unreach;
        else {
          ++reach;
          total += d[i][j];
          diam = std::max(diam, d[i][j]);
        }
      }
    auto st = shortest_path_stats(g);
    CHECK(st.reachable_pairs == reach);
    CHECK(st.unreachable_pairs == unreach);
    if (reach) {
      CHECK(*st.average_length == doctest::Approx(total / reach));
      CHECK(*st.diameter == diam);
    }
  }
}

TEST_CASE("betweenness") {
  auto fig = from_one_based(5, {{1, 2}, {1, 3}, {2, 4}, {3, 4}, {4, 3}, {3, 2}, {4, 5}});
  auto b = betweenness(fig);
  std::vector<double> want{0, 1, 2, 4, 0};
  for (int i = 0; i < 5; ++i) CHECK(b[i] == doctest::Approx(want[i]));
  for (double x : betweenness(complete(5))) CHECK(x == 0.0);

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = oracle::random_digraph(rng, 25, 0.1);
    auto fast = betweenness(g);
    auto slow = brute_betweenness(g);
    for (int i = 0; i < 25; ++i) CHECK(fast[i] == doctest::Approx(slow[i]));
  }

  // out-tree: every node's betweenness is (#ancestors excluding itself) x (#descendants)
  std::vector<Arc> arcs;
  std::vector<int> parent(25, -1);
  for (NodeId v = 1; v < 25; ++v) {
    parent[v] = static_cast<int>(rng() % v);
    arcs.push_back({static_cast<NodeId>(parent[v]), v});
  }
  DirectedGraph tree(25, arcs);
  auto bt = betweenness(tree);
  auto reach = reachability(tree);
  for (NodeId v = 0; v < 25; ++v) {
    double up = 0, down = 0;
    for (NodeId u = 0; u < 25; ++u) {
      if (u == v) continue;
      up += reach[u][v];
      down += reach[v][u];
    }
    CHECK(bt[v] == doctest::Approx(up * down));
  }
}

TEST_CASE("pagerank") {
  std::mt19937_64 rng(1);
  auto g = oracle::random_digraph(rng, 10, 0.2);
  auto u = pagerank(g, 0.0);
  for (double x : u) CHECK(x == doctest::Approx(0.1));
  auto pair = pagerank(from_one_based(2, {{1, 2}, {2, 1}}), 0.85);
  CHECK(pair[0] == doctest::Approx(0.5));

  // dense oracle: iterate the Google matrix explicitly
  for (int trial = 0; trial < 10; ++trial) {
    auto h = oracle::random_digraph(rng, 10, 0.15);
    const double d = 0.85;
    std::vector<std::vector<double>> G(10, std::vector<double>(10, 0.0));
    for (NodeId j = 0; j < 10; ++j)
      for (NodeId i = 0; i < 10; ++i) {
        double walk = h.out_degree(j) == 0 ? 0.1 : (h.has_arc(j, i) ? 1.0 / h.out_degree(j) : 0.0);
        G[i][j] = (1 - d) / 10 + d * walk;
      }
    std::vector<double> x(10, 0.1), y(10);
    for (int it = 0; it < 2000; ++it) {
      for (int i = 0; i < 10; ++i) {
        y[i] = 0;
        for (int j = 0; j < 10; ++j) y[i] += G[i][j] * x[j];
      }
      x = y;
    }
    auto pr = pagerank(h, d, 1e-13);
    CHECK(std::accumulate(pr.begin(), pr.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 10; ++i) CHECK(std::abs(pr[i] - x[i]) < 1e-10);

    // permutation equivariance
    std::vector<NodeId> perm(10);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto moved = pagerank(h.relabeled(perm), d, 1e-13);
    for (int i = 0; i < 10; ++i) CHECK(std::abs(moved[perm[i]] - pr[i]) < 1e-10);
  }
}

TEST_CASE("erdos-renyi generator") {
  CHECK(generate_er(20, 0.0, 1).arc_count() == 0);
  CHECK(generate_er(20, 1.0, 1) == complete(20));
  CHECK(generate_er(50, 0.1, 7) == generate_er(50, 0.1, 7));

  // pooled in/out-degree histogram of 10 graphs against Poisson((n-1)p);
  // a single graph's histogram alone scatters around TV 0.025
  const double lambda = 1999 * 0.002;
  std::vector<double> hist(40, 0.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = generate_er(2000, 0.002, seed);
    for (NodeId u = 0; u < 2000; ++u) {
      hist[std::min<std::size_t>(g.in_degree(u), 39)] += 1.0 / 40000;
      hist[std::min<std::size_t>(g.out_degree(u), 39)] += 1.0 / 40000;
    }
  }
  double tv = 0, pk = std::exp(-lambda), tail = 1.0;
  for (int k = 0; k < 39; ++k) {
    tv += std::abs(hist[k] - pk);
    tail -= pk;
    pk *= lambda / (k + 1);
  }
  tv += std::abs(hist[39] - tail);
  CHECK(tv / 2 < 0.02);

  // two fixed arcs are uncorrelated across seeds
  const int runs = 100000;
  double x = 0, y = 0, xy = 0;
  for (int s = 0; s < runs; ++s) {
    auto h = generate_er(4, 0.3, static_cast<std::uint64_t>(s));
    double a = h.has_arc(0, 1), b = h.has_arc(2, 3);
    x += a;
    y += b;
    xy += a * b;
  }
  double cov = xy / runs - (x / runs) * (y / runs);
  double sd = 0.3 * 0.7 / std::sqrt(static_cast<double>(runs));
  CHECK(std::abs(cov) < 3 * sd);
}
