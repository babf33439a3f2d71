#include "triadnet/measures.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "triadnet/errors.hpp"
#include "triadnet/rng.hpp"

namespace triadnet {

std::vector<DegreePair> degrees(const DirectedGraph& g) {
  std::vector<DegreePair> result(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) result[u] = {g.in_degree(u), g.out_degree(u)};
  return result;
}

double density(const DirectedGraph& g) {
  const double n = static_cast<double>(g.node_count());
  if (g.node_count() < 2) throw UndefinedInputError("density needs at least 2 nodes");
  return static_cast<double>(g.arc_count()) / (n * (n - 1));
}

double density(const SignedGraph& g) {
  const double n = static_cast<double>(g.node_count());
  if (g.node_count() < 2) throw UndefinedInputError("density needs at least 2 nodes");
  return 2.0 * static_cast<double>(g.edge_count()) / (n * (n - 1));
}

namespace {

std::vector<std::vector<NodeId>> group_by_label(const std::vector<std::size_t>& label) {
  std::vector<std::vector<NodeId>> groups;
  std::vector<std::size_t> slot(label.size(), SIZE_MAX);
  for (NodeId u = 0; u < label.size(); ++u) {
    std::size_t& s = slot[label[u]];
    if (s == SIZE_MAX) {
      s = groups.size();
      groups.emplace_back();
    }
    groups[s].push_back(u);
  }
  return groups;
}

std::vector<std::size_t> weak_labels(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> label(n, SIZE_MAX);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (label[s] != SIZE_MAX) continue;
    label[s] = s;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (auto nbrs : {g.out_neighbors(u), g.in_neighbors(u)})
        for (NodeId v : nbrs)
          if (label[v] == SIZE_MAX) {
            label[v] = s;
            stack.push_back(v);
          }
    }
  }
  return label;
}

// Iterative Tarjan.
std::vector<std::size_t> strong_labels(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  constexpr std::size_t unvisited = SIZE_MAX;
  std::vector<std::size_t> index(n, unvisited), low(n, 0), label(n, unvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> stack;
  std::vector<std::pair<NodeId, std::size_t>> call;
  std::size_t counter = 0;
  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& [u, pos] = call.back();
      if (pos == 0) {
        index[u] = low[u] = counter++;
        stack.push_back(u);
        on_stack[u] = true;
      }
      auto out = g.out_neighbors(u);
      if (pos < out.size()) {
        NodeId v = out[pos++];
        if (index[v] == unvisited) {
          call.push_back({v, 0});
        } else if (on_stack[v]) {
          low[u] = std::min(low[u], index[v]);
        }
        continue;
      }
      NodeId done = u;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          label[w] = done;
        } while (w != done);
      }
    }
  }
  return label;
}

// Sorted, deduplicated undirected adjacency.
std::vector<std::vector<NodeId>> symmetrized(const DirectedGraph& g) {
  std::vector<std::vector<NodeId>> adj(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) adj[u] = g.undirected_neighbors(u);
  return adj;
}

}  // namespace

std::vector<std::vector<NodeId>> connected_components(const DirectedGraph& g,
                                                      ComponentMode mode) {
  return group_by_label(mode == ComponentMode::weak ? weak_labels(g) : strong_labels(g));
}

namespace {

// Triangles through each node of the symmetrized graph.
std::vector<std::uint64_t> node_triangles(const std::vector<std::vector<NodeId>>& adj) {
  std::vector<std::uint64_t> tri(adj.size(), 0);
  for (NodeId u = 0; u < adj.size(); ++u) {
    for (NodeId v : adj[u]) {
      if (v <= u) continue;
      // common neighbors w > v close the triangle u < v < w exactly once
      auto a = std::upper_bound(adj[u].begin(), adj[u].end(), v);
      auto b = std::upper_bound(adj[v].begin(), adj[v].end(), v);
      while (a != adj[u].end() && b != adj[v].end()) {
        if (*a < *b) ++a;
        else if (*b < *a) ++b;
        else {
          ++tri[u];
          ++tri[v];
          ++tri[*a];
          ++a;
          ++b;
        }
      }
    }
  }
  return tri;
}

}  // namespace

std::vector<double> local_clustering(const DirectedGraph& g) {
  auto adj = symmetrized(g);
  auto tri = node_triangles(adj);
  std::vector<double> c(g.node_count(), 0.0);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const double k = static_cast<double>(adj[u].size());
    if (k >= 2) c[u] = 2.0 * static_cast<double>(tri[u]) / (k * (k - 1));
  }
  return c;
}

double average_clustering(const DirectedGraph& g) {
  if (g.node_count() == 0) return 0.0;
  auto c = local_clustering(g);
  return std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(c.size());
}

std::uint64_t triangle_count(const DirectedGraph& g) {
  auto tri = node_triangles(symmetrized(g));
  return std::accumulate(tri.begin(), tri.end(), std::uint64_t{0}) / 3;
}

double global_clustering(const DirectedGraph& g) {
  auto adj = symmetrized(g);
  auto tri = node_triangles(adj);
  double closed = 0.0, connected = 0.0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const double k = static_cast<double>(adj[u].size());
    closed += static_cast<double>(tri[u]);
    connected += k * (k - 1) / 2.0;
  }
  return connected > 0 ? closed / connected : 0.0;
}

PathStats shortest_path_stats(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  PathStats stats;
  std::vector<std::size_t> dist(n);
  std::deque<NodeId> queue;
  std::uint64_t total = 0;
  std::size_t longest = 0;
  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), SIZE_MAX);
    dist[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop_front();
      for (NodeId v : g.out_neighbors(u))
        if (dist[v] == SIZE_MAX) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
    }
    for (NodeId t = 0; t < n; ++t) {
      if (t == s) continue;
      if (dist[t] == SIZE_MAX) {
        ++stats.unreachable_pairs;
      } else {
        ++stats.reachable_pairs;
        total += dist[t];
        longest = std::max(longest, dist[t]);
      }
    }
  }
  if (stats.reachable_pairs > 0) {
    stats.average_length =
        static_cast<double>(total) / static_cast<double>(stats.reachable_pairs);
    stats.diameter = longest;
  }
  return stats;
}

std::vector<double> betweenness(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> b(n, 0.0), sigma(n), delta(n);
  std::vector<long> dist(n);
  std::vector<NodeId> order;
  std::deque<NodeId> queue;
  for (NodeId s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop_front();
      order.push_back(u);
      for (NodeId v : g.out_neighbors(u)) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
        if (dist[v] == dist[u] + 1) sigma[v] += sigma[u];
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeId w = *it;
      for (NodeId v : g.in_neighbors(w))
        if (dist[v] >= 0 && dist[v] + 1 == dist[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) b[w] += delta[w];
    }
  }
  return b;
}

std::vector<double> pagerank(const DirectedGraph& g, double d, double tol,
                             std::size_t max_iterations) {
  const std::size_t n = g.node_count();
  if (n == 0) return {};
  if (d < 0.0 || d > 1.0) throw std::invalid_argument("damping must lie in [0, 1]");
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> pr(n, inv_n), next(n);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    double dangling = 0.0;
    for (NodeId u = 0; u < n; ++u)
      if (g.out_degree(u) == 0) dangling += pr[u];
    const double base = (1.0 - d) * inv_n + d * dangling * inv_n;
    std::fill(next.begin(), next.end(), base);
    for (NodeId u = 0; u < n; ++u) {
      if (g.out_degree(u) == 0) continue;
      const double share = d * pr[u] / static_cast<double>(g.out_degree(u));
      for (NodeId v : g.out_neighbors(u)) next[v] += share;
    }
    double change = 0.0;
    for (NodeId u = 0; u < n; ++u) change = std::max(change, std::abs(next[u] - pr[u]));
    pr.swap(next);
    if (change < tol) {
      const double sum = std::accumulate(pr.begin(), pr.end(), 0.0);
      for (double& x : pr) x /= sum;
      return pr;
    }
  }
  throw ConvergenceError("pagerank did not converge in " + std::to_string(max_iterations) +
                         " iterations");
}

DirectedGraph generate_er(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  Rng rng = make_rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Arc> arcs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if (u != v && coin(rng)) arcs.push_back({u, v});
  return DirectedGraph(n, arcs);
}

}  // namespace triadnet
