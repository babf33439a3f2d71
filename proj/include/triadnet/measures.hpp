#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "triadnet/graph.hpp"

namespace triadnet {

struct DegreePair {
  std::size_t in = 0;
  std::size_t out = 0;
  bool operator==(const DegreePair&) const = default;
};

std::vector<DegreePair> degrees(const DirectedGraph& g);

// |E| / (N(N-1)) for directed graphs, 2|E| / (N(N-1)) for undirected ones.
double density(const DirectedGraph& g);
double density(const SignedGraph& g);

enum class ComponentMode { weak, strong };

// Each component sorted ascending; components ordered by their smallest node.
std::vector<std::vector<NodeId>> connected_components(const DirectedGraph& g,
                                                      ComponentMode mode);

// All clustering measures work on the symmetrized graph. Nodes with fewer
// than two neighbors get a local coefficient of 0.
std::vector<double> local_clustering(const DirectedGraph& g);
double average_clustering(const DirectedGraph& g);
double global_clustering(const DirectedGraph& g);
std::uint64_t triangle_count(const DirectedGraph& g);

struct PathStats {
  std::optional<double> average_length;  // over ordered reachable pairs
  std::optional<std::size_t> diameter;
  std::uint64_t reachable_pairs = 0;
  std::uint64_t unreachable_pairs = 0;
};

PathStats shortest_path_stats(const DirectedGraph& g);

// Brandes' algorithm; geodesic-fraction counting over ordered pairs s != t,
// endpoints excluded.
std::vector<double> betweenness(const DirectedGraph& g);

// Power iteration; dangling nodes spread their mass uniformly.
std::vector<double> pagerank(const DirectedGraph& g, double d = 0.85, double tol = 1e-12,
                             std::size_t max_iterations = 10000);

// Every ordered pair is an arc independently with probability p.
DirectedGraph generate_er(std::size_t n, double p, std::uint64_t seed);

}  // namespace triadnet
