#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "triadnet/graph.hpp"
#include "triadnet/motif_stats.hpp"
#include "triadnet/randomizer.hpp"
#include "triadnet/stats.hpp"

namespace triadnet {

// Per-node Z scores, row-major node x column. Columns are the 30 directed
// orbits or the 13 signed patterns.
struct NodeZProfile {
  std::size_t nodes = 0;
  std::size_t width = 0;
  std::vector<double> original;
  std::vector<double> mean;
  std::vector<double> sigma;
  std::vector<double> z;
  std::vector<ZFlag> flags;
  std::size_t instances = 0;
  VarianceMode variance = VarianceMode::population;

  double z_at(std::size_t node, std::size_t column) const { return z[node * width + column]; }
  ZFlag flag_at(std::size_t node, std::size_t column) const { return flags[node * width + column]; }
  bool defined(std::size_t node, std::size_t column) const { return flag_at(node, column) == ZFlag::ok; }
  // Row with degenerate entries as NaN.
  std::vector<double> defined_row(std::size_t node) const;
};

struct NospamOptions {
  EnsembleOptions ensemble;
  VarianceMode variance = VarianceMode::population;
};

struct NospamResult {
  NodeZProfile nodes;
  ZProfile whole;  // whole-graph profile from the same ensemble
};

NospamResult nospam_directed(const DirectedGraph& g, const NospamOptions& opts);
NodeZProfile nospam_signed(const SignedGraph& g, const NospamOptions& opts);

NodeZProfile node_z_from_moments(const NodeCounts& original, const std::vector<Moments>& ensemble,
                                 std::size_t instances, VarianceMode mode);

// Orbit means per connected pattern; NaN where every orbit is degenerate.
struct MappedProfiles {
  std::size_t nodes = 0;
  std::vector<PatternVector> m;
  std::vector<std::array<int, kConnectedPatternCount>> used_orbits;  // orbits entering each mean
};

MappedProfiles map_profiles(const NodeZProfile& z);

struct Homogeneity {
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t nodes_used = 0;
  std::size_t nodes_excluded = 0;
  std::vector<double> per_node;  // NaN for excluded nodes
};

// Pearson correlation of each node's mapped profile with the whole-graph Z,
// over entries defined in both.
Homogeneity homogeneity(const MappedProfiles& m, const ZProfile& whole);

// Mean profile correlation over connected unordered pairs minus the mean over
// all unordered pairs. Pairs with undefined correlation are skipped.
double homophily(const NodeZProfile& z, const DirectedGraph& g);
double homophily(const NodeZProfile& z, const SignedGraph& g);
double homophily(const std::vector<std::vector<double>>& profiles,
                 const std::vector<std::pair<NodeId, NodeId>>& edges);

// Squared Euclidean distance over coordinates finite in both vectors.
double profile_distance(const std::vector<double>& a, const std::vector<double>& b);

struct Merge {
  std::size_t a = 0;  // cluster ids: leaves 0..n-1, merge i creates n+i
  std::size_t b = 0;
  double distance = 0.0;
  std::size_t size = 0;
};

struct Dendrogram {
  std::size_t leaves = 0;
  std::vector<Merge> merges;

  // Labels 0..k-1, numbered by smallest member.
  std::vector<std::size_t> cut_count(std::size_t k) const;
  // Applies every merge with distance <= threshold.
  std::vector<std::size_t> cut_threshold(double threshold) const;
};

// Complete-link agglomeration; ties go to the pair of clusters with the
// smallest (first member, first member).
Dendrogram complete_link_cluster(const std::vector<std::vector<double>>& profiles);

struct Histogram {
  double lower = 0.0;
  double width = 1.0;
  std::vector<std::size_t> counts;
  double fraction_small = 0.0;  // |M| < 1
  double max_value = 0.0;
  std::vector<std::size_t> top_nodes;  // by M, descending
  std::size_t excluded = 0;            // NaN entries
};

Histogram ffl_heterogeneity_histogram(const MappedProfiles& m, double bin_width = 0.5, std::size_t top_k = 10);

}  // namespace triadnet
