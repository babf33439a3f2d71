#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace triadnet {

using NodeId = std::uint32_t;

struct Arc {
  NodeId source = 0;
  NodeId target = 0;
  auto operator<=>(const Arc&) const = default;
};

// Simple directed graph on dense ids 0..N-1. Immutable once built.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(std::size_t node_count);
  // Duplicate arcs are collapsed. Self-arcs and out-of-range ids throw
  // std::invalid_argument.
  DirectedGraph(std::size_t node_count, std::span<const Arc> arcs);

  std::size_t node_count() const { return out_.size(); }
  std::size_t arc_count() const { return arc_count_; }

  std::span<const NodeId> out_neighbors(NodeId u) const { return out_[u]; }
  std::span<const NodeId> in_neighbors(NodeId u) const { return in_[u]; }
  std::size_t out_degree(NodeId u) const { return out_[u].size(); }
  std::size_t in_degree(NodeId u) const { return in_[u].size(); }
  bool has_arc(NodeId u, NodeId v) const;

  // Sorted union of in- and out-neighbors.
  std::vector<NodeId> undirected_neighbors(NodeId u) const;
  std::vector<Arc> arcs() const;

  // Same node set, every arc touching a removed node dropped.
  DirectedGraph without_nodes(const std::vector<bool>& removed) const;
  // Induced subgraph on the kept nodes, relabeled densely in id order.
  DirectedGraph induced(const std::vector<bool>& keep) const;
  DirectedGraph relabeled(std::span<const NodeId> new_id) const;

  bool operator==(const DirectedGraph& other) const { return out_ == other.out_; }

 private:
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
  std::size_t arc_count_ = 0;
};

struct SignedEdge {
  NodeId u = 0;  // u < v
  NodeId v = 0;
  int sign = 1;
  auto operator<=>(const SignedEdge&) const = default;
};

// Simple undirected graph with +1/-1 edge signs.
class SignedGraph {
 public:
  struct Neighbor {
    NodeId node;
    int sign;
    auto operator<=>(const Neighbor&) const = default;
  };

  SignedGraph() = default;
  explicit SignedGraph(std::size_t node_count);
  // Throws std::invalid_argument on self-edges, repeated pairs, bad signs.
  SignedGraph(std::size_t node_count, std::span<const SignedEdge> edges);

  std::size_t node_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::span<const Neighbor> neighbors(NodeId u) const { return adj_[u]; }
  std::size_t degree(NodeId u) const { return adj_[u].size(); }
  // 0 when absent.
  int sign(NodeId u, NodeId v) const;
  std::vector<SignedEdge> edges() const;

  bool operator==(const SignedGraph& other) const { return adj_ == other.adj_; }

 private:
  std::vector<std::vector<Neighbor>> adj_;
  std::size_t edge_count_ = 0;
};

struct LoadedGraph {
  DirectedGraph graph;
  std::vector<std::string> labels;
  std::size_t duplicate_arcs = 0;
  std::size_t self_arcs = 0;
};

struct LoadedSignedGraph {
  SignedGraph graph;
  std::vector<std::string> labels;
  std::size_t duplicate_edges = 0;
  std::size_t self_edges = 0;
  std::size_t conflicting_edges = 0;  // pair repeated with the other sign; first kept
};

// "src dst" per line, '#' starts a comment. Tokens become ids in first-seen order.
LoadedGraph parse_edge_list(std::istream& in);
// "u v +1|-1" per line.
LoadedSignedGraph parse_signed_edge_list(std::istream& in);

void write_edge_list(std::ostream& out, const DirectedGraph& g,
                     const std::vector<std::string>* labels = nullptr);
void write_signed_edge_list(std::ostream& out, const SignedGraph& g,
                            const std::vector<std::string>* labels = nullptr);

}  // namespace triadnet
