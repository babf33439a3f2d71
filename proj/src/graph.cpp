#include "triadnet/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "triadnet/errors.hpp"

namespace triadnet {

DirectedGraph::DirectedGraph(std::size_t node_count) : out_(node_count), in_(node_count) {}

DirectedGraph::DirectedGraph(std::size_t node_count, std::span<const Arc> arcs)
    : out_(node_count), in_(node_count) {
  for (const Arc& a : arcs) {
    if (a.source >= node_count || a.target >= node_count)
      throw std::invalid_argument("arc endpoint out of range");
    if (a.source == a.target) throw std::invalid_argument("self-arc");
    out_[a.source].push_back(a.target);
  }
  for (NodeId u = 0; u < node_count; ++u) {
    auto& row = out_[u];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    arc_count_ += row.size();
    for (NodeId v : row) in_[v].push_back(u);
  }
}

bool DirectedGraph::has_arc(NodeId u, NodeId v) const {
  const auto& row = out_[u];
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<NodeId> DirectedGraph::undirected_neighbors(NodeId u) const {
  std::vector<NodeId> result;
  result.reserve(out_[u].size() + in_[u].size());
  std::set_union(out_[u].begin(), out_[u].end(), in_[u].begin(), in_[u].end(),
                 std::back_inserter(result));
  return result;
}

std::vector<Arc> DirectedGraph::arcs() const {
  std::vector<Arc> result;
  result.reserve(arc_count_);
  for (NodeId u = 0; u < out_.size(); ++u)
    for (NodeId v : out_[u]) result.push_back({u, v});
  return result;
}

DirectedGraph DirectedGraph::without_nodes(const std::vector<bool>& removed) const {
  std::vector<Arc> kept;
  for (const Arc& a : arcs())
    if (!removed[a.source] && !removed[a.target]) kept.push_back(a);
  return DirectedGraph(node_count(), kept);
}

DirectedGraph DirectedGraph::induced(const std::vector<bool>& keep) const {
  std::vector<NodeId> id(node_count(), 0);
  NodeId next = 0;
  for (NodeId u = 0; u < node_count(); ++u)
    if (keep[u]) id[u] = next++;
  std::vector<Arc> kept;
  for (const Arc& a : arcs())
    if (keep[a.source] && keep[a.target]) kept.push_back({id[a.source], id[a.target]});
  return DirectedGraph(next, kept);
}

DirectedGraph DirectedGraph::relabeled(std::span<const NodeId> new_id) const {
  std::vector<Arc> moved;
  moved.reserve(arc_count_);
  for (const Arc& a : arcs()) moved.push_back({new_id[a.source], new_id[a.target]});
  return DirectedGraph(node_count(), moved);
}

SignedGraph::SignedGraph(std::size_t node_count) : adj_(node_count) {}

SignedGraph::SignedGraph(std::size_t node_count, std::span<const SignedEdge> edges)
    : adj_(node_count) {
  for (const SignedEdge& e : edges) {
    if (e.u >= node_count || e.v >= node_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-edge");
    if (e.sign != 1 && e.sign != -1) throw std::invalid_argument("edge sign must be +1 or -1");
    adj_[e.u].push_back({e.v, e.sign});
    adj_[e.v].push_back({e.u, e.sign});
  }
  for (auto& row : adj_) {
    std::sort(row.begin(), row.end());
    for (std::size_t i = 1; i < row.size(); ++i)
      if (row[i].node == row[i - 1].node) throw std::invalid_argument("repeated edge");
  }
  edge_count_ = edges.size();
}

int SignedGraph::sign(NodeId u, NodeId v) const {
  const auto& row = adj_[u];
  auto it = std::lower_bound(row.begin(), row.end(), Neighbor{v, -1});
  return (it != row.end() && it->node == v) ? it->sign : 0;
}

std::vector<SignedEdge> SignedGraph::edges() const {
  std::vector<SignedEdge> result;
  result.reserve(edge_count_);
  for (NodeId u = 0; u < adj_.size(); ++u)
    for (const auto& n : adj_[u])
      if (u < n.node) result.push_back({u, n.node, n.sign});
  return result;
}

namespace {

class TokenMap {
 public:
  NodeId id(const std::string& token) {
    auto [it, inserted] = ids_.try_emplace(token, static_cast<NodeId>(labels_.size()));
    if (inserted) labels_.push_back(token);
    return it->second;
  }
  std::vector<std::string> take_labels() { return std::move(labels_); }

 private:
  std::unordered_map<std::string, NodeId> ids_;
  std::vector<std::string> labels_;
};

// Splits a line into tokens, dropping any '#' comment. Returns false for blank lines.
bool tokenize(const std::string& line, std::vector<std::string>& tokens) {
  tokens.clear();
  std::istringstream ss(line.substr(0, line.find('#')));
  std::string t;
  while (ss >> t) tokens.push_back(t);
  return !tokens.empty();
}

}  // namespace

LoadedGraph parse_edge_list(std::istream& in) {
  LoadedGraph result;
  TokenMap tokens;
  std::vector<Arc> arcs;
  std::vector<std::string> fields;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!tokenize(line, fields)) continue;
    if (fields.size() != 2)
      throw ParseError(line_no, "expected 2 tokens, got " + std::to_string(fields.size()));
    NodeId u = tokens.id(fields[0]);
    NodeId v = tokens.id(fields[1]);
    if (u == v) {
      ++result.self_arcs;
      continue;
    }
    arcs.push_back({u, v});
  }
  result.labels = tokens.take_labels();
  std::sort(arcs.begin(), arcs.end());
  auto last = std::unique(arcs.begin(), arcs.end());
  result.duplicate_arcs = static_cast<std::size_t>(arcs.end() - last);
  arcs.erase(last, arcs.end());
  result.graph = DirectedGraph(result.labels.size(), arcs);
  return result;
}

LoadedSignedGraph parse_signed_edge_list(std::istream& in) {
  LoadedSignedGraph result;
  TokenMap tokens;
  std::vector<SignedEdge> edges;
  std::unordered_map<std::uint64_t, int> seen;
  std::vector<std::string> fields;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!tokenize(line, fields)) continue;
    if (fields.size() != 3)
      throw ParseError(line_no, "expected 3 tokens, got " + std::to_string(fields.size()));
    int sign = 0;
    if (fields[2] == "+1" || fields[2] == "1" || fields[2] == "+") sign = 1;
    else if (fields[2] == "-1" || fields[2] == "-") sign = -1;
    else throw ParseError(line_no, "sign must be +1 or -1, got '" + fields[2] + "'");
    NodeId u = tokens.id(fields[0]);
    NodeId v = tokens.id(fields[1]);
    if (u == v) {
      ++result.self_edges;
      continue;
    }
    if (u > v) std::swap(u, v);
    auto key = (static_cast<std::uint64_t>(u) << 32) | v;
    auto [it, inserted] = seen.try_emplace(key, sign);
    if (!inserted) {
      if (it->second == sign) ++result.duplicate_edges;
      else ++result.conflicting_edges;
      continue;
    }
    edges.push_back({u, v, sign});
  }
  result.labels = tokens.take_labels();
  result.graph = SignedGraph(result.labels.size(), edges);
  return result;
}

void write_edge_list(std::ostream& out, const DirectedGraph& g,
                     const std::vector<std::string>* labels) {
  for (const Arc& a : g.arcs()) {
    if (labels) out << (*labels)[a.source] << '\t' << (*labels)[a.target] << '\n';
    else out << a.source << '\t' << a.target << '\n';
  }
}

void write_signed_edge_list(std::ostream& out, const SignedGraph& g,
                            const std::vector<std::string>* labels) {
  for (const SignedEdge& e : g.edges()) {
    if (labels) out << (*labels)[e.u] << '\t' << (*labels)[e.v];
    else out << e.u << '\t' << e.v;
    out << '\t' << (e.sign > 0 ? "+1" : "-1") << '\n';
  }
}

}  // namespace triadnet
