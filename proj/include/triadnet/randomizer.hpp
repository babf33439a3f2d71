#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "triadnet/graph.hpp"
#include "triadnet/rng.hpp"

namespace triadnet {

enum class SwitchOutcome {
  pair_switch,       // two unidirectional arcs exchanged targets
  loop_switch,       // unidirectional 3-cycle reversed
  mutual_switch,     // two bidirectional links exchanged partners
  rejected,          // target links already occupied
  not_switchable,    // shared node without a loop, or too few links of the type
};

// Existence lookups for node pairs; dense bit matrix for moderate N.
class PairSet {
 public:
  explicit PairSet(std::size_t node_count);
  bool contains(NodeId u, NodeId v) const;
  void insert(NodeId u, NodeId v);
  void erase(NodeId u, NodeId v);

 private:
  std::uint64_t key(NodeId u, NodeId v) const { return static_cast<std::uint64_t>(u) * n_ + v; }
  std::size_t n_;
  bool dense_;
  std::vector<std::uint64_t> bits_;
  std::unordered_set<std::uint64_t> sparse_;
};

// Markov chain of degree-preserving switches on a private copy of a
// directed graph. Conserves per-node in/out degrees and per-node counts of
// unidirectional and bidirectional links.
class DirectedSwitchChain {
 public:
  DirectedSwitchChain(const DirectedGraph& g, std::uint64_t seed);

  SwitchOutcome step();
  void run(std::uint64_t steps);
  std::uint64_t steps_taken() const { return steps_; }
  std::size_t link_count() const { return uni_.size() + bi_.size(); }
  DirectedGraph graph() const;

 private:
  void set_uni(std::size_t index, Arc arc);

  std::size_t n_;
  std::vector<Arc> uni_;
  std::vector<Arc> bi_;  // source < target
  PairSet arcs_;
  std::unordered_map<std::uint64_t, std::uint32_t> uni_index_;
  Rng rng_;
  std::uint64_t steps_ = 0;
};

// Same idea for signed undirected graphs; switch partners share a sign.
class SignedSwitchChain {
 public:
  SignedSwitchChain(const SignedGraph& g, std::uint64_t seed);

  SwitchOutcome step();
  void run(std::uint64_t steps);
  std::uint64_t steps_taken() const { return steps_; }
  SignedGraph graph() const;

 private:
  std::size_t n_;
  std::vector<SignedEdge> positive_;
  std::vector<SignedEdge> negative_;
  PairSet edges_;
  Rng rng_;
  std::uint64_t steps_ = 0;
};

DirectedGraph randomize_directed(const DirectedGraph& g, std::uint64_t steps, std::uint64_t seed);
SignedGraph randomize_signed(const SignedGraph& g, std::uint64_t steps, std::uint64_t seed);

// ceil(steps_per_edge x links); a mutual dyad counts as one link.
std::uint64_t switch_steps(std::size_t links, double steps_per_edge);
std::size_t link_count(const DirectedGraph& g);

struct EnsembleOptions {
  std::size_t instances = 1000;
  double steps_per_edge = 100.0;
  std::uint64_t seed = 0;
  unsigned workers = 0;  // 0 = hardware concurrency
};

// Instance i is randomize_directed(g, steps, derive_seed(seed, i)).
DirectedGraph ensemble_instance(const DirectedGraph& g, const EnsembleOptions& opts,
                                std::size_t index);
SignedGraph ensemble_instance(const SignedGraph& g, const EnsembleOptions& opts, std::size_t index);

// Runs every instance, calling visit(index, worker, graph). Calls may come
// from several threads concurrently; visit must only touch per-worker state.
void for_each_instance(const DirectedGraph& g, const EnsembleOptions& opts,
                       const std::function<void(std::size_t, unsigned, const DirectedGraph&)>& visit);
void for_each_instance(const SignedGraph& g, const EnsembleOptions& opts,
                       const std::function<void(std::size_t, unsigned, const SignedGraph&)>& visit);

// Elementary moves on whole graphs, for inspection and state-space
// enumeration. Each returns nullopt when the move is not applicable.
// a->b, c->d become a->d, c->b.
std::optional<DirectedGraph> apply_pair_switch(const DirectedGraph& g, Arc first, Arc second);
// Arcs x->y, y->z with z->x present and all three unidirectional: reverse all.
std::optional<DirectedGraph> apply_loop_switch(const DirectedGraph& g, Arc first, Arc second);
// Mutual links {a,b}, {c,d}: option 0 gives {a,c},{b,d}; option 1 gives {a,d},{b,c}.
std::optional<DirectedGraph> apply_mutual_switch(const DirectedGraph& g, Arc first, Arc second,
                                                 int option);
std::optional<SignedGraph> apply_signed_switch(const SignedGraph& g, SignedEdge first,
                                               SignedEdge second, int option);

}  // namespace triadnet
