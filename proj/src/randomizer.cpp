#include "triadnet/randomizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "triadnet/parallel.hpp"

namespace triadnet {

namespace {
constexpr std::size_t kDenseLimit = 8192;

Arc ordered(NodeId u, NodeId v) { return u < v ? Arc{u, v} : Arc{v, u}; }

// Second draw of a pair: uniform over [0, size) minus `first`.
std::size_t other_index(Rng& rng, std::size_t size, std::size_t first) {
  std::size_t j = uniform_index(rng, size - 1);
  return j >= first ? j + 1 : j;
}
}  // namespace

PairSet::PairSet(std::size_t node_count) : n_(node_count), dense_(node_count <= kDenseLimit) {
  if (dense_) bits_.assign((n_ * n_ + 63) / 64, 0);
}

bool PairSet::contains(NodeId u, NodeId v) const {
  const auto k = key(u, v);
  if (dense_) return (bits_[k >> 6] >> (k & 63)) & 1;
  return sparse_.count(k) != 0;
}

void PairSet::insert(NodeId u, NodeId v) {
  const auto k = key(u, v);
  if (dense_) bits_[k >> 6] |= std::uint64_t{1} << (k & 63);
  else sparse_.insert(k);
}

void PairSet::erase(NodeId u, NodeId v) {
  const auto k = key(u, v);
  if (dense_) bits_[k >> 6] &= ~(std::uint64_t{1} << (k & 63));
  else sparse_.erase(k);
}

DirectedSwitchChain::DirectedSwitchChain(const DirectedGraph& g, std::uint64_t seed)
    : n_(g.node_count()), arcs_(g.node_count()), rng_(make_rng(seed)) {
  for (const Arc& a : g.arcs()) {
    arcs_.insert(a.source, a.target);
    if (g.has_arc(a.target, a.source)) {
      if (a.source < a.target) bi_.push_back(a);
    } else {
      uni_index_[static_cast<std::uint64_t>(a.source) * n_ + a.target] =
          static_cast<std::uint32_t>(uni_.size());
      uni_.push_back(a);
    }
  }
}

void DirectedSwitchChain::set_uni(std::size_t index, Arc arc) {
  const Arc old = uni_[index];
  uni_index_.erase(static_cast<std::uint64_t>(old.source) * n_ + old.target);
  uni_[index] = arc;
  uni_index_[static_cast<std::uint64_t>(arc.source) * n_ + arc.target] =
      static_cast<std::uint32_t>(index);
}

SwitchOutcome DirectedSwitchChain::step() {
  ++steps_;
  const std::size_t links = uni_.size() + bi_.size();
  if (links == 0) return SwitchOutcome::not_switchable;
  const std::size_t r = uniform_index(rng_, links);

  if (r < uni_.size()) {
    if (uni_.size() < 2) return SwitchOutcome::not_switchable;
    const std::size_t i = r;
    const std::size_t j = other_index(rng_, uni_.size(), i);
    const auto [a, b] = uni_[i];
    const auto [c, d] = uni_[j];
    if (a != c && a != d && b != c && b != d) {
      if (arcs_.contains(a, d) || arcs_.contains(d, a) || arcs_.contains(c, b) ||
          arcs_.contains(b, c))
        return SwitchOutcome::rejected;
      arcs_.erase(a, b);
      arcs_.erase(c, d);
      arcs_.insert(a, d);
      arcs_.insert(c, b);
      set_uni(i, {a, d});
      set_uni(j, {c, b});
      return SwitchOutcome::pair_switch;
    }
    // Shared node: only a directed path x->y->z closed by z->x can switch.
    NodeId x, y, z;
    if (b == c) { x = a; y = b; z = d; }
    else if (d == a) { x = c; y = a; z = b; }
    else return SwitchOutcome::not_switchable;
    if (!arcs_.contains(z, x) || arcs_.contains(x, z)) return SwitchOutcome::not_switchable;
    const std::size_t k = uni_index_.at(static_cast<std::uint64_t>(z) * n_ + x);
    for (auto [s, t] : {Arc{x, y}, Arc{y, z}, Arc{z, x}}) {
      arcs_.erase(s, t);
      arcs_.insert(t, s);
    }
    set_uni(i, {uni_[i].target, uni_[i].source});
    set_uni(j, {uni_[j].target, uni_[j].source});
    set_uni(k, {x, z});
    return SwitchOutcome::loop_switch;
  }

  if (bi_.size() < 2) return SwitchOutcome::not_switchable;
  const std::size_t i = r - uni_.size();
  const std::size_t j = other_index(rng_, bi_.size(), i);
  const auto [a, b] = bi_[i];
  const auto [c, d] = bi_[j];
  if (a == c || a == d || b == c || b == d) return SwitchOutcome::not_switchable;
  const bool cross = uniform_index(rng_, 2) == 1;
  const Arc p = cross ? ordered(a, d) : ordered(a, c);
  const Arc q = cross ? ordered(b, c) : ordered(b, d);
  if (arcs_.contains(p.source, p.target) || arcs_.contains(p.target, p.source) ||
      arcs_.contains(q.source, q.target) || arcs_.contains(q.target, q.source))
    return SwitchOutcome::rejected;
  for (auto [s, t] : {bi_[i], bi_[j]}) {
    arcs_.erase(s, t);
    arcs_.erase(t, s);
  }
  for (auto [s, t] : {p, q}) {
    arcs_.insert(s, t);
    arcs_.insert(t, s);
  }
  bi_[i] = p;
  bi_[j] = q;
  return SwitchOutcome::mutual_switch;
}

void DirectedSwitchChain::run(std::uint64_t steps) {
  for (std::uint64_t s = 0; s < steps; ++s) step();
}

DirectedGraph DirectedSwitchChain::graph() const {
  std::vector<Arc> arcs(uni_);
  for (const Arc& e : bi_) {
    arcs.push_back(e);
    arcs.push_back({e.target, e.source});
  }
  return DirectedGraph(n_, arcs);
}

SignedSwitchChain::SignedSwitchChain(const SignedGraph& g, std::uint64_t seed)
    : n_(g.node_count()), edges_(g.node_count()), rng_(make_rng(seed)) {
  for (const SignedEdge& e : g.edges()) {
    edges_.insert(e.u, e.v);
    (e.sign > 0 ? positive_ : negative_).push_back(e);
  }
}

SwitchOutcome SignedSwitchChain::step() {
  ++steps_;
  const std::size_t links = positive_.size() + negative_.size();
  if (links == 0) return SwitchOutcome::not_switchable;
  std::size_t i = uniform_index(rng_, links);
  auto& pool = i < positive_.size() ? positive_ : negative_;
  if (i >= positive_.size()) i -= positive_.size();
  if (pool.size() < 2) return SwitchOutcome::not_switchable;
  const std::size_t j = other_index(rng_, pool.size(), i);
  const NodeId a = pool[i].u, b = pool[i].v, c = pool[j].u, d = pool[j].v;
  if (a == c || a == d || b == c || b == d) return SwitchOutcome::not_switchable;
  const bool cross = uniform_index(rng_, 2) == 1;
  const Arc p = cross ? ordered(a, d) : ordered(a, c);
  const Arc q = cross ? ordered(b, c) : ordered(b, d);
  if (edges_.contains(p.source, p.target) || edges_.contains(q.source, q.target))
    return SwitchOutcome::rejected;
  edges_.erase(a, b);
  edges_.erase(c, d);
  edges_.insert(p.source, p.target);
  edges_.insert(q.source, q.target);
  const int sign = pool[i].sign;
  pool[i] = {p.source, p.target, sign};
  pool[j] = {q.source, q.target, sign};
  return SwitchOutcome::mutual_switch;
}

void SignedSwitchChain::run(std::uint64_t steps) {
  for (std::uint64_t s = 0; s < steps; ++s) step();
}

SignedGraph SignedSwitchChain::graph() const {
  std::vector<SignedEdge> edges(positive_);
  edges.insert(edges.end(), negative_.begin(), negative_.end());
  return SignedGraph(n_, edges);
}

DirectedGraph randomize_directed(const DirectedGraph& g, std::uint64_t steps, std::uint64_t seed) {
  DirectedSwitchChain chain(g, seed);
  chain.run(steps);
  return chain.graph();
}

SignedGraph randomize_signed(const SignedGraph& g, std::uint64_t steps, std::uint64_t seed) {
  SignedSwitchChain chain(g, seed);
  chain.run(steps);
  return chain.graph();
}

std::uint64_t switch_steps(std::size_t links, double steps_per_edge) {
  if (steps_per_edge < 0) throw std::invalid_argument("steps_per_edge must be non-negative");
  return static_cast<std::uint64_t>(std::ceil(steps_per_edge * static_cast<double>(links)));
}

std::size_t link_count(const DirectedGraph& g) {
  std::size_t mutual = 0;
  for (const Arc& a : g.arcs())
    if (a.source < a.target && g.has_arc(a.target, a.source)) ++mutual;
  return g.arc_count() - mutual;
}

DirectedGraph ensemble_instance(const DirectedGraph& g, const EnsembleOptions& opts,
                                std::size_t index) {
  return randomize_directed(g, switch_steps(link_count(g), opts.steps_per_edge),
                            derive_seed(opts.seed, index));
}

SignedGraph ensemble_instance(const SignedGraph& g, const EnsembleOptions& opts,
                              std::size_t index) {
  return randomize_signed(g, switch_steps(g.edge_count(), opts.steps_per_edge),
                          derive_seed(opts.seed, index));
}

void for_each_instance(const DirectedGraph& g, const EnsembleOptions& opts,
                       const std::function<void(std::size_t, unsigned, const DirectedGraph&)>& visit) {
  if (opts.instances < 1) throw std::invalid_argument("ensemble needs at least one instance");
  const std::uint64_t steps = switch_steps(link_count(g), opts.steps_per_edge);
  parallel_for(opts.instances, opts.workers, [&](std::size_t i, unsigned worker) {
    visit(i, worker, randomize_directed(g, steps, derive_seed(opts.seed, i)));
  });
}

void for_each_instance(const SignedGraph& g, const EnsembleOptions& opts,
                       const std::function<void(std::size_t, unsigned, const SignedGraph&)>& visit) {
  if (opts.instances < 1) throw std::invalid_argument("ensemble needs at least one instance");
  const std::uint64_t steps = switch_steps(g.edge_count(), opts.steps_per_edge);
  parallel_for(opts.instances, opts.workers, [&](std::size_t i, unsigned worker) {
    visit(i, worker, randomize_signed(g, steps, derive_seed(opts.seed, i)));
  });
}

namespace {

bool unidirectional(const DirectedGraph& g, Arc a) {
  return g.has_arc(a.source, a.target) && !g.has_arc(a.target, a.source);
}
bool mutual(const DirectedGraph& g, Arc a) {
  return g.has_arc(a.source, a.target) && g.has_arc(a.target, a.source);
}
bool linked(const DirectedGraph& g, NodeId u, NodeId v) {
  return g.has_arc(u, v) || g.has_arc(v, u);
}

DirectedGraph replace_arcs(const DirectedGraph& g, const std::vector<Arc>& drop,
                           const std::vector<Arc>& add) {
  std::vector<Arc> arcs;
  for (const Arc& a : g.arcs())
    if (std::find(drop.begin(), drop.end(), a) == drop.end()) arcs.push_back(a);
  arcs.insert(arcs.end(), add.begin(), add.end());
  return DirectedGraph(g.node_count(), arcs);
}

}  // namespace

std::optional<DirectedGraph> apply_pair_switch(const DirectedGraph& g, Arc first, Arc second) {
  const auto [a, b] = first;
  const auto [c, d] = second;
  if (!unidirectional(g, first) || !unidirectional(g, second)) return std::nullopt;
  if (a == c || a == d || b == c || b == d) return std::nullopt;
  if (linked(g, a, d) || linked(g, c, b)) return std::nullopt;
  return replace_arcs(g, {first, second}, {{a, d}, {c, b}});
}

std::optional<DirectedGraph> apply_loop_switch(const DirectedGraph& g, Arc first, Arc second) {
  if (!unidirectional(g, first) || !unidirectional(g, second)) return std::nullopt;
  NodeId x, y, z;
  if (first.target == second.source) { x = first.source; y = first.target; z = second.target; }
  else if (second.target == first.source) { x = second.source; y = second.target; z = first.target; }
  else return std::nullopt;
  if (x == z || !unidirectional(g, {z, x})) return std::nullopt;
  return replace_arcs(g, {{x, y}, {y, z}, {z, x}}, {{y, x}, {z, y}, {x, z}});
}

std::optional<DirectedGraph> apply_mutual_switch(const DirectedGraph& g, Arc first, Arc second,
                                                 int option) {
  const auto [a, b] = first;
  const auto [c, d] = second;
  if (!mutual(g, first) || !mutual(g, second)) return std::nullopt;
  if (a == c || a == d || b == c || b == d) return std::nullopt;
  const Arc p = option ? Arc{a, d} : Arc{a, c};
  const Arc q = option ? Arc{b, c} : Arc{b, d};
  if (linked(g, p.source, p.target) || linked(g, q.source, q.target)) return std::nullopt;
  return replace_arcs(g, {{a, b}, {b, a}, {c, d}, {d, c}},
                      {p, {p.target, p.source}, q, {q.target, q.source}});
}

std::optional<SignedGraph> apply_signed_switch(const SignedGraph& g, SignedEdge first,
                                               SignedEdge second, int option) {
  const NodeId a = first.u, b = first.v, c = second.u, d = second.v;
  if (g.sign(a, b) == 0 || g.sign(a, b) != g.sign(c, d)) return std::nullopt;
  if (a == c || a == d || b == c || b == d) return std::nullopt;
  const Arc p = option ? ordered(a, d) : ordered(a, c);
  const Arc q = option ? ordered(b, c) : ordered(b, d);
  if (g.sign(p.source, p.target) != 0 || g.sign(q.source, q.target) != 0) return std::nullopt;
  const int sign = g.sign(a, b);
  std::vector<SignedEdge> edges;
  for (const SignedEdge& e : g.edges()) {
    const Arc key{e.u, e.v};
    if (key == ordered(a, b) || key == ordered(c, d)) continue;
    edges.push_back(e);
  }
  edges.push_back({p.source, p.target, sign});
  edges.push_back({q.source, q.target, sign});
  return SignedGraph(g.node_count(), edges);
}

}  // namespace triadnet
