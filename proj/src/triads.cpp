#include "triadnet/triads.hpp"

#include <algorithm>
#include <stdexcept>

namespace triadnet {

namespace {

constexpr std::array<std::array<int, 2>, 6> kSlotArcs{{{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}}};

int arc_bit(int from, int to) {
  for (int k = 0; k < 6; ++k)
    if (kSlotArcs[k][0] == from && kSlotArcs[k][1] == to) return k;
  return -1;
}

struct PatternSeed {
  const char* name;
  TriadCode representative;
};

// Index = pattern id - 1.
constexpr std::array<PatternSeed, kPatternCount> kPatternSeeds{{
    {"003", 0},    // empty
    {"012", 1},    // a->b
    {"102", 3},    // a<->b
    {"021D", 5},   // a->b, a->c
    {"021U", 10},  // b->a, c->a
    {"111U", 7},   // a<->b, a->c
    {"021C", 17},  // a->b->c
    {"030T", 21},  // a->b, a->c, b->c
    {"030C", 25},  // a->b->c->a
    {"111D", 11},  // a<->b, c->a
    {"201", 15},   // a<->b, a<->c
    {"120U", 58},  // b->a, c->a, b<->c
    {"120C", 29},  // a->b->c, a<->c
    {"120D", 53},  // a->b, a->c, b<->c
    {"210", 31},   // a<->b, a<->c, b->c
    {"300", 63},
}};

int popcount6(TriadCode c) {
  int n = 0;
  for (int k = 0; k < 6; ++k) n += (c >> k) & 1;
  return n;
}

struct Tables {
  std::array<int, 64> pattern_of{};
  std::array<TriadCode, 64> canonical{};
  std::array<std::array<int, 3>, 64> orbit{};
  std::vector<PatternInfo> patterns;
  std::vector<OrbitInfo> orbits;
  std::vector<SignedPatternInfo> signed_patterns;

  Tables() {
    const auto& perms = slot_permutations();
    for (int code = 0; code < 64; ++code) {
      TriadCode best = 63;
      for (const auto& p : perms) best = std::min(best, permute_code(static_cast<TriadCode>(code), p));
      canonical[code] = best;
    }
    patterns.resize(kPatternCount);
    std::array<bool, 64> claimed{};
    for (int id = 1; id <= kPatternCount; ++id) {
      PatternInfo& info = patterns[id - 1];
      info.id = id;
      info.name = kPatternSeeds[id - 1].name;
      info.representative = kPatternSeeds[id - 1].representative;
      info.canonical = canonical[info.representative];
      info.arcs = popcount6(info.representative);
      const TriadCode r = info.representative;
      int occupied = 0;
      for (int d = 0; d < 3; ++d) {
        const int pair = (r >> (2 * d)) & 3;
        if (pair == 3) ++info.mutual_dyads;
        if (pair != 0) ++occupied;
      }
      info.connected = occupied >= 2;
      info.closed = occupied == 3;
      for (int code = 0; code < 64; ++code)
        if (canonical[code] == info.canonical) {
          if (claimed[code]) throw std::logic_error("pattern seeds overlap");
          claimed[code] = true;
          info.configurations.push_back(static_cast<TriadCode>(code));
          pattern_of[code] = id;
        }
    }
    if (std::find(claimed.begin(), claimed.end(), false) != claimed.end())
      throw std::logic_error("pattern seeds do not cover all configurations");

    // Rooted code: minimal code after moving `slot` to a, over both
    // placements of the remaining two nodes.
    auto rooted = [&](TriadCode code, int slot) {
      TriadCode best = 63;
      for (const auto& p : perms)
        if (p[slot] == 0) best = std::min(best, permute_code(code, p));
      return best;
    };
    orbits.push_back({});  // orbit ids start at 1
    for (auto& info : patterns) {
      if (!info.connected) continue;
      std::vector<TriadCode> keys;
      for (int s = 0; s < 3; ++s) keys.push_back(rooted(info.representative, s));
      std::vector<TriadCode> distinct = keys;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      for (std::size_t k = 0; k < distinct.size(); ++k) {
        OrbitInfo o;
        o.id = static_cast<int>(orbits.size());
        o.pattern = info.id;
        o.index = static_cast<int>(k);
        o.size = static_cast<int>(std::count(keys.begin(), keys.end(), distinct[k]));
        o.rooted_code = distinct[k];
        info.orbits.push_back(o.id);
        orbits.push_back(o);
      }
    }
    for (int code = 0; code < 64; ++code)
      for (int s = 0; s < 3; ++s) {
        orbit[code][s] = 0;
        if (!patterns[pattern_of[code] - 1].connected) continue;
        const TriadCode key = rooted(static_cast<TriadCode>(code), s);
        for (int id : patterns[pattern_of[code] - 1].orbits)
          if (orbits[id].rooted_code == key) orbit[code][s] = id;
      }

    signed_patterns.push_back({});
    auto add_signed = [&](SignedPosition pos, std::array<int, 3> signs, const std::string& name) {
      SignedPatternInfo info;
      info.id = static_cast<int>(signed_patterns.size());
      info.position = pos;
      info.signs = signs;
      info.balanced = pos == SignedPosition::triangle && signs[0] * signs[1] * signs[2] > 0;
      info.name = name;
      signed_patterns.push_back(info);
    };
    auto ch = [](int s) { return s > 0 ? std::string("+") : std::string("-"); };
    for (int incident : {1, -1})
      for (int far : {1, -1})
        add_signed(SignedPosition::path_end, {incident, far, 0}, "end" + ch(incident) + ch(far));
    for (auto pair : {std::array<int, 2>{1, 1}, {1, -1}, {-1, -1}})
      add_signed(SignedPosition::path_middle, {pair[0], pair[1], 0}, "mid" + ch(pair[0]) + ch(pair[1]));
    for (auto pair : {std::array<int, 2>{1, 1}, {1, -1}, {-1, -1}})
      for (int opposite : {1, -1})
        add_signed(SignedPosition::triangle, {pair[0], pair[1], opposite},
                   "tri" + ch(pair[0]) + ch(pair[1]) + "/" + ch(opposite));
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

const std::array<std::array<int, 3>, 6>& slot_permutations() {
  static const std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  return perms;
}

TriadCode permute_code(TriadCode code, const std::array<int, 3>& perm) {
  TriadCode out = 0;
  for (int k = 0; k < 6; ++k)
    if ((code >> k) & 1) out |= static_cast<TriadCode>(1u << arc_bit(perm[kSlotArcs[k][0]], perm[kSlotArcs[k][1]]));
  return out;
}

TriadCode canonical_code(TriadCode code) { return tables().canonical[code & 63]; }
int classify(TriadCode code) { return tables().pattern_of[code & 63]; }

const PatternInfo& pattern_info(int id) {
  if (id < 1 || id > kPatternCount) throw std::out_of_range("pattern id");
  return tables().patterns[id - 1];
}

const OrbitInfo& orbit_info(int id) {
  if (id < 1 || id > kOrbitCount) throw std::out_of_range("orbit id");
  return tables().orbits[id];
}

int orbit_of(TriadCode code, int slot) { return tables().orbit[code & 63][slot]; }

const SignedPatternInfo& signed_pattern_info(int id) {
  if (id < 1 || id > kSignedPatternCount) throw std::out_of_range("signed pattern id");
  return tables().signed_patterns[id];
}

int signed_pattern_of(int s_ab, int s_ac, int s_bc) {
  auto pair_index = [](int x, int y) { return (x < 0) + (y < 0); };  // ++,+-,--
  if (s_ab != 0 && s_ac != 0) {
    if (s_bc != 0) return 8 + 2 * pair_index(s_ab, s_ac) + (s_bc < 0);
    return 5 + pair_index(s_ab, s_ac);
  }
  const int incident = s_ab != 0 ? s_ab : s_ac;
  if (incident == 0 || s_bc == 0) return 0;
  return 1 + 2 * (incident < 0) + (s_bc < 0);
}

TriadCode triad_code(const DirectedGraph& g, NodeId a, NodeId b, NodeId c) {
  TriadCode code = 0;
  if (g.has_arc(a, b)) code |= 1;
  if (g.has_arc(b, a)) code |= 2;
  if (g.has_arc(a, c)) code |= 4;
  if (g.has_arc(c, a)) code |= 8;
  if (g.has_arc(b, c)) code |= 16;
  if (g.has_arc(c, b)) code |= 32;
  return code;
}

namespace {

// Visits every connected triad exactly once as (u, v, c, in_u, in_v) where
// (u, v) is its lexicographically smallest occupied dyad and in_u / in_v
// tell whether c is adjacent to u / v.
template <typename Adj, typename Key, typename Fn>
void for_each_connected_triad(const Adj& adj, Key key, Fn&& fn) {
  using Pair = std::pair<NodeId, NodeId>;
  auto ordered = [](NodeId x, NodeId y) { return x < y ? Pair{x, y} : Pair{y, x}; };
  for (NodeId u = 0; u < adj.size(); ++u) {
    for (const auto& nv : adj[u]) {
      const NodeId v = key(nv);
      if (v <= u) continue;
      const Pair uv{u, v};
      auto a = adj[u].begin(), ae = adj[u].end();
      auto b = adj[v].begin(), be = adj[v].end();
      while (a != ae || b != be) {
        NodeId c;
        bool in_u = false, in_v = false;
        if (b == be || (a != ae && key(*a) < key(*b))) {
          c = key(*a++);
          in_u = true;
        } else if (a == ae || key(*b) < key(*a)) {
          c = key(*b++);
          in_v = true;
        } else {
          c = key(*a++);
          ++b;
          in_u = in_v = true;
        }
        if (c == u || c == v) continue;
        if (in_u && ordered(u, c) < uv) continue;
        if (in_v && ordered(v, c) < uv) continue;
        fn(u, v, c, in_u, in_v);
      }
    }
  }
}

std::vector<std::vector<NodeId>> undirected_adjacency(const DirectedGraph& g) {
  std::vector<std::vector<NodeId>> adj(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) adj[u] = g.undirected_neighbors(u);
  return adj;
}

}  // namespace

Census census(const DirectedGraph& g, bool connected_only) {
  Census counts{};
  const auto adj = undirected_adjacency(g);
  for_each_connected_triad(adj, [](NodeId x) { return x; },
                           [&](NodeId u, NodeId v, NodeId c, bool, bool) {
                             ++counts[classify(triad_code(g, u, v, c)) - 1];
                           });
  if (connected_only) return counts;

  const std::uint64_t n = g.node_count();
  std::uint64_t assigned = 0;
  for (std::uint64_t x : counts) assigned += x;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : adj[u]) {
      if (v <= u) continue;
      // third nodes adjacent to neither u nor v
      std::size_t joint = 0;
      auto a = adj[u].begin(), b = adj[v].begin();
      while (a != adj[u].end() || b != adj[v].end()) {
        if (b == adj[v].end() || (a != adj[u].end() && *a < *b)) ++a;
        else if (a == adj[u].end() || *b < *a) ++b;
        else { ++a; ++b; }
        ++joint;
      }
      const std::uint64_t isolated = n - joint;  // joint includes u and v themselves
      const int id = (g.has_arc(u, v) && g.has_arc(v, u)) ? 3 : 2;
      counts[id - 1] += isolated;
      assigned += isolated;
    }
  }
  const std::uint64_t all = n < 3 ? 0 : n * (n - 1) * (n - 2) / 6;
  counts[0] = all - assigned;
  return counts;
}

NodeCounts node_specific_counts(const DirectedGraph& g, Census& connected_census) {
  connected_census.fill(0);
  NodeCounts counts(g.node_count(), kOrbitCount);
  const auto adj = undirected_adjacency(g);
  for_each_connected_triad(adj, [](NodeId x) { return x; },
                           [&](NodeId u, NodeId v, NodeId c, bool, bool) {
                             const TriadCode code = triad_code(g, u, v, c);
                             ++connected_census[classify(code) - 1];
                             ++counts.at(u, orbit_of(code, 0) - 1);
                             ++counts.at(v, orbit_of(code, 1) - 1);
                             ++counts.at(c, orbit_of(code, 2) - 1);
                           });
  return counts;
}

NodeCounts node_specific_counts(const DirectedGraph& g) {
  Census unused;
  return node_specific_counts(g, unused);
}

NodeCounts signed_node_specific_counts(const SignedGraph& g) {
  NodeCounts counts(g.node_count(), kSignedPatternCount);
  std::vector<std::vector<SignedGraph::Neighbor>> adj(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u)
    adj[u].assign(g.neighbors(u).begin(), g.neighbors(u).end());
  for_each_connected_triad(adj, [](const SignedGraph::Neighbor& n) { return n.node; },
                           [&](NodeId u, NodeId v, NodeId c, bool, bool) {
                             const int uv = g.sign(u, v), uc = g.sign(u, c), vc = g.sign(v, c);
                             ++counts.at(u, signed_pattern_of(uv, uc, vc) - 1);
                             ++counts.at(v, signed_pattern_of(uv, vc, uc) - 1);
                             ++counts.at(c, signed_pattern_of(uc, vc, uv) - 1);
                           });
  return counts;
}

}  // namespace triadnet
