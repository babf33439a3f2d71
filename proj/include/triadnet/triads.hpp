#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "triadnet/graph.hpp"

namespace triadnet {

// Six-bit triad configuration over slots (a, b, c). Bit k is the arc
//   0: a->b  1: b->a  2: a->c  3: c->a  4: b->c  5: c->b
using TriadCode = std::uint8_t;

inline constexpr int kPatternCount = 16;
inline constexpr int kFirstConnectedPattern = 4;
inline constexpr int kConnectedPatternCount = 13;
inline constexpr int kOrbitCount = 30;
inline constexpr int kSignedPatternCount = 13;
inline constexpr int kFeedForwardLoop = 8;
inline constexpr int kThreeCycle = 9;

struct PatternInfo {
  int id = 0;
  std::string name;              // MAN-style label, e.g. "030T"
  TriadCode representative = 0;  // fixed member used for sampling
  TriadCode canonical = 0;       // minimum code over the six relabelings
  int arcs = 0;
  int mutual_dyads = 0;
  bool connected = false;
  bool closed = false;                    // all three dyads occupied
  std::vector<TriadCode> configurations;  // the relabeling orbit, ascending
  std::vector<int> orbits;                // node-specific orbit ids, ascending
};

struct OrbitInfo {
  int id = 0;
  int pattern = 0;
  int index = 0;  // position within the pattern's orbit list
  int size = 0;   // number of slots of the representative in this orbit
  TriadCode rooted_code = 0;  // minimal code with a member of the orbit in slot a
};

// Relabeling: the node in slot s moves to slot perm[s].
TriadCode permute_code(TriadCode code, const std::array<int, 3>& perm);
const std::array<std::array<int, 3>, 6>& slot_permutations();

TriadCode canonical_code(TriadCode code);
int classify(TriadCode code);
const PatternInfo& pattern_info(int id);
const OrbitInfo& orbit_info(int id);
// Orbit id (1..30) of the node in `slot` of a connected configuration, 0 otherwise.
int orbit_of(TriadCode code, int slot);

TriadCode triad_code(const DirectedGraph& g, NodeId a, NodeId b, NodeId c);

using Census = std::array<std::uint64_t, kPatternCount>;  // index = pattern id - 1

// connected_only: patterns 1..3 are left at zero and only triads with at
// least two occupied dyads are visited.
Census census(const DirectedGraph& g, bool connected_only);

// Dense row-major node x column count table.
struct NodeCounts {
  std::size_t nodes = 0;
  std::size_t width = 0;
  std::vector<std::uint64_t> data;

  NodeCounts() = default;
  NodeCounts(std::size_t n, std::size_t w) : nodes(n), width(w), data(n * w, 0) {}
  std::uint64_t& at(std::size_t node, std::size_t column) { return data[node * width + column]; }
  std::uint64_t at(std::size_t node, std::size_t column) const {
    return data[node * width + column];
  }
  std::span<const std::uint64_t> row(std::size_t node) const {
    return {data.data() + node * width, width};
  }
  bool operator==(const NodeCounts&) const = default;
};

// Column k holds orbit id k+1.
NodeCounts node_specific_counts(const DirectedGraph& g);
// Both at once; the census has patterns 1..3 at zero.
NodeCounts node_specific_counts(const DirectedGraph& g, Census& connected_census);

enum class SignedPosition { path_end, path_middle, triangle };

struct SignedPatternInfo {
  int id = 0;
  SignedPosition position = SignedPosition::path_end;
  // path_end: {incident, far}; path_middle: {incident, incident};
  // triangle: {incident, incident, opposite}. Unused entries are 0.
  std::array<int, 3> signs{};
  bool balanced = false;  // triangles only: sign product is +1
  std::string name;
};

const SignedPatternInfo& signed_pattern_info(int id);
// Signed pattern of a connected triad seen from the focal node. s_ab, s_ac
// are the focal node's edges (0 if absent), s_bc the opposite edge.
int signed_pattern_of(int s_ab, int s_ac, int s_bc);

// Column k holds signed pattern id k+1.
NodeCounts signed_node_specific_counts(const SignedGraph& g);

}  // namespace triadnet
