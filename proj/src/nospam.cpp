#include "triadnet/nospam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "triadnet/errors.hpp"
#include "triadnet/parallel.hpp"
#include "triadnet/triads.hpp"

namespace triadnet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void add_counts(std::vector<Moments>& acc, const NodeCounts& c) {
  for (std::size_t i = 0; i < c.data.size(); ++i) acc[i].add(static_cast<double>(c.data[i]));
}

std::vector<Moments> merge_partials(const std::vector<std::vector<Moments>>& partial, std::size_t size) {
  std::vector<Moments> total(size);
  for (const auto& part : partial)
    for (std::size_t i = 0; i < size; ++i) total[i].merge(part[i]);
  return total;
}

// Pearson over coordinates finite in both.
double masked_pearson(const double* x, const double* y, std::size_t n) {
  std::vector<double> a, b;
  for (std::size_t i = 0; i < n; ++i)
    if (std::isfinite(x[i]) && std::isfinite(y[i])) {
      a.push_back(x[i]);
      b.push_back(y[i]);
    }
  return pearson(a, b);
}

}  // namespace

std::vector<double> NodeZProfile::defined_row(std::size_t node) const {
  std::vector<double> row(width);
  for (std::size_t k = 0; k < width; ++k) row[k] = defined(node, k) ? z_at(node, k) : kNaN;
  return row;
}

NodeZProfile node_z_from_moments(const NodeCounts& original, const std::vector<Moments>& ensemble,
                                 std::size_t instances, VarianceMode mode) {
  NodeZProfile p;
  p.nodes = original.nodes;
  p.width = original.width;
  p.instances = instances;
  p.variance = mode;
  const std::size_t size = p.nodes * p.width;
  p.original.resize(size);
  p.mean.resize(size);
  p.sigma.resize(size);
  p.z.resize(size);
  p.flags.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    p.original[i] = static_cast<double>(original.data[i]);
    const ZScore s = z_score(p.original[i], ensemble[i], mode);
    p.mean[i] = s.mean;
    p.sigma[i] = s.sigma;
    p.z[i] = s.z;
    p.flags[i] = s.flag;
  }
  return p;
}

NospamResult nospam_directed(const DirectedGraph& g, const NospamOptions& opts) {
  if (opts.ensemble.instances < 2) throw std::invalid_argument("node-specific profiles need at least 2 instances");
  const unsigned workers = resolve_workers(opts.ensemble.workers);
  const std::size_t size = g.node_count() * kOrbitCount;
  std::vector<std::vector<Moments>> partial(workers, std::vector<Moments>(size));
  std::vector<std::array<Moments, kConnectedPatternCount>> whole(workers);
  for_each_instance(g, opts.ensemble, [&](std::size_t, unsigned w, const DirectedGraph& h) {
    Census c{};
    add_counts(partial[w], node_specific_counts(h, c));
    const PatternVector v = connected_counts(c);
    for (std::size_t k = 0; k < kConnectedPatternCount; ++k) whole[w][k].add(v[k]);
  });
  std::array<Moments, kConnectedPatternCount> whole_total{};
  for (const auto& part : whole)
    for (std::size_t k = 0; k < kConnectedPatternCount; ++k) whole_total[k].merge(part[k]);

  Census original_census{};
  const NodeCounts original = node_specific_counts(g, original_census);
  NospamResult r;
  r.nodes = node_z_from_moments(original, merge_partials(partial, size), opts.ensemble.instances, opts.variance);
  r.whole = z_profile_from_moments(connected_counts(original_census), whole_total, opts.variance);
  return r;
}

NodeZProfile nospam_signed(const SignedGraph& g, const NospamOptions& opts) {
  if (opts.ensemble.instances < 2) throw std::invalid_argument("node-specific profiles need at least 2 instances");
  const unsigned workers = resolve_workers(opts.ensemble.workers);
  const std::size_t size = g.node_count() * kSignedPatternCount;
  std::vector<std::vector<Moments>> partial(workers, std::vector<Moments>(size));
  for_each_instance(g, opts.ensemble, [&](std::size_t, unsigned w, const SignedGraph& h) {
    add_counts(partial[w], signed_node_specific_counts(h));
  });
  return node_z_from_moments(signed_node_specific_counts(g), merge_partials(partial, size),
                             opts.ensemble.instances, opts.variance);
}

MappedProfiles map_profiles(const NodeZProfile& z) {
  if (z.width != static_cast<std::size_t>(kOrbitCount))
    throw UndefinedInputError("mapping needs directed 30-orbit profiles");
  MappedProfiles out;
  out.nodes = z.nodes;
  out.m.resize(z.nodes);
  out.used_orbits.resize(z.nodes);
  for (std::size_t a = 0; a < z.nodes; ++a) {
    PatternVector sum{};
    std::array<int, kConnectedPatternCount> used{};
    for (int o = 1; o <= kOrbitCount; ++o) {
      if (!z.defined(a, o - 1)) continue;
      const auto k = ZProfile::index(orbit_info(o).pattern);
      sum[k] += z.z_at(a, o - 1);
      ++used[k];
    }
    for (std::size_t k = 0; k < kConnectedPatternCount; ++k) out.m[a][k] = used[k] ? sum[k] / used[k] : kNaN;
    out.used_orbits[a] = used;
  }
  return out;
}

Homogeneity homogeneity(const MappedProfiles& m, const ZProfile& whole) {
  PatternVector w{};
  for (std::size_t k = 0; k < kConnectedPatternCount; ++k) w[k] = whole.flags[k] == ZFlag::ok ? whole.z[k] : kNaN;
  Homogeneity h;
  h.per_node.assign(m.nodes, kNaN);
  std::vector<double> values;
  for (std::size_t a = 0; a < m.nodes; ++a) {
    const double r = masked_pearson(m.m[a].data(), w.data(), kConnectedPatternCount);
    if (std::isnan(r)) {
      ++h.nodes_excluded;
      continue;
    }
    h.per_node[a] = r;
    values.push_back(r);
  }
  h.nodes_used = values.size();
  if (values.empty()) throw UndefinedMeasureError("no node has a defined profile correlation");
  h.mean = mean_of(values);
  h.stddev = stddev_of(values);
  return h;
}

double homophily(const std::vector<std::vector<double>>& profiles,
                 const std::vector<std::pair<NodeId, NodeId>>& edges) {
  const std::size_t n = profiles.size();
  if (n < 2) throw UndefinedMeasureError("homophily needs at least 2 nodes");
  if (edges.empty()) throw UndefinedMeasureError("homophily needs at least one edge");
  const std::size_t width = profiles[0].size();
  std::vector<double> corr(n * n, kNaN);
  double all_sum = 0.0;
  std::size_t all_count = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const double r = masked_pearson(profiles[a].data(), profiles[b].data(), width);
      corr[a * n + b] = r;
      if (!std::isnan(r)) {
        all_sum += r;
        ++all_count;
      }
    }
  double edge_sum = 0.0;
  std::size_t edge_count = 0;
  for (auto [u, v] : edges) {
    const double r = corr[std::min(u, v) * n + std::max(u, v)];
    if (!std::isnan(r)) {
      edge_sum += r;
      ++edge_count;
    }
  }
  if (all_count == 0 || edge_count == 0) throw UndefinedMeasureError("no connected pair has a defined correlation");
  return edge_sum / edge_count - all_sum / all_count;
}

namespace {

std::vector<std::vector<double>> rows_of(const NodeZProfile& z) {
  std::vector<std::vector<double>> rows(z.nodes);
  for (std::size_t a = 0; a < z.nodes; ++a) rows[a] = z.defined_row(a);
  return rows;
}

}  // namespace

double homophily(const NodeZProfile& z, const DirectedGraph& g) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (NodeId v : g.undirected_neighbors(u))
      if (u < v) edges.push_back({u, v});
  return homophily(rows_of(z), edges);
}

double homophily(const NodeZProfile& z, const SignedGraph& g) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  return homophily(rows_of(z), edges);
}

double profile_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (std::isfinite(a[k]) && std::isfinite(b[k])) d += (a[k] - b[k]) * (a[k] - b[k]);
  return d;
}

Dendrogram complete_link_cluster(const std::vector<std::vector<double>>& profiles) {
  const std::size_t n = profiles.size();
  if (n < 2) throw UndefinedInputError("clustering needs at least 2 items");
  // Slot i holds the cluster whose smallest member is i.
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = profile_distance(profiles[i], profiles[j]);
  std::vector<bool> active(n, true);
  std::vector<std::size_t> id(n), size(n, 1);
  std::iota(id.begin(), id.end(), std::size_t{0});
  // Nearest active slot above i, smallest index on ties.
  std::vector<std::size_t> nn(n, n);
  std::vector<double> nn_d(n, std::numeric_limits<double>::infinity());
  auto refresh = [&](std::size_t i) {
    nn[i] = n;
    nn_d[i] = std::numeric_limits<double>::infinity();
    for (std::size_t j = i + 1; j < n; ++j)
      if (active[j] && d[i * n + j] < nn_d[i]) {
        nn_d[i] = d[i * n + j];
        nn[i] = j;
      }
  };
  for (std::size_t i = 0; i < n; ++i) refresh(i);

  Dendrogram dg;
  dg.leaves = n;
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t a = n;
    for (std::size_t i = 0; i < n; ++i)
      if (active[i] && nn[i] < n && (a == n || nn_d[i] < nn_d[a])) a = i;
    const std::size_t b = nn[a];
    const double dist = nn_d[a];
    dg.merges.push_back({std::min(id[a], id[b]), std::max(id[a], id[b]), dist, size[a] + size[b]});
    active[b] = false;
    size[a] += size[b];
    id[a] = n + step;
    for (std::size_t k = 0; k < n; ++k)
      if (active[k] && k != a) d[a * n + k] = d[k * n + a] = std::max(d[a * n + k], d[b * n + k]);
    // Distances to a only grew; entries that pointed at a or b need a rescan,
    // others switch to a only on an equal distance with a smaller index.
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      if (i == a || nn[i] == a || nn[i] == b) {
        refresh(i);
      } else if (i < a && (d[i * n + a] < nn_d[i] || (d[i * n + a] == nn_d[i] && a < nn[i]))) {
        nn[i] = a;
        nn_d[i] = d[i * n + a];
      }
    }
  }
  return dg;
}

namespace {

std::vector<std::size_t> labels_after(const Dendrogram& dg, std::size_t applied) {
  const std::size_t n = dg.leaves;
  std::vector<std::size_t> parent(n + dg.merges.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t s = 0; s < applied; ++s) parent[dg.merges[s].a] = parent[dg.merges[s].b] = n + s;
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  std::vector<std::size_t> label(n), map(parent.size(), n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = root(i);
    if (map[r] == n) map[r] = next++;
    label[i] = map[r];
  }
  return label;
}

}  // namespace

std::vector<std::size_t> Dendrogram::cut_count(std::size_t k) const {
  if (k < 1 || k > leaves) throw UndefinedInputError("cluster count must lie in 1..N");
  return labels_after(*this, leaves - k);
}

std::vector<std::size_t> Dendrogram::cut_threshold(double threshold) const {
  std::size_t applied = 0;
  while (applied < merges.size() && merges[applied].distance <= threshold) ++applied;
  return labels_after(*this, applied);
}

Histogram ffl_heterogeneity_histogram(const MappedProfiles& m, double bin_width, std::size_t top_k) {
  if (!(bin_width > 0)) throw UndefinedInputError("bin width must be positive");
  const std::size_t k = ZProfile::index(kFeedForwardLoop);
  Histogram h;
  h.width = bin_width;
  std::vector<std::pair<double, std::size_t>> values;
  for (std::size_t a = 0; a < m.nodes; ++a) {
    const double x = m.m[a][k];
    if (std::isnan(x)) {
      ++h.excluded;
      continue;
    }
    values.push_back({x, a});
  }
  if (values.empty()) return h;
  double lo = values[0].first, hi = lo;
  std::size_t small = 0;
  for (auto [x, a] : values) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    small += std::abs(x) < 1.0;
  }
  h.lower = std::floor(lo / bin_width) * bin_width;
  h.counts.assign(static_cast<std::size_t>(std::floor((hi - h.lower) / bin_width)) + 1, 0);
  for (auto [x, a] : values)
    ++h.counts[std::min(h.counts.size() - 1, static_cast<std::size_t>(std::floor((x - h.lower) / bin_width)))];
  h.fraction_small = static_cast<double>(small) / values.size();
  h.max_value = hi;
  std::stable_sort(values.begin(), values.end(), [](auto& x, auto& y) { return x.first > y.first; });
  for (std::size_t i = 0; i < std::min(top_k, values.size()); ++i) h.top_nodes.push_back(values[i].second);
  return h;
}

}  // namespace triadnet
