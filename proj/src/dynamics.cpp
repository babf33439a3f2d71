#include "triadnet/dynamics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <boost/random/normal_distribution.hpp>
#include <random>

#include "triadnet/errors.hpp"
#include "triadnet/measures.hpp"
#include "triadnet/parallel.hpp"
#include "triadnet/rng.hpp"

namespace triadnet {

namespace {

using Complex = std::complex<double>;

Eigen::MatrixXd adjacency(const DirectedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Arc& e : g.arcs()) a(e.source, e.target) = 1.0;
  return a;
}

double mean_se(const std::vector<double>& x, double& se) {
  const double m = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  se = 0.0;
  if (x.size() > 1) {
    double v = 0.0;
    for (double y : x) v += (y - m) * (y - m);
    se = std::sqrt(v / (x.size() - 1) / x.size());
  }
  return m;
}

}  // namespace

namespace {

// Heun integrator for the linear coupled system plus additive noise.
class Stepper {
 public:
  Stepper(const DirectedGraph& g, const OscillatorParams& p)
      : n_(g.node_count()),
        start_(n_ + 1, 0),
        lin_(-p.a, p.omega),
        coupling_(p.b * std::polar(1.0, p.theta)),
        dt_(p.dt),
        noise_sd_(p.noise * std::sqrt(p.dt)),
        k1_(n_),
        k2_(n_),
        tmp_(n_) {
    if (!(p.a > 0.0)) throw UndefinedInputError("damping a must be positive");
    if (!(p.dt > 0.0)) throw UndefinedInputError("step size must be positive");
    for (NodeId j = 0; j < n_; ++j) {
      for (NodeId k : g.in_neighbors(j)) src_.push_back(k);
      start_[j + 1] = src_.size();
    }
  }

  void step(std::vector<Complex>& x, Rng& rng) {
    rhs(x, k1_);
    for (std::size_t j = 0; j < n_; ++j) tmp_[j] = x[j] + dt_ * k1_[j];
    rhs(tmp_, k2_);
    for (std::size_t j = 0; j < n_; ++j) x[j] += 0.5 * dt_ * (k1_[j] + k2_[j]);
    if (noise_sd_ > 0.0)
      for (std::size_t j = 0; j < n_; ++j) x[j] += Complex(noise_sd_ * normal_(rng), noise_sd_ * normal_(rng));
  }

 private:
  void rhs(const std::vector<Complex>& in, std::vector<Complex>& out) const {
    for (std::size_t j = 0; j < n_; ++j) {
      Complex s = 0.0;
      for (std::size_t e = start_[j]; e < start_[j + 1]; ++e) s += in[src_[e]];
      out[j] = lin_ * in[j] + coupling_ * s;
    }
  }

  std::size_t n_;
  std::vector<std::size_t> start_;  // in-neighbors in CSR form
  std::vector<NodeId> src_;
  Complex lin_;
  Complex coupling_;
  double dt_;
  double noise_sd_;
  std::vector<Complex> k1_, k2_, tmp_;
  boost::random::normal_distribution<double> normal_{0.0, 1.0};  // ziggurat
};

}  // namespace

void evolve(const DirectedGraph& g, const OscillatorParams& p, std::vector<Complex>& x, std::size_t steps) {
  if (x.size() != g.node_count()) throw UndefinedInputError("state size differs from node count");
  Stepper stepper(g, p);
  Rng rng = make_rng(p.seed);
  for (std::size_t t = 0; t < steps; ++t) stepper.step(x, rng);
}

Observables simulate(const DirectedGraph& g, const OscillatorParams& p) {
  if (p.steps < 1) throw UndefinedInputError("need at least one measurement step");
  const std::size_t n = g.node_count();
  const std::size_t stride = std::max<std::size_t>(1, p.sample_every);
  Stepper stepper(g, p);
  Rng rng = make_rng(p.seed);
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> x(n);
  for (auto& v : x) v = Complex(normal(rng), normal(rng));

  std::vector<double> sampled_power(n, 0.0);
  std::vector<Complex> cross(n * (n - 1) / 2 + 1, 0.0);
  double total_power = 0.0;
  const std::size_t total = p.transient + p.steps;
  for (std::size_t t = 0; t < total; ++t) {
    stepper.step(x, rng);
    if (t < p.transient) continue;
    for (std::size_t j = 0; j < n; ++j) total_power += std::norm(x[j]);
    if ((t - p.transient) % stride != 0) continue;
    std::size_t idx = 0;
    for (std::size_t j = 0; j < n; ++j) {
      sampled_power[j] += std::norm(x[j]);
      const Complex xj = x[j];
      for (std::size_t k = j + 1; k < n; ++k) cross[idx++] += xj * std::conj(x[k]);
    }
    if (!std::isfinite(total_power) || total_power > 1e200)
      throw InstabilityError("oscillator state diverged at theta = " + std::to_string(p.theta) +
                             ", b = " + std::to_string(p.b));
  }
  Observables o;
  o.output = n ? total_power / (static_cast<double>(p.steps) * n) : 0.0;
  double sum = 0.0;
  std::size_t idx = 0, pairs = 0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k, ++idx) {
      const double denom = std::sqrt(sampled_power[j] * sampled_power[k]);
      if (denom > 0.0) {
        sum += std::abs(cross[idx]) / denom;
        ++pairs;
      }
    }
  o.correlation = pairs ? sum / pairs : 0.0;
  return o;
}

double adjacency_spectral_radius(const DirectedGraph& g) {
  if (g.node_count() == 0) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(adjacency(g), false);
  double r = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) r = std::max(r, std::abs(es.eigenvalues()(i)));
  return r;
}

double default_coupling(const DirectedGraph& g, double fallback) {
  const double gamma = adjacency_spectral_radius(g);
  return gamma > 1e-9 ? 0.8 / gamma : fallback;
}

std::vector<double> theta_grid(std::size_t points) {
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) grid[i] = 2.0 * std::numbers::pi * i / points;
  return grid;
}

SweepResult theta_sweep(const std::vector<DirectedGraph>& graphs, const std::vector<double>& grid,
                        const SweepOptions& opts) {
  if (grid.empty()) throw UndefinedInputError("theta grid is empty");
  if (graphs.empty()) throw UndefinedInputError("no graphs to sweep");
  const std::size_t r = graphs.size(), m = grid.size();
  std::vector<double> coupling(r);
  for (std::size_t i = 0; i < r; ++i) coupling[i] = opts.auto_coupling ? default_coupling(graphs[i]) : opts.base.b;
  std::vector<Observables> cells(r * m);
  parallel_for(r * m, opts.workers, [&](std::size_t cell, unsigned) {
    const std::size_t rep = cell / m, t = cell % m;
    OscillatorParams p = opts.base;
    p.b = coupling[rep];
    p.theta = grid[t];
    p.seed = derive_seed(opts.base.seed, rep);
    cells[cell] = simulate(graphs[rep], p);
  });
  SweepResult s;
  s.theta = grid;
  s.repeats = r;
  for (std::size_t t = 0; t < m; ++t) {
    std::vector<double> out(r), corr(r);
    for (std::size_t rep = 0; rep < r; ++rep) {
      out[rep] = cells[rep * m + t].output;
      corr[rep] = cells[rep * m + t].correlation;
    }
    double se = 0.0;
    s.output.push_back(mean_se(out, se));
    s.output_se.push_back(se);
    s.correlation.push_back(mean_se(corr, se));
    s.correlation_se.push_back(se);
  }
  return s;
}

SweepResult theta_sweep(const DirectedGraph& g, const std::vector<double>& grid, std::size_t repeats,
                        const SweepOptions& opts) {
  return theta_sweep(std::vector<DirectedGraph>(std::max<std::size_t>(repeats, 1), g), grid, opts);
}

bool is_local_minimum(const std::vector<double>& curve, const std::vector<double>& se, std::size_t i,
                      std::size_t half_width, double k) {
  const std::size_t m = curve.size();
  const std::size_t left = (i + m - half_width % m) % m, right = (i + half_width) % m;
  const double top = curve[i] + k * se[i];
  return top < curve[left] && top < curve[right];
}

std::size_t nearest_grid_index(const std::vector<double>& grid, double theta) {
  std::size_t best = 0;
  double best_d = 1e300;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double d = std::fmod(std::abs(grid[i] - theta), 2.0 * std::numbers::pi);
    d = std::min(d, 2.0 * std::numbers::pi - d);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::vector<Complex> coupling_eigenvalues(const DirectedGraph& g, Normalization norm) {
  const std::size_t n = g.node_count();
  if (n == 0) throw UndefinedInputError("spectrum of an empty graph");
  std::vector<std::size_t> bad;
  for (NodeId u = 0; u < n; ++u)
    if ((norm == Normalization::row ? g.out_degree(u) : g.in_degree(u)) == 0) bad.push_back(u);
  if (!bad.empty())
    throw NormalizationError(std::to_string(bad.size()) + " nodes have zero " +
                                 (norm == Normalization::row ? "out" : "in") + "-degree",
                             bad);
  Eigen::MatrixXd a = adjacency(g);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (norm == Normalization::row)
      a.row(i) /= a.row(i).sum();
    else
      a.col(i) /= a.col(i).sum();
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::stable_sort(ev.begin(), ev.end(), [](Complex x, Complex y) { return std::abs(x) > std::abs(y); });
  return ev;
}

double spectral_gap(const DirectedGraph& g, Normalization norm) {
  const auto ev = coupling_eigenvalues(g, norm);
  std::size_t lead = 0;
  for (std::size_t i = 1; i < ev.size(); ++i)
    if (ev[i].real() > ev[lead].real()) lead = i;
  double second = 0.0;
  for (std::size_t i = 0; i < ev.size(); ++i)
    if (i != lead) second = std::max(second, std::abs(ev[i]));
  const double delta = ev[lead].real() - second;
  return std::abs(delta) < 1e-10 ? 0.0 : delta;
}

namespace {

std::vector<double> ranking_scores(const DirectedGraph& g, const RemovalOptions& opts) {
  const std::size_t n = g.node_count();
  switch (opts.ranking) {
    case RemovalRanking::scores:
      if (opts.scores.size() != n) throw UndefinedInputError("need one score per node");
      return opts.scores;
    case RemovalRanking::degree: {
      std::vector<double> s(n);
      for (NodeId u = 0; u < n; ++u) s[u] = static_cast<double>(g.in_degree(u) + g.out_degree(u));
      return s;
    }
    case RemovalRanking::pagerank:
      return pagerank(g);
    case RemovalRanking::betweenness:
      return betweenness(g);
    case RemovalRanking::random: {
      std::vector<double> s(n);
      Rng rng = make_rng(opts.seed);
      for (double& x : s) x = uniform01(rng);
      return s;
    }
  }
  return {};
}

// Highest score first, ties by id.
std::vector<NodeId> order_by(const std::vector<double>& s) {
  std::vector<NodeId> order(s.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId x, NodeId y) { return s[x] > s[y]; });
  return order;
}

}  // namespace

std::vector<RemovalStep> removal_experiment(const DirectedGraph& g, const RemovalOptions& opts) {
  const std::size_t n = g.node_count();
  std::vector<bool> removed(n, false);
  std::size_t alive = n;
  const bool row = opts.normalization == Normalization::row;

  auto prune = [&](DirectedGraph& cur) {
    std::vector<NodeId> dropped;
    bool changed = true;
    while (changed) {
      changed = false;
      for (NodeId u = 0; u < n; ++u)
        if (!removed[u] && (row ? cur.out_degree(u) : cur.in_degree(u)) == 0) {
          removed[u] = true;
          --alive;
          dropped.push_back(u);
          changed = true;
        }
      if (changed) cur = g.without_nodes(removed);
    }
    return dropped;
  };
  auto record = [&](std::vector<RemovalStep>& out, std::optional<NodeId> node, DirectedGraph& cur) {
    RemovalStep s;
    s.step = out.size();
    s.node = node;
    s.pruned = prune(cur);
    s.edges_removed = g.arc_count() - cur.arc_count();
    s.nodes_left = alive;
    if (alive > 0) {
      std::vector<bool> keep(n);
      for (NodeId u = 0; u < n; ++u) keep[u] = !removed[u];
      s.delta = spectral_gap(cur.induced(keep), opts.normalization);
    }
    out.push_back(s);
  };

  std::vector<RemovalStep> out;
  DirectedGraph cur = g;
  record(out, std::nullopt, cur);
  std::vector<NodeId> order = order_by(ranking_scores(g, opts));
  const bool rerank = opts.recompute && (opts.ranking == RemovalRanking::degree ||
                                         opts.ranking == RemovalRanking::pagerank ||
                                         opts.ranking == RemovalRanking::betweenness);
  std::size_t next = 0, count = 0;
  while (alive > 0 && (opts.max_removals == 0 || count < opts.max_removals)) {
    NodeId victim = 0;
    if (rerank) {
      std::vector<bool> keep(n);
      std::vector<NodeId> ids;
      for (NodeId u = 0; u < n; ++u)
        if ((keep[u] = !removed[u])) ids.push_back(u);
      const auto local = order_by(ranking_scores(cur.induced(keep), opts));
      victim = ids[local.front()];
    } else {
      while (removed[order[next]]) ++next;
      victim = order[next];
    }
    removed[victim] = true;
    --alive;
    ++count;
    cur = g.without_nodes(removed);
    record(out, victim, cur);
  }
  return out;
}

std::vector<ZProfile> z_profile_under_removal(const DirectedGraph& g, const std::vector<NodeId>& order,
                                              std::size_t batch, std::size_t batches,
                                              const ZProfileOptions& opts) {
  std::vector<ZProfile> out;
  std::vector<bool> removed(g.node_count(), false);
  std::size_t next = 0;
  out.push_back(z_profile(g, opts));
  for (std::size_t b = 0; b < batches && next < order.size(); ++b) {
    for (std::size_t i = 0; i < batch && next < order.size(); ++i) removed[order[next++]] = true;
    out.push_back(z_profile(g.without_nodes(removed), opts));
  }
  return out;
}

}  // namespace triadnet
