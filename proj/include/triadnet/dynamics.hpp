#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "triadnet/graph.hpp"
#include "triadnet/motif_stats.hpp"

namespace triadnet {

struct OscillatorParams {
  double a = 1.0;
  double omega = 2.0 * std::numbers::pi;
  double b = 0.8;
  double theta = 0.0;
  double dt = 0.01;
  std::size_t transient = 2000;
  std::size_t steps = 500000;
  std::size_t sample_every = 1;  // steps between correlation samples
  double noise = 1.0;            // noise amplitude
  std::uint64_t seed = 0;
};

struct Observables {
  double output = 0.0;       // time- and node-averaged |x|^2
  double correlation = 0.0;  // mean over pairs of |<x_j conj(x_k)>| / sqrt(P_j P_k)
};

// Heun step on the deterministic part, then complex Gaussian increments with
// per-component std sqrt(dt). Initial components are standard normal.
Observables simulate(const DirectedGraph& g, const OscillatorParams& p);
// Advances `x` by `steps` steps with the same scheme (no transient, no averaging).
void evolve(const DirectedGraph& g, const OscillatorParams& p, std::vector<std::complex<double>>& x,
            std::size_t steps);

// Largest eigenvalue modulus of the adjacency matrix.
double adjacency_spectral_radius(const DirectedGraph& g);
// 0.8 / gamma_1, or `fallback` when gamma_1 vanishes (acyclic graphs).
double default_coupling(const DirectedGraph& g, double fallback = 0.8);

std::vector<double> theta_grid(std::size_t points);

struct SweepResult {
  std::vector<double> theta;
  std::vector<double> output;
  std::vector<double> output_se;
  std::vector<double> correlation;
  std::vector<double> correlation_se;
  std::size_t repeats = 0;
};

struct SweepOptions {
  OscillatorParams base;
  bool auto_coupling = true;  // b = default_coupling(g) per graph
  unsigned workers = 0;
};

// One repeat per graph; repeat r uses noise seed derive_seed(base.seed, r)
// at every theta.
SweepResult theta_sweep(const std::vector<DirectedGraph>& graphs, const std::vector<double>& grid,
                        const SweepOptions& opts);
SweepResult theta_sweep(const DirectedGraph& g, const std::vector<double>& grid, std::size_t repeats,
                        const SweepOptions& opts);

// Index i is a local minimum when curve[i] + k * se[i] lies below the curve at
// both grid points `half_width` steps away (cyclic grid).
bool is_local_minimum(const std::vector<double>& curve, const std::vector<double>& se, std::size_t i,
                      std::size_t half_width, double k = 3.0);
std::size_t nearest_grid_index(const std::vector<double>& grid, double theta);

enum class Normalization {
  row,     // G_ij = A_ij / k_out(i)
  column,  // G_ij = A_ij / k_in(j)
};

// Eigenvalues of the normalized coupling matrix, by decreasing modulus.
// Throws NormalizationError listing nodes with zero degree.
std::vector<std::complex<double>> coupling_eigenvalues(const DirectedGraph& g, Normalization norm);
// gamma_1 - max |gamma_r| over the rest, gamma_1 the largest real eigenvalue.
double spectral_gap(const DirectedGraph& g, Normalization norm = Normalization::row);

enum class RemovalRanking { scores, degree, pagerank, betweenness, random };

struct RemovalOptions {
  RemovalRanking ranking = RemovalRanking::degree;
  std::vector<double> scores;  // per node, for RemovalRanking::scores
  std::size_t max_removals = 0;  // 0 = until exhausted
  bool recompute = false;        // re-rank after every removal (degree, pagerank, betweenness)
  Normalization normalization = Normalization::row;
  std::uint64_t seed = 0;
};

struct RemovalStep {
  std::size_t step = 0;
  std::optional<NodeId> node;   // empty for the intact graph
  std::vector<NodeId> pruned;   // nodes dropped because normalization failed for them
  std::size_t edges_removed = 0;  // cumulative arcs removed
  std::size_t nodes_left = 0;
  double delta = 0.0;
};

// Removes nodes in decreasing ranking (ties by id), then iteratively drops
// nodes the normalization cannot handle. Stops when no node remains.
std::vector<RemovalStep> removal_experiment(const DirectedGraph& g, const RemovalOptions& opts);

// Whole-graph profiles after removing order[0..k) in batches.
std::vector<ZProfile> z_profile_under_removal(const DirectedGraph& g, const std::vector<NodeId>& order,
                                              std::size_t batch, std::size_t batches,
                                              const ZProfileOptions& opts);

}  // namespace triadnet
