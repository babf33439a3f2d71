#include "triadnet/trgm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <random>

#include "triadnet/errors.hpp"
#include "triadnet/rng.hpp"

namespace triadnet {

namespace {

void check_order(std::uint32_t n) {
  if (!admissible_order(n))
    throw AdmissibilityError("TRGM order " + std::to_string(n) + " is not 1 or 3 mod 6");
}

// Writes pattern `id` onto the triple in a uniformly random configuration.
void place_pattern(int id, const Triple& t, Rng& rng, std::vector<Arc>& arcs) {
  const auto& perms = slot_permutations();
  const auto& perm = perms[uniform_index(rng, perms.size())];
  const NodeId slot[3] = {t[perm[0]] - 1, t[perm[1]] - 1, t[perm[2]] - 1};
  const TriadCode code = pattern_info(id).representative;
  static constexpr int kFrom[6] = {0, 1, 0, 2, 1, 2};
  static constexpr int kTo[6] = {1, 0, 2, 0, 2, 1};
  for (int bit = 0; bit < 6; ++bit)
    if (code >> bit & 1) arcs.push_back({slot[kFrom[bit]], slot[kTo[bit]]});
}

double log_factorial(std::size_t k) { return std::lgamma(static_cast<double>(k) + 1.0); }

}  // namespace

void check_distribution(const PatternDistribution& p) {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw UndefinedInputError("pattern probabilities must be non-negative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw UndefinedInputError("pattern probabilities must sum to 1");
}

void check_counts(const PatternCounts& t, std::uint32_t n) {
  const std::uint64_t total = std::accumulate(t.begin(), t.end(), std::uint64_t{0});
  const std::uint64_t need = static_cast<std::uint64_t>(n) * (n - 1) / 6;
  if (total != need)
    throw UndefinedInputError("pattern counts sum to " + std::to_string(total) + ", order " + std::to_string(n) +
                              " has " + std::to_string(need) + " Steiner triples");
}

PatternDistribution er_distribution(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw UndefinedInputError("arc probability must lie in [0, 1]");
  PatternDistribution d{};
  for (int id = 1; id <= kPatternCount; ++id) {
    const auto& info = pattern_info(id);
    d[id - 1] = static_cast<double>(info.configurations.size()) * std::pow(p, info.arcs) * std::pow(1.0 - p, 6 - info.arcs);
  }
  return d;
}

double expected_density(const PatternDistribution& p) {
  double s = 0.0;
  for (int id = 1; id <= kPatternCount; ++id) s += p[id - 1] * pattern_info(id).arcs;
  return s / 6.0;
}

DirectedGraph sample_trgm(const SteinerTripleSystem& sts, const PatternDistribution& p, std::uint64_t seed) {
  check_distribution(p);
  Rng rng = make_rng(seed);
  std::discrete_distribution<int> pick(p.begin(), p.end());
  std::vector<Arc> arcs;
  for (const Triple& t : sts.triples) place_pattern(pick(rng) + 1, t, rng, arcs);
  return DirectedGraph(sts.order, arcs);
}

DirectedGraph sample_trgm(const SteinerTripleSystem& sts, const PatternCounts& t, std::uint64_t seed) {
  check_counts(t, sts.order);
  Rng rng = make_rng(seed);
  std::vector<int> assignment;
  assignment.reserve(sts.triples.size());
  for (int id = 1; id <= kPatternCount; ++id) assignment.insert(assignment.end(), t[id - 1], id);
  std::shuffle(assignment.begin(), assignment.end(), rng);
  std::vector<Arc> arcs;
  for (std::size_t k = 0; k < sts.triples.size(); ++k) place_pattern(assignment[k], sts.triples[k], rng, arcs);
  return DirectedGraph(sts.order, arcs);
}

DirectedGraph sample_trgm(std::uint32_t n, const PatternDistribution& p, std::uint64_t seed) {
  check_order(n);
  return sample_trgm(sts_construct(n), p, seed);
}

DirectedGraph sample_trgm(std::uint32_t n, const PatternCounts& t, std::uint64_t seed) {
  check_order(n);
  return sample_trgm(sts_construct(n), t, seed);
}

TripleDegreeLaw triple_degree_law(const PatternDistribution& p, DegreeDirection dir) {
  // Per pattern, the fraction of its configurations giving slot a one or two
  // arcs in the chosen direction.
  std::array<int, kPatternCount> total{}, one{}, two{};
  for (int code = 0; code < 64; ++code) {
    const int id = classify(static_cast<TriadCode>(code));
    const int k = dir == DegreeDirection::in ? (code >> 1 & 1) + (code >> 3 & 1) : (code & 1) + (code >> 2 & 1);
    ++total[id - 1];
    if (k == 1) ++one[id - 1];
    if (k == 2) ++two[id - 1];
  }
  TripleDegreeLaw law;
  for (int i = 0; i < kPatternCount; ++i) {
    law.single += p[i] * one[i] / total[i];
    law.pair += p[i] * two[i] / total[i];
  }
  return law;
}

std::vector<double> degree_distribution(const PatternDistribution& p, std::uint32_t n, DegreeDirection dir) {
  check_order(n);
  const TripleDegreeLaw law = triple_degree_law(p, dir);
  const std::size_t k = (n - 1) / 2;
  const double rest = std::max(0.0, 1.0 - law.single - law.pair);
  std::vector<double> out(n, 0.0);
  for (std::size_t ns = 0; ns <= k; ++ns)
    for (std::size_t nd = 0; ns + nd <= k; ++nd) {
      const std::size_t nr = k - ns - nd;
      double term = 1.0;
      // exact zeros for 0^0-style edge cases
      if ((ns > 0 && law.single == 0.0) || (nd > 0 && law.pair == 0.0) || (nr > 0 && rest == 0.0)) continue;
      term = log_factorial(k) - log_factorial(ns) - log_factorial(nd) - log_factorial(nr);
      if (ns > 0) term += ns * std::log(law.single);
      if (nd > 0) term += nd * std::log(law.pair);
      if (nr > 0) term += nr * std::log(rest);
      out[ns + 2 * nd] += std::exp(term);
    }
  return out;
}

std::vector<double> degree_distribution_limit(double mean_single, double mean_pair, std::size_t max_degree) {
  std::vector<double> out(max_degree + 1, 0.0);
  for (std::size_t kappa = 0; kappa <= max_degree; ++kappa) {
    double sum = 0.0;
    for (std::size_t nd = 0; 2 * nd <= kappa; ++nd) {
      const std::size_t ns = kappa - 2 * nd;
      if ((ns > 0 && mean_single == 0.0) || (nd > 0 && mean_pair == 0.0)) continue;
      double term = -log_factorial(ns) - log_factorial(nd);
      if (ns > 0) term += ns * std::log(mean_single);
      if (nd > 0) term += nd * std::log(mean_pair);
      sum += std::exp(term);
    }
    out[kappa] = std::exp(-mean_single - mean_pair) * sum;
  }
  return out;
}

CorrelationMatrix p_to_z_correlation(const std::vector<PatternDistribution>& p,
                                     const std::vector<PatternVector>& z, double alpha) {
  if (p.size() != z.size()) throw UndefinedInputError("distribution and profile counts differ");
  if (p.size() < 10) throw UndefinedInputError("need at least 10 samples");
  std::vector<std::vector<double>> x, y;
  for (std::size_t s = 0; s < p.size(); ++s) {
    x.emplace_back(z[s].begin(), z[s].end());
    y.emplace_back(p[s].begin(), p[s].end());
  }
  return correlate_columns(x, y, alpha);
}

namespace {

Eigen::MatrixXd dense(const CorrelationMatrix& c) {
  if (c.rows != kConnectedPatternCount || c.cols != kPatternCount)
    throw UndefinedInputError("expected a 13 x 16 correlation matrix");
  Eigen::MatrixXd m(c.rows, c.cols);
  for (std::size_t i = 0; i < c.rows; ++i)
    for (std::size_t j = 0; j < c.cols; ++j) m(i, j) = c.defined(i, j) ? c.at(i, j) : 0.0;
  return m;
}

}  // namespace

PatternVector predict_sp(const PatternDistribution& p, const CorrelationMatrix& c) {
  const Eigen::MatrixXd m = dense(c);
  Eigen::VectorXd pv(kPatternCount);
  for (int i = 0; i < kPatternCount; ++i) pv(i) = p[i];
  const Eigen::VectorXd sp = m * pv;
  PatternVector out{};
  const double norm = sp.norm();
  if (norm > 0.0)
    for (int i = 0; i < kConnectedPatternCount; ++i) out[i] = sp(i) / norm;
  return out;
}

Design design_distribution(const PatternVector& target_sp, const CorrelationMatrix& c, bool unidirectional_only) {
  double tnorm = 0.0;
  for (double x : target_sp) tnorm += x * x;
  if (std::abs(std::sqrt(tnorm) - 1.0) > 1e-6) throw UndefinedInputError("target profile must have unit norm");

  Eigen::MatrixXd m = dense(c);
  std::vector<int> support;
  for (int id = 1; id <= kPatternCount; ++id)
    if (!unidirectional_only || pattern_info(id).mutual_dyads == 0) support.push_back(id);
  Eigen::MatrixXd sub(m.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t k = 0; k < support.size(); ++k) sub.col(k) = m.col(support[k] - 1);
  Eigen::VectorXd target(kConnectedPatternCount);
  for (int i = 0; i < kConnectedPatternCount; ++i) target(i) = target_sp[i];

  const Eigen::VectorXd raw = sub.completeOrthogonalDecomposition().pseudoInverse() * target;

  Design d;
  double positive = 0.0, negative = 0.0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (raw(k) > 0.0) {
      d.p[support[k] - 1] = raw(k);
      positive += raw(k);
    } else {
      negative -= raw(k);
    }
  }
  if (!(positive > 0.0)) throw InfeasibleTargetError("no non-negative pattern distribution approximates the target");
  for (double& x : d.p) x /= positive;
  d.clipped_mass = negative / (positive + negative);
  d.predicted_sp = predict_sp(d.p, c);
  for (int i = 0; i < kConnectedPatternCount; ++i) d.cosine += target_sp[i] * d.predicted_sp[i];
  return d;
}

PatternCounts uniform_simplex_counts(std::uint32_t n, std::uint64_t seed) {
  check_order(n);
  const std::uint64_t triples = static_cast<std::uint64_t>(n) * (n - 1) / 6;
  const std::uint64_t slots = triples + kPatternCount - 1;
  // Choose the positions of the 15 delimiters among all slots.
  Rng rng = make_rng(seed);
  std::vector<std::uint64_t> all(slots);
  std::iota(all.begin(), all.end(), std::uint64_t{0});
  std::vector<std::uint64_t> bars;
  std::sample(all.begin(), all.end(), std::back_inserter(bars), kPatternCount - 1, rng);
  PatternCounts t{};
  std::uint64_t prev = 0;
  for (int k = 0; k < kPatternCount - 1; ++k) {
    t[k] = bars[k] - prev;
    prev = bars[k] + 1;
  }
  t[kPatternCount - 1] = slots - prev;
  return t;
}

}  // namespace triadnet
