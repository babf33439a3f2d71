#include "triadnet/motif_stats.hpp"

#include <cmath>
#include <stdexcept>

#include "triadnet/errors.hpp"
#include "triadnet/parallel.hpp"

namespace triadnet {

PatternVector connected_counts(const Census& c) {
  PatternVector v{};
  for (int id = kFirstConnectedPattern; id <= kPatternCount; ++id)
    v[ZProfile::index(id)] = static_cast<double>(c[id - 1]);
  return v;
}

ZProfile z_profile_from_moments(const PatternVector& original,
                                const std::array<Moments, kConnectedPatternCount>& ensemble,
                                VarianceMode mode) {
  ZProfile p;
  p.original = original;
  p.variance = mode;
  p.instances = static_cast<std::size_t>(ensemble[0].count);
  for (std::size_t k = 0; k < kConnectedPatternCount; ++k) {
    const ZScore s = z_score(original[k], ensemble[k], mode);
    p.mean[k] = s.mean;
    p.sigma[k] = s.sigma;
    p.z[k] = s.z;
    p.flags[k] = s.flag;
  }
  return p;
}

ZProfile z_profile_from_counts(const PatternVector& original,
                               const std::vector<PatternVector>& ensemble, VarianceMode mode) {
  if (ensemble.size() < 2) throw std::invalid_argument("z profile needs at least 2 instances");
  std::array<Moments, kConnectedPatternCount> m{};
  for (const auto& counts : ensemble)
    for (std::size_t k = 0; k < kConnectedPatternCount; ++k) m[k].add(counts[k]);
  return z_profile_from_moments(original, m, mode);
}

ZProfile z_profile(const DirectedGraph& g, const ZProfileOptions& opts) {
  if (opts.ensemble.instances < 2) throw std::invalid_argument("z profile needs at least 2 instances");
  const unsigned workers = resolve_workers(opts.ensemble.workers);
  std::vector<std::array<Moments, kConnectedPatternCount>> partial(workers);
  for_each_instance(g, opts.ensemble, [&](std::size_t, unsigned w, const DirectedGraph& h) {
    const PatternVector c = connected_counts(census(h, true));
    for (std::size_t k = 0; k < kConnectedPatternCount; ++k) partial[w][k].add(c[k]);
  });
  std::array<Moments, kConnectedPatternCount> total{};
  for (const auto& part : partial)
    for (std::size_t k = 0; k < kConnectedPatternCount; ++k) total[k].merge(part[k]);
  return z_profile_from_moments(connected_counts(census(g, true)), total, opts.variance);
}

PatternVector finite_z(const ZProfile& z) {
  PatternVector v{};
  for (std::size_t k = 0; k < kConnectedPatternCount; ++k)
    v[k] = z.flags[k] == ZFlag::ok ? z.z[k] : 0.0;
  return v;
}

PatternVector significance_profile(const PatternVector& z) {
  double norm = 0;
  for (double x : z)
    if (std::isfinite(x)) norm += x * x;
  if (norm <= 0) throw UndefinedProfileError("significance profile of an all-zero Z vector");
  norm = std::sqrt(norm);
  PatternVector sp{};
  for (std::size_t k = 0; k < kConnectedPatternCount; ++k)
    sp[k] = std::isfinite(z[k]) ? z[k] / norm : 0.0;
  return sp;
}

PatternVector significance_profile(const ZProfile& z) { return significance_profile(finite_z(z)); }

bool CorrelationMatrix::defined(std::size_t i, std::size_t j) const {
  return !std::isnan(r[i * cols + j]);
}

CorrelationMatrix correlate_columns(const std::vector<std::vector<double>>& x,
                                    const std::vector<std::vector<double>>& y, double alpha) {
  if (x.size() != y.size()) throw std::invalid_argument("row counts differ");
  const std::size_t n = x.size();
  CorrelationMatrix c;
  c.rows = n ? x[0].size() : 0;
  c.cols = n ? y[0].size() : 0;
  c.alpha = alpha;
  c.r.assign(c.rows * c.cols, 0.0);
  c.p_value.assign(c.rows * c.cols, 1.0);
  c.significant.assign(c.rows * c.cols, false);
  std::vector<double> xi(n), yj(n);
  for (std::size_t i = 0; i < c.rows; ++i) {
    for (std::size_t s = 0; s < n; ++s) xi[s] = x[s][i];
    for (std::size_t j = 0; j < c.cols; ++j) {
      for (std::size_t s = 0; s < n; ++s) yj[s] = y[s][j];
      const double r = pearson(xi, yj);
      const double p = correlation_p_value(r, n);
      c.r[i * c.cols + j] = r;
      c.p_value[i * c.cols + j] = p;
      c.significant[i * c.cols + j] = !std::isnan(p) && p < alpha;
    }
  }
  return c;
}

CorrelationMatrix z_cross_correlation(const std::vector<PatternVector>& z, double alpha) {
  if (z.size() < 3) throw std::invalid_argument("cross-correlation needs at least 3 profiles");
  std::vector<std::vector<double>> rows;
  for (const auto& v : z) rows.emplace_back(v.begin(), v.end());
  return correlate_columns(rows, rows, alpha);
}

CorrelationMatrix z_cross_correlation(const std::vector<ZProfile>& profiles, double alpha) {
  std::vector<PatternVector> z;
  for (const auto& p : profiles) z.push_back(finite_z(p));
  return z_cross_correlation(z, alpha);
}

}  // namespace triadnet
