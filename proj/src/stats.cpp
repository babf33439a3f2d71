#include "triadnet/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>

namespace triadnet {

const char* to_string(ZFlag flag) {
  switch (flag) {
    case ZFlag::ok: return "ok";
    case ZFlag::degenerate_zero: return "degenerate_zero";
    case ZFlag::degenerate_infinite: return "degenerate_infinite";
  }
  return "?";
}

double Moments::variance(VarianceMode mode) const {
  if (constant()) return 0.0;
  const double m = mean();
  double var = std::max(0.0, sum_squares / count - m * m);
  if (mode == VarianceMode::sample) var *= count / (count - 1);
  return var;
}

ZScore z_score(double original, const Moments& m, VarianceMode mode) {
  ZScore s;
  s.mean = m.mean();
  s.sigma = std::sqrt(m.variance(mode));
  if (s.sigma > 0) {
    s.z = (original - s.mean) / s.sigma;
  } else if (original == s.mean) {
    s.flag = ZFlag::degenerate_zero;
  } else {
    s.flag = ZFlag::degenerate_infinite;
    s.z = original > s.mean ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
  }
  return s;
}

double mean_of(std::span<const double> x) {
  if (x.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double stddev_of(std::span<const double> x) {
  const double m = mean_of(x);
  double acc = 0;
  for (double v : x) acc += (v - m) * (v - m);
  return std::sqrt(acc / static_cast<double>(x.size()));
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double mx = mean_of(x.first(n)), my = mean_of(y.first(n));
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0 || syy <= 0) return std::numeric_limits<double>::quiet_NaN();
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double correlation_p_value(double r, std::size_t n) {
  if (n < 3 || std::isnan(r)) return std::numeric_limits<double>::quiet_NaN();
  if (std::abs(r) >= 1.0) return 0.0;
  const double df = static_cast<double>(n - 2);
  const double t = std::abs(r) * std::sqrt(df / (1.0 - r * r));
  boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, t));
}

}  // namespace triadnet
