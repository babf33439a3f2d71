#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace triadnet {

enum class VarianceMode { population, sample };

enum class ZFlag : unsigned char {
  ok,
  degenerate_zero,      // sigma = 0 and original equals the mean; z reported as 0
  degenerate_infinite,  // sigma = 0 otherwise; z reported as +/-infinity
};

const char* to_string(ZFlag flag);

// One-sweep first and second moments. Sums of integer-valued samples stay
// exact (below 2^53), so merging partial sums is order-independent.
struct Moments {
  double count = 0;
  double sum = 0;
  double sum_squares = 0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  void add(double x) {
    count += 1;
    sum += x;
    sum_squares += x * x;
    min = std::min(min, x);
    max = std::max(max, x);
  }
  void merge(const Moments& o) {
    count += o.count;
    sum += o.sum;
    sum_squares += o.sum_squares;
    min = std::min(min, o.min);
    max = std::max(max, o.max);
  }
  double mean() const { return sum / count; }
  // sigma^2 = <x^2> - <x>^2, with the n/(n-1) correction in sample mode.
  double variance(VarianceMode mode) const;
  bool constant() const { return count == 0 || min == max; }
};

struct ZScore {
  double mean = 0;
  double sigma = 0;
  double z = 0;
  ZFlag flag = ZFlag::ok;
};

ZScore z_score(double original, const Moments& m, VarianceMode mode);

// Pearson correlation; returns NaN when undefined (fewer than 2 points or a
// constant input).
double pearson(std::span<const double> x, std::span<const double> y);

// Two-sided p-value of the t statistic r sqrt((n-2)/(1-r^2)) with n-2
// degrees of freedom.
double correlation_p_value(double r, std::size_t n);

double mean_of(std::span<const double> x);
// Population standard deviation.
double stddev_of(std::span<const double> x);

}  // namespace triadnet
