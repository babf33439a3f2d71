#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "triadnet/graph.hpp"
#include "triadnet/randomizer.hpp"
#include "triadnet/stats.hpp"
#include "triadnet/triads.hpp"

namespace triadnet {

using PatternVector = std::array<double, kConnectedPatternCount>;  // index = pattern id - 4

struct ZProfile {
  PatternVector original{};
  PatternVector mean{};
  PatternVector sigma{};
  PatternVector z{};
  std::array<ZFlag, kConnectedPatternCount> flags{};
  std::size_t instances = 0;
  VarianceMode variance = VarianceMode::population;

  static constexpr std::size_t index(int pattern) { return static_cast<std::size_t>(pattern - 4); }
  double z_of(int pattern) const { return z[index(pattern)]; }
};

struct ZProfileOptions {
  EnsembleOptions ensemble;
  VarianceMode variance = VarianceMode::population;
};

PatternVector connected_counts(const Census& c);

ZProfile z_profile(const DirectedGraph& g, const ZProfileOptions& opts);
ZProfile z_profile_from_moments(const PatternVector& original,
                                const std::array<Moments, kConnectedPatternCount>& ensemble,
                                VarianceMode mode);
ZProfile z_profile_from_counts(const PatternVector& original,
                               const std::vector<PatternVector>& ensemble, VarianceMode mode);

// Z / |Z| with degenerate entries taken as 0.
PatternVector significance_profile(const ZProfile& z);
PatternVector significance_profile(const PatternVector& z);
// z with degenerate entries replaced by 0.
PatternVector finite_z(const ZProfile& z);

struct CorrelationMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> r;          // NaN where undefined
  std::vector<double> p_value;    // two-sided
  std::vector<bool> significant;  // p < alpha
  double alpha = 0.05;

  double at(std::size_t i, std::size_t j) const { return r[i * cols + j]; }
  bool defined(std::size_t i, std::size_t j) const;
  bool is_significant(std::size_t i, std::size_t j) const { return significant[i * cols + j]; }
};

// Pearson correlation of every column of x (n x a) with every column of y (n x b).
CorrelationMatrix correlate_columns(const std::vector<std::vector<double>>& x,
                                    const std::vector<std::vector<double>>& y, double alpha = 0.05);

CorrelationMatrix z_cross_correlation(const std::vector<ZProfile>& profiles, double alpha = 0.05);
CorrelationMatrix z_cross_correlation(const std::vector<PatternVector>& z, double alpha = 0.05);

}  // namespace triadnet
