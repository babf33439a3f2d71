#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "triadnet/graph.hpp"
#include "triadnet/motif_stats.hpp"
#include "triadnet/sts.hpp"
#include "triadnet/triads.hpp"

namespace triadnet {

// Index = pattern id - 1.
using PatternDistribution = std::array<double, kPatternCount>;
using PatternCounts = std::array<std::uint64_t, kPatternCount>;

// Throws UndefinedInputError unless entries are >= 0 and sum to 1 within 1e-12.
void check_distribution(const PatternDistribution& p);
void check_counts(const PatternCounts& t, std::uint32_t n);

PatternDistribution er_distribution(double p);
double expected_density(const PatternDistribution& p);

// Every Steiner triple gets a pattern and a uniformly random configuration of it.
DirectedGraph sample_trgm(const SteinerTripleSystem& sts, const PatternDistribution& p, std::uint64_t seed);
DirectedGraph sample_trgm(const SteinerTripleSystem& sts, const PatternCounts& t, std::uint64_t seed);
DirectedGraph sample_trgm(std::uint32_t n, const PatternDistribution& p, std::uint64_t seed);
DirectedGraph sample_trgm(std::uint32_t n, const PatternCounts& t, std::uint64_t seed);

enum class DegreeDirection { in, out };

// Probability that one Steiner triple contributes one (single) or two (pair)
// arcs to a given node's degree in the chosen direction.
struct TripleDegreeLaw {
  double single = 0.0;
  double pair = 0.0;
};
TripleDegreeLaw triple_degree_law(const PatternDistribution& p, DegreeDirection dir);

// Exact finite-n law: multinomial over the (n-1)/2 triples of a node.
std::vector<double> degree_distribution(const PatternDistribution& p, std::uint32_t n, DegreeDirection dir);
// Large-n limit with independent Poisson counts of singles and pairs, for kappa = 0..max_degree.
std::vector<double> degree_distribution_limit(double mean_single, double mean_pair, std::size_t max_degree);

// Rows: connected patterns (Z), columns: all 16 pattern probabilities.
CorrelationMatrix p_to_z_correlation(const std::vector<PatternDistribution>& p,
                                     const std::vector<PatternVector>& z, double alpha = 0.05);

struct Design {
  PatternDistribution p{};
  PatternVector predicted_sp{};  // unit norm, or zero
  double cosine = 0.0;           // target . predicted
  double clipped_mass = 0.0;     // negative mass removed before renormalizing, relative to total |mass|
};

// Least-squares P for SP ~ C P via the pseudo-inverse, clipped to >= 0 and
// renormalized. Undefined correlation entries count as 0. The
// unidirectional-only mode restricts support to patterns without mutual dyads.
Design design_distribution(const PatternVector& target_sp, const CorrelationMatrix& c,
                           bool unidirectional_only = false);
PatternVector predict_sp(const PatternDistribution& p, const CorrelationMatrix& c);

// Uniform composition of n(n-1)/6 into 16 non-negative parts (stars and bars).
PatternCounts uniform_simplex_counts(std::uint32_t n, std::uint64_t seed);

}  // namespace triadnet
