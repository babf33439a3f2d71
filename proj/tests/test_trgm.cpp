#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "triadnet/errors.hpp"
#include "triadnet/trgm.hpp"

using namespace triadnet;
using namespace oracle;

namespace {

// Pattern of each 6-bit code via explicit isomorphism matching.
int brute_pattern(int code) { return match_pattern(code_matrix(code)).first; }

int brute_orbit_size(int id) {
  int n = 0;
  for (int c = 0; c < 64; ++c) n += brute_pattern(c) == id;
  return n;
}

// Degree law by convolving the per-triple law of slot 0 over (n-1)/2 triples.
std::vector<double> convolved_degree_law(const PatternDistribution& p, std::uint32_t n, bool in) {
  std::array<double, 3> per{};
  for (int c = 0; c < 64; ++c) {
    const Mat3 m = code_matrix(c);
    const int k = in ? m[1][0] + m[2][0] : m[0][1] + m[0][2];
    const int id = brute_pattern(c);
    per[k] += p[id - 1] / brute_orbit_size(id);
  }
  std::vector<double> law{1.0};
  for (std::uint32_t t = 0; t < (n - 1) / 2; ++t) {
    std::vector<double> next(law.size() + 2, 0.0);
    for (std::size_t d = 0; d < law.size(); ++d)
      for (int k = 0; k < 3; ++k) next[d + k] += law[d] * per[k];
    law = next;
  }
  law.resize(n, 0.0);
  return law;
}

PatternDistribution mixed_distribution() {
  PatternDistribution p{};
  p[0] = 0.55;
  p[1] = 0.15;
  p[2] = 0.05;
  p[3] = 0.05;
  p[5] = 0.05;
  p[7] = 0.1;
  p[10] = 0.05;
  return p;
}

double tv(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i)
    s += std::abs((i < a.size() ? a[i] : 0.0) - (i < b.size() ? b[i] : 0.0));
  return s / 2;
}

}  // namespace

TEST_CASE("ER pattern distribution") {
  for (double p : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
    PatternDistribution oracle{};
    for (int c = 0; c < 64; ++c) {
      const int arcs = __builtin_popcount(c);
      oracle[brute_pattern(c) - 1] += std::pow(p, arcs) * std::pow(1 - p, 6 - arcs);
    }
    const auto d = er_distribution(p);
    double sum = 0;
    for (int i = 0; i < kPatternCount; ++i) {
      CHECK(d[i] == doctest::Approx(oracle[i]).epsilon(1e-12));
      sum += d[i];
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
    CHECK(expected_density(d) == doctest::Approx(p));
  }
  CHECK(er_distribution(0.0)[0] == 1.0);
  CHECK(er_distribution(1.0)[15] == 1.0);
  CHECK_THROWS_AS(er_distribution(1.5), UndefinedInputError);
}

TEST_CASE("expected density") {
  PatternDistribution p{};
  p[3] = 0.6;   // two arcs
  p[14] = 0.4;  // five arcs
  CHECK(expected_density(p) == doctest::Approx(0.6 * 2 / 6 + 0.4 * 5 / 6));
  CHECK(expected_density(p) == doctest::Approx(0.53333333));
  PatternDistribution empty{};
  empty[0] = 1;
  CHECK(expected_density(empty) == 0.0);

  // Monte Carlo density within 3 sigma.
  const auto sts = sts_construct(49);
  const auto mix = mixed_distribution();
  std::vector<double> dens;
  for (int s = 0; s < 100; ++s) dens.push_back(sample_trgm(sts, mix, s).arc_count() / (49.0 * 48.0));
  const double mean = std::accumulate(dens.begin(), dens.end(), 0.0) / dens.size();
  double var = 0;
  for (double x : dens) var += (x - mean) * (x - mean);
  var /= dens.size() - 1;
  CHECK(std::abs(mean - expected_density(mix)) < 3 * std::sqrt(var / dens.size()));
}

TEST_CASE("sampling from exact counts") {
  PatternCounts id20{357, 2, 0, 1, 1, 0, 1, 30, 0, 0, 0, 0, 0, 0, 0, 0};
  const auto sts = sts_construct(49);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = sample_trgm(sts, id20, seed);
    CHECK(g.arc_count() == 98);
    // Steiner triples are dyad-disjoint, so every assigned pattern is visible.
    std::map<int, int> seen;
    for (const Triple& t : sts.triples) ++seen[classify(triad_code(g, t[0] - 1, t[1] - 1, t[2] - 1))];
    for (int id = 1; id <= kPatternCount; ++id) CHECK(static_cast<std::uint64_t>(seen[id]) == id20[id - 1]);
  }
  PatternCounts bad{};
  bad[0] = 10;
  CHECK_THROWS_AS(sample_trgm(sts, bad, 0), UndefinedInputError);
  CHECK_THROWS_AS(sample_trgm(11u, id20, 0), AdmissibilityError);

  PatternDistribution full{};
  full[15] = 1;
  const auto g = sample_trgm(13u, full, 1);
  CHECK(g.arc_count() == 13 * 12);

  PatternDistribution ffl{};
  ffl[kFeedForwardLoop - 1] = 1;
  const auto h = sample_trgm(19u, ffl, 3);
  std::size_t in = 0, out = 0;
  for (NodeId u = 0; u < h.node_count(); ++u) {
    in += h.in_degree(u);
    out += h.out_degree(u);
  }
  CHECK(in == out);
  CHECK(h.arc_count() == 3 * 19 * 18 / 6);
}

TEST_CASE("orientation is uniform over the configuration orbit") {
  const auto sts = sts_construct(3);
  for (int id : {kFeedForwardLoop, kThreeCycle, 6, 14}) {
    PatternDistribution p{};
    p[id - 1] = 1;
    std::map<int, int> freq;
    const int draws = 12000;
    for (int s = 0; s < draws; ++s) ++freq[triad_code(sample_trgm(sts, p, s), 0, 1, 2)];
    const int orbit = brute_orbit_size(id);
    CHECK(static_cast<int>(freq.size()) == orbit);
    double chi2 = 0;
    const double expect = static_cast<double>(draws) / orbit;
    for (auto [code, f] : freq) {
      CHECK(brute_pattern(code) == id);
      chi2 += (f - expect) * (f - expect) / expect;
    }
    CHECK(chi2 < 25.0);  // dof <= 5, far tail
  }
}

TEST_CASE("analytic degree law") {
  const auto mix = mixed_distribution();
  for (std::uint32_t n : {7u, 19u, 49u}) {
    for (auto dir : {DegreeDirection::in, DegreeDirection::out}) {
      const auto law = degree_distribution(mix, n, dir);
      const auto oracle = convolved_degree_law(mix, n, dir == DegreeDirection::in);
      CHECK(law.size() == n);
      CHECK(std::accumulate(law.begin(), law.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-10));
      for (std::size_t k = 0; k < n; ++k) CHECK(law[k] == doctest::Approx(oracle[k]).epsilon(1e-9));
    }
  }
  // reversal-symmetric support: in and out coincide
  PatternDistribution sym{};
  sym[0] = 0.5;
  sym[2] = 0.2;
  sym[8] = 0.2;
  sym[15] = 0.1;
  const auto a = degree_distribution(sym, 31, DegreeDirection::in);
  const auto b = degree_distribution(sym, 31, DegreeDirection::out);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-12));

  // no pairs: the limit form is Poisson
  const auto lim = degree_distribution_limit(3.7, 0.0, 60);
  for (std::size_t k = 0; k <= 60; ++k) {
    const double poisson = std::exp(-3.7 + k * std::log(3.7) - std::lgamma(k + 1.0));
    CHECK(std::abs(lim[k] - poisson) < 1e-10);
  }

  // fixed mean 100: the law broadens as s/d shrinks
  double last = 0;
  for (double r : {1000.0, 10.0, 2.0, 1.0, 0.25}) {
    const double d = 100.0 / (r + 2.0), s = r * d;
    const auto law = degree_distribution_limit(s, d, 400);
    double m = 0, v = 0;
    for (std::size_t k = 0; k < law.size(); ++k) m += k * law[k];
    for (std::size_t k = 0; k < law.size(); ++k) v += (k - m) * (k - m) * law[k];
    CHECK(m == doctest::Approx(100.0).epsilon(1e-6));
    CHECK(v > last);
    last = v;
  }

  // Monte Carlo, pooled over nodes
  const auto sts = sts_construct(49);
  std::vector<double> hist(49, 0.0);
  const int samples = 200;
  for (int s = 0; s < samples; ++s) {
    const auto g = sample_trgm(sts, mix, 1000 + s);
    for (NodeId u = 0; u < 49; ++u) hist[g.in_degree(u)] += 1.0 / (49 * samples);
  }
  CHECK(tv(hist, degree_distribution(mix, 49, DegreeDirection::in)) < 0.03);
}

TEST_CASE("uniform simplex counts") {
  const int draws = 10000;
  std::array<double, kPatternCount> mean{};
  for (int s = 0; s < draws; ++s) {
    const auto t = uniform_simplex_counts(49, s);
    CHECK(std::accumulate(t.begin(), t.end(), std::uint64_t{0}) == 392);
    for (int i = 0; i < kPatternCount; ++i) mean[i] += static_cast<double>(t[i]) / draws;
  }
  // Marginal of a uniform composition of m into k parts: mean m/k,
  // variance m (k-1)(m+k) / (k^2 (k+1)).
  const double m = 392, k = 16;
  const double sd = std::sqrt(m * (k - 1) * (m + k) / (k * k * (k + 1)) / draws);
  for (double x : mean) CHECK(std::abs(x - m / k) < 3.5 * sd);
  const auto t7 = uniform_simplex_counts(7, 1);
  CHECK(std::accumulate(t7.begin(), t7.end(), std::uint64_t{0}) == 7);
}

TEST_CASE("P to Z correlation and design") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<PatternDistribution> ps;
  std::vector<PatternVector> zs, indep;
  for (int s = 0; s < 400; ++s) {
    PatternDistribution p{};
    double sum = 0;
    for (double& x : p) sum += x = u(rng);
    for (double& x : p) x /= sum;
    PatternVector z{}, w{};
    for (int i = 0; i < kConnectedPatternCount; ++i) {
      z[i] = (i % 2 ? -3.0 : 2.0) * p[i + 3] + 1.0;
      w[i] = noise(rng);
    }
    ps.push_back(p);
    zs.push_back(z);
    indep.push_back(w);
  }
  const auto c = p_to_z_correlation(ps, zs);
  CHECK(c.rows == 13);
  CHECK(c.cols == 16);
  for (int i = 0; i < kConnectedPatternCount; ++i) CHECK(std::abs(c.at(i, i + 3)) == doctest::Approx(1.0));
  const auto null = p_to_z_correlation(ps, indep);
  for (double r : null.r) CHECK(std::abs(r) < 3.5 / std::sqrt(400.0));
  CHECK_THROWS_AS(p_to_z_correlation({ps.begin(), ps.begin() + 5}, {zs.begin(), zs.begin() + 5}),
                  UndefinedInputError);

  // Diagonally dominant synthetic C: the design round trip recovers the target.
  CorrelationMatrix m;
  m.rows = 13;
  m.cols = 16;
  m.r.assign(13 * 16, 0.0);
  m.p_value.assign(13 * 16, 0.0);
  m.significant.assign(13 * 16, true);
  for (int i = 0; i < 13; ++i)
    for (int j = 0; j < 16; ++j) m.r[i * 16 + j] = (j == i + 3 ? 0.8 : 0.0) + 0.1 * (u(rng) - 0.5);
  for (int trial = 0; trial < 20; ++trial) {
    PatternDistribution p{};
    double sum = 0;
    for (double& x : p) sum += x = u(rng);
    for (double& x : p) x /= sum;
    const auto target = predict_sp(p, m);
    const auto d = design_distribution(target, m);
    CHECK(d.cosine >= 0.9);
    CHECK(std::accumulate(d.p.begin(), d.p.end(), 0.0) == doctest::Approx(1.0));
    for (double x : d.p) CHECK(x >= 0.0);
    const auto uni = design_distribution(target, m, true);
    for (int id = 1; id <= kPatternCount; ++id)
      if (pattern_info(id).mutual_dyads > 0) CHECK(uni.p[id - 1] == 0.0);
  }
  PatternVector all_negative{};
  for (double& x : all_negative) x = -1.0 / std::sqrt(13.0);
  CorrelationMatrix pos = m;
  for (double& r : pos.r) r = std::abs(r);
  CHECK_THROWS_AS(design_distribution(all_negative, pos), InfeasibleTargetError);
}
