#include <doctest.h>

#include <random>
#include <sstream>

#include "triadnet/errors.hpp"
#include "triadnet/sentiment.hpp"

using namespace triadnet;

namespace {

int sgn(long long x) { return (x > 0) - (x < 0); }

// Direct tally: loop over each day of the window and each ordered pair.
int oracle_directed_sign(const std::vector<SentimentRecord>& rs, const std::string& a, const std::string& b,
                         int month) {
  long long total = 0;
  for (long long day = 30LL * (month - 1) + 1; day <= 30LL * month; ++day) {
    long long net = 0;
    for (const auto& r : rs)
      if (r.day == day && r.source == a && r.target == b)
        net += static_cast<long long>(r.verbal_cooperation + r.material_cooperation) -
               static_cast<long long>(r.verbal_conflict + r.material_conflict);
    total += sgn(net);
  }
  return sgn(total);
}

int oracle_undirected(int ab, int ba) {
  // Table of the six sign combinations.
  if (ab == 1 && ba == 1) return 1;
  if ((ab == 1 && ba == 0) || (ab == 0 && ba == 1)) return 1;
  if ((ab == -1 && ba == -1) || (ab == -1 && ba == 0) || (ab == 0 && ba == -1)) return -1;
  return 0;
}

}  // namespace

TEST_CASE("collapse table") {
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) CHECK(collapse_signs(a, b) == oracle_undirected(a, b));
}

TEST_CASE("parse sentiment records") {
  std::istringstream in("# header\n1 USA CHN 3 1 0 0\n\n31 CHN USA 0 2 0 1 # trailing\n");
  const auto rs = parse_sentiment(in);
  REQUIRE(rs.size() == 2);
  CHECK(rs[1].day == 31);
  CHECK(rs[1].material_conflict == 1);
  std::istringstream bad_cols("1 USA CHN 3 1 0\n");
  CHECK_THROWS_AS(parse_sentiment(bad_cols), ParseError);
  std::istringstream negative("1 USA CHN 3 -1 0 0\n");
  CHECK_THROWS_AS(parse_sentiment(negative), ParseError);
  std::istringstream day0("0 USA CHN 3 1 0 0\n");
  CHECK_THROWS_AS(parse_sentiment(day0), ParseError);
}

TEST_CASE("same-day records sum before the sign") {
  // Day 1: +3 and -2 sum to +1 (one positive day); day 2: -1. Month sum 0.
  std::vector<SentimentRecord> rs = {
      {1, "A", "B", 3, 0, 0, 0}, {1, "A", "B", 0, 2, 0, 0}, {2, "A", "B", 0, 0, 0, 1}};
  auto m = aggregate_signed_month(rs, 1);
  CHECK(m.graph.edge_count() == 0);
  rs.push_back({3, "A", "B", 1, 0, 0, 0});
  m = aggregate_signed_month(rs, 1);
  CHECK(m.graph.sign(0, 1) == 1);
  CHECK(aggregate_signed_month(rs, 2).graph.edge_count() == 0);
}

TEST_CASE("opposite directions drop the edge") {
  std::vector<SentimentRecord> rs = {{5, "A", "B", 2, 0, 0, 0}, {6, "B", "A", 0, 0, 0, 4}};
  const auto m = aggregate_signed_month(rs, 1);
  CHECK(m.graph.edge_count() == 0);
  CHECK(m.inconsistent_pairs == 1);
}

TEST_CASE("sixty-day stream against the tally oracle") {
  const std::vector<std::string> names = {"A", "B", "C", "D", "E", "F"};
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> node(0, 5), day(1, 60), count(0, 3);
  std::vector<SentimentRecord> rs;
  for (int i = 0; i < 400; ++i) {
    SentimentRecord r;
    r.day = day(rng);
    r.source = names[node(rng)];
    r.target = names[node(rng)];
    if (r.source == r.target) continue;
    r.verbal_cooperation = count(rng);
    r.verbal_conflict = count(rng);
    r.material_cooperation = count(rng);
    r.material_conflict = count(rng);
    rs.push_back(r);
  }
  for (int month = 1; month <= 2; ++month) {
    const auto m = aggregate_signed_month(rs, month, &names);
    REQUIRE(m.labels == names);
    std::size_t edges = 0;
    for (std::size_t a = 0; a < names.size(); ++a)
      for (std::size_t b = a + 1; b < names.size(); ++b) {
        const int want = oracle_undirected(oracle_directed_sign(rs, names[a], names[b], month),
                                           oracle_directed_sign(rs, names[b], names[a], month));
        CHECK(m.graph.sign(static_cast<NodeId>(a), static_cast<NodeId>(b)) == want);
        edges += want != 0;
      }
    CHECK(m.graph.edge_count() == edges);
  }
}

TEST_CASE("country whitelist") {
  std::vector<SentimentRecord> rs = {{1, "A", "B", 1, 0, 0, 0}};
  const std::vector<std::string> ok = {"C", "B", "A"};
  const auto m = aggregate_signed_month(rs, 1, &ok);
  CHECK(m.graph.node_count() == 3);
  CHECK(m.graph.sign(2, 1) == 1);
  const std::vector<std::string> missing = {"A"};
  CHECK_THROWS_AS(aggregate_signed_month(rs, 1, &missing), IngestionError);
}
