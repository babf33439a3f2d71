#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "triadnet/graph.hpp"

namespace triadnet {

struct SentimentRecord {
  std::int64_t day = 1;  // 1-based
  std::string source;
  std::string target;
  std::uint64_t verbal_cooperation = 0;
  std::uint64_t verbal_conflict = 0;
  std::uint64_t material_cooperation = 0;
  std::uint64_t material_conflict = 0;
};

// Columns: day source target vcoop vconf mcoop mconf; '#' starts a comment.
std::vector<SentimentRecord> parse_sentiment(std::istream& in);
std::vector<std::string> parse_token_list(std::istream& in);

// Undirected sign from the two directed signs: agreeing or one-sided signs
// survive, opposite signs and silence give 0 (no edge).
int collapse_signs(int ab, int ba);

struct MonthlySignedGraph {
  SignedGraph graph;
  std::vector<std::string> labels;
  std::size_t inconsistent_pairs = 0;  // directions with opposite signs
};

// Month t covers days 1 + 30 (t - 1) .. 30 t. Daily directed sign is
// sign(cooperation - conflict) over same-day records; the monthly sign is the
// sign of the sum of daily signs. Nodes are `countries` when given (unknown
// tokens raise IngestionError), otherwise every token of the stream in
// first-seen order.
MonthlySignedGraph aggregate_signed_month(const std::vector<SentimentRecord>& records, int month,
                                          const std::vector<std::string>* countries = nullptr);

}  // namespace triadnet
