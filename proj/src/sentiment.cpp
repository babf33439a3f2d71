#include "triadnet/sentiment.hpp"

#include <istream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "triadnet/errors.hpp"

namespace triadnet {

namespace {

int signum(std::int64_t x) { return (x > 0) - (x < 0); }

std::string strip_comment(const std::string& line) { return line.substr(0, line.find('#')); }

}  // namespace

std::vector<SentimentRecord> parse_sentiment(std::istream& in) {
  std::vector<SentimentRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(strip_comment(line));
    std::vector<std::string> tok;
    std::string t;
    while (ss >> t) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 7) throw ParseError(line_no, "expected 7 columns: day source target vcoop vconf mcoop mconf");
    SentimentRecord r;
    try {
      std::size_t used = 0;
      r.day = std::stoll(tok[0], &used);
      if (used != tok[0].size()) throw std::invalid_argument("day");
      std::uint64_t* counts[4] = {&r.verbal_cooperation, &r.verbal_conflict, &r.material_cooperation,
                                  &r.material_conflict};
      for (int k = 0; k < 4; ++k) {
        const long long v = std::stoll(tok[3 + k], &used);
        if (used != tok[3 + k].size()) throw std::invalid_argument("count");
        if (v < 0) throw ParseError(line_no, "counts must be non-negative");
        *counts[k] = static_cast<std::uint64_t>(v);
      }
    } catch (const std::logic_error&) {
      throw ParseError(line_no, "non-numeric day or count");
    }
    if (r.day < 1) throw ParseError(line_no, "days start at 1");
    r.source = tok[1];
    r.target = tok[2];
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> parse_token_list(std::istream& in) {
  std::vector<std::string> out;
  std::string line, t;
  while (std::getline(in, line)) {
    std::istringstream ss(strip_comment(line));
    while (ss >> t) out.push_back(t);
  }
  return out;
}

int collapse_signs(int ab, int ba) {
  if (ab != 0 && ba != 0) return ab == ba ? ab : 0;
  return ab != 0 ? ab : ba;
}

MonthlySignedGraph aggregate_signed_month(const std::vector<SentimentRecord>& records, int month,
                                          const std::vector<std::string>* countries) {
  if (month < 1) throw UndefinedInputError("months start at 1");
  MonthlySignedGraph out;
  std::unordered_map<std::string, NodeId> id;
  auto add = [&](const std::string& token) {
    if (id.emplace(token, static_cast<NodeId>(out.labels.size())).second) out.labels.push_back(token);
  };
  if (countries) {
    for (const auto& c : *countries) add(c);
    for (const auto& r : records)
      for (const auto* token : {&r.source, &r.target})
        if (!id.count(*token)) throw IngestionError("unknown country token '" + *token + "'");
  } else {
    for (const auto& r : records) {
      add(r.source);
      add(r.target);
    }
  }

  const std::int64_t first = 1 + 30LL * (month - 1), last = 30LL * month;
  // (source, target, day) -> cooperation minus conflict
  std::map<std::tuple<NodeId, NodeId, std::int64_t>, std::int64_t> daily;
  for (const auto& r : records) {
    if (r.day < first || r.day > last || r.source == r.target) continue;
    const std::int64_t net = static_cast<std::int64_t>(r.verbal_cooperation + r.material_cooperation) -
                             static_cast<std::int64_t>(r.verbal_conflict + r.material_conflict);
    daily[{id.at(r.source), id.at(r.target), r.day}] += net;
  }
  std::map<std::pair<NodeId, NodeId>, std::int64_t> monthly;
  for (const auto& [key, net] : daily) monthly[{std::get<0>(key), std::get<1>(key)}] += signum(net);

  std::vector<SignedEdge> edges;
  for (const auto& [pair, sum] : monthly) {
    const auto [a, b] = pair;
    const int ab = signum(sum);
    const auto rev = monthly.find({b, a});
    const int ba = rev == monthly.end() ? 0 : signum(rev->second);
    if (a > b && rev != monthly.end()) continue;  // handled from the other side
    if (ab != 0 && ba != 0 && ab != ba) ++out.inconsistent_pairs;
    const int s = collapse_signs(ab, ba);
    if (s != 0) edges.push_back({std::min(a, b), std::max(a, b), s});
  }
  out.graph = SignedGraph(out.labels.size(), edges);
  return out;
}

}  // namespace triadnet
