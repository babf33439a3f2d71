#include "triadnet/sts.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "triadnet/errors.hpp"

namespace triadnet {

namespace {

Triple make_triple(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  Triple t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

void finish(SteinerTripleSystem& s) {
  std::sort(s.triples.begin(), s.triples.end());
  for (auto& sub : s.subsystems) std::sort(sub.nodes.begin(), sub.nodes.end());
}

// Some subsystem of the given order, or an empty node list.
std::vector<std::uint32_t> find_subsystem(const SteinerTripleSystem& s, std::uint32_t order) {
  if (order == 1) return {1};
  if (order == 3 && !s.triples.empty())
    return {s.triples[0][0], s.triples[0][1], s.triples[0][2]};
  if (order == s.order) {
    std::vector<std::uint32_t> all(s.order);
    for (std::uint32_t i = 0; i < s.order; ++i) all[i] = i + 1;
    return all;
  }
  for (const auto& sub : s.subsystems)
    if (sub.order == order) return sub.nodes;
  return {};
}

std::string describe(const char* rule, std::uint32_t outer, std::uint32_t inner, std::uint32_t n3) {
  std::ostringstream ss;
  ss << rule << ": extend(STS(" << outer << "), STS(" << inner << "), " << n3 << ")";
  return ss.str();
}

}  // namespace

std::string StsReport::summary() const {
  std::ostringstream ss;
  if (ok) {
    ss << "ok (" << actual_triples << " triples)";
    return ss.str();
  }
  ss << "invalid:";
  if (actual_triples != expected_triples)
    ss << " " << actual_triples << " triples, expected " << expected_triples << ";";
  if (!uncovered.empty()) ss << " " << uncovered.size() << " uncovered pairs;";
  if (!multiply_covered.empty()) ss << " " << multiply_covered.size() << " multiply covered pairs;";
  if (!bad_triples.empty()) ss << " " << bad_triples.size() << " malformed triples;";
  return ss.str();
}

bool admissible_order(std::uint64_t n) { return n % 6 == 1 || n % 6 == 3; }

SteinerTripleSystem sts_base(std::uint32_t n) {
  SteinerTripleSystem s;
  s.order = n;
  switch (n) {
    case 1:
      s.construction = "base: empty";
      break;
    case 3:
      s.triples = {{1, 2, 3}};
      s.construction = "base";
      break;
    case 7:
      s.triples = {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6}};
      s.construction = "base";
      break;
    case 9: {
      s = sts_product(sts_base(3), sts_base(3));
      s.construction = "base: product(STS(3), STS(3))";
      break;
    }
    case 13:
      // 7 + 3 x (9 - 7) would need an order-7 subsystem inside STS(9).
      s = sts_skolem(13);
      s.construction = "base: skolem";
      break;
    case 15:
      s = sts_extend(sts_base(3), sts_base(7), 3);
      s.construction = "base: " + describe("extend", 3, 7, 3);
      break;
    default:
      throw ConstructionError("no base system of order " + std::to_string(n));
  }
  finish(s);
  return s;
}

SteinerTripleSystem sts_product(const SteinerTripleSystem& a, const SteinerTripleSystem& b) {
  const std::uint32_t n1 = a.order, n2 = b.order;
  auto c = [n2](std::uint32_t i, std::uint32_t r) { return (i - 1) * n2 + r; };
  SteinerTripleSystem s;
  s.order = n1 * n2;
  s.construction = "product(STS(" + std::to_string(n1) + "), STS(" + std::to_string(n2) + "))";
  for (const Triple& t : a.triples)
    for (std::uint32_t r = 1; r <= n2; ++r) s.triples.push_back(make_triple(c(t[0], r), c(t[1], r), c(t[2], r)));
  for (std::uint32_t i = 1; i <= n1; ++i)
    for (const Triple& t : b.triples) s.triples.push_back(make_triple(c(i, t[0]), c(i, t[1]), c(i, t[2])));
  for (const Triple& ta : a.triples)
    for (const Triple& tb : b.triples) {
      std::array<std::uint32_t, 3> p{tb[0], tb[1], tb[2]};
      do {
        s.triples.push_back(make_triple(c(ta[0], p[0]), c(ta[1], p[1]), c(ta[2], p[2])));
      } while (std::next_permutation(p.begin(), p.end()));
    }
  // copies of A (one per element of B) and of B (one per element of A)
  for (std::uint32_t r = 1; r <= n2; ++r) {
    Subsystem sub{n1, {}};
    for (std::uint32_t i = 1; i <= n1; ++i) sub.nodes.push_back(c(i, r));
    s.subsystems.push_back(sub);
  }
  for (std::uint32_t i = 1; i <= n1; ++i) {
    Subsystem sub{n2, {}};
    for (std::uint32_t r = 1; r <= n2; ++r) sub.nodes.push_back(c(i, r));
    s.subsystems.push_back(sub);
  }
  for (const auto& sa : a.subsystems) {
    Subsystem sub{sa.order, {}};
    for (std::uint32_t i : sa.nodes) sub.nodes.push_back(c(i, 1));
    s.subsystems.push_back(sub);
  }
  for (const auto& sb : b.subsystems) {
    Subsystem sub{sb.order, {}};
    for (std::uint32_t r : sb.nodes) sub.nodes.push_back(c(1, r));
    s.subsystems.push_back(sub);
  }
  finish(s);
  return s;
}

SteinerTripleSystem sts_extend(const SteinerTripleSystem& outer, const SteinerTripleSystem& inner,
                               std::uint32_t n3) {
  const std::uint32_t n1 = outer.order, n2 = inner.order;
  if (n3 >= n2) throw ConstructionError("subsystem order must be below the inner order");
  const auto core = find_subsystem(inner, n3);
  if (core.size() != n3)
    throw ConstructionError("STS(" + std::to_string(n2) + ") has no tracked subsystem of order " +
                            std::to_string(n3));
  const std::uint32_t s_len = n2 - n3;

  // Relabel the inner system: its subsystem first (1..n3), the rest after.
  std::vector<std::uint32_t> relabel(n2 + 1, 0);
  std::vector<bool> in_core(n2 + 1, false);
  for (std::uint32_t k = 0; k < n3; ++k) {
    relabel[core[k]] = k + 1;
    in_core[core[k]] = true;
  }
  std::uint32_t next = n3;
  for (std::uint32_t l = 1; l <= n2; ++l)
    if (!in_core[l]) relabel[l] = ++next;

  // Global labels: a_m = m for m <= n3, b_{i,x} after them row by row.
  auto b = [n3, s_len](std::uint32_t i, std::uint32_t x) { return n3 + (i - 1) * s_len + x + 1; };
  auto place = [&](std::uint32_t inner_label, std::uint32_t copy) {
    const std::uint32_t l = relabel[inner_label];
    return l <= n3 ? l : b(copy, l - n3 - 1);
  };

  SteinerTripleSystem s;
  s.order = n3 + n1 * s_len;
  for (const Triple& t : inner.triples) {
    const bool inside = in_core[t[0]] && in_core[t[1]] && in_core[t[2]];
    if (inside) {
      s.triples.push_back(make_triple(place(t[0], 1), place(t[1], 1), place(t[2], 1)));
    } else {
      for (std::uint32_t i = 1; i <= n1; ++i)
        s.triples.push_back(make_triple(place(t[0], i), place(t[1], i), place(t[2], i)));
    }
  }
  for (const Triple& t : outer.triples)
    for (std::uint32_t x = 0; x < s_len; ++x)
      for (std::uint32_t y = 0; y < s_len; ++y) {
        const std::uint32_t z = (2 * s_len - x - y) % s_len;
        s.triples.push_back(make_triple(b(t[0], x), b(t[1], y), b(t[2], z)));
      }

  Subsystem base_row{n3, {}};
  for (std::uint32_t m = 1; m <= n3; ++m) base_row.nodes.push_back(m);
  s.subsystems.push_back(base_row);
  for (std::uint32_t i = 1; i <= n1; ++i) {
    Subsystem copy{n2, base_row.nodes};
    for (std::uint32_t x = 0; x < s_len; ++x) copy.nodes.push_back(b(i, x));
    s.subsystems.push_back(copy);
  }
  Subsystem layer{n1, {}};
  for (std::uint32_t i = 1; i <= n1; ++i) layer.nodes.push_back(b(i, 0));
  s.subsystems.push_back(layer);
  for (const auto& sub : inner.subsystems) {
    Subsystem lifted{sub.order, {}};
    for (std::uint32_t l : sub.nodes) lifted.nodes.push_back(place(l, 1));
    s.subsystems.push_back(lifted);
  }
  for (const auto& sub : outer.subsystems) {
    Subsystem lifted{sub.order, {}};
    for (std::uint32_t i : sub.nodes) lifted.nodes.push_back(b(i, 0));
    s.subsystems.push_back(lifted);
  }
  s.construction = describe("extend", n1, n2, n3);
  finish(s);
  return s;
}

SteinerTripleSystem sts_bose(std::uint32_t n) {
  if (n % 6 != 3) throw AdmissibilityError("Bose construction needs n = 3 mod 6");
  const std::uint32_t v = n / 3;  // odd
  auto label = [v](std::uint32_t x, std::uint32_t i) { return i * v + x + 1; };
  auto op = [v](std::uint32_t x, std::uint32_t y) { return ((x + y) * ((v + 1) / 2)) % v; };
  SteinerTripleSystem s;
  s.order = n;
  s.construction = "bose";
  for (std::uint32_t x = 0; x < v; ++x) s.triples.push_back(make_triple(label(x, 0), label(x, 1), label(x, 2)));
  for (std::uint32_t i = 0; i < 3; ++i)
    for (std::uint32_t x = 0; x < v; ++x)
      for (std::uint32_t y = x + 1; y < v; ++y)
        s.triples.push_back(make_triple(label(x, i), label(y, i), label(op(x, y), (i + 1) % 3)));
  finish(s);
  return s;
}

SteinerTripleSystem sts_skolem(std::uint32_t n) {
  if (n % 6 != 1 || n < 7) throw AdmissibilityError("Skolem construction needs n = 1 mod 6, n >= 7");
  const std::uint32_t k = (n - 1) / 6, m = 2 * k;
  auto label = [m](std::uint32_t x, std::uint32_t i) { return i * m + x + 1; };
  // commutative half-idempotent quasigroup on Z_2k
  auto op = [k, m](std::uint32_t x, std::uint32_t y) {
    const std::uint32_t s = (x + y) % m;
    return s % 2 == 0 ? s / 2 : (s - 1) / 2 + k;
  };
  SteinerTripleSystem s;
  s.order = n;
  s.construction = "skolem";
  for (std::uint32_t x = 0; x < k; ++x) s.triples.push_back(make_triple(label(x, 0), label(x, 1), label(x, 2)));
  for (std::uint32_t i = 0; i < 3; ++i)
    for (std::uint32_t x = 0; x < k; ++x)
      s.triples.push_back(make_triple(n, label(x + k, i), label(x, (i + 1) % 3)));
  for (std::uint32_t i = 0; i < 3; ++i)
    for (std::uint32_t x = 0; x < m; ++x)
      for (std::uint32_t y = x + 1; y < m; ++y)
        s.triples.push_back(make_triple(label(x, i), label(y, i), label(op(x, y), (i + 1) % 3)));
  finish(s);
  return s;
}

SteinerTripleSystem sts_direct(std::uint32_t n) {
  if (!admissible_order(n)) throw AdmissibilityError("order " + std::to_string(n) + " is not 1 or 3 mod 6");
  if (n <= 3) return sts_base(n);
  return n % 6 == 3 ? sts_bose(n) : sts_skolem(n);
}

namespace {

struct Rule {
  const char* name;
  std::uint32_t outer;
  std::uint32_t inner;
  std::uint32_t n3;
};

// Residue table mod 36; tau = n / 36.
bool table_rule(std::uint32_t n, Rule& rule) {
  const std::uint32_t t = n / 36;
  switch (n % 36) {
    case 1: rule = {"rule B", 3, 12 * t + 1, 1}; break;
    case 3: rule = {"rule A", 18 * t + 1, 3, 1}; break;
    case 7: rule = {"rule F", 6 * t + 1, 7, 1}; break;
    case 9: rule = {"rule D", 6 * t + 1, 9, 3}; break;
    case 13: rule = {"rule E", 3, 12 * t + 9, 7}; break;
    case 15: rule = {"rule A", 18 * t + 7, 3, 1}; break;
    case 19: rule = {"rule F", 6 * t + 3, 7, 1}; break;
    case 21: rule = {"rule D", 6 * t + 3, 9, 3}; break;
    case 25: rule = {"rule B", 3, 12 * t + 9, 1}; break;
    case 27: rule = {"rule A", 18 * t + 13, 3, 1}; break;
    case 31: rule = {"rule A", 18 * t + 15, 3, 1}; break;
    case 33: rule = {"rule C", 3, 12 * t + 13, 3}; break;
    default: return false;
  }
  const std::uint32_t target = rule.n3 + rule.outer * (rule.inner - rule.n3);
  return target == n && admissible_order(rule.outer) && admissible_order(rule.inner) &&
         rule.outer < n && rule.inner < n;
}

class Builder {
 public:
  const SteinerTripleSystem& get(std::uint32_t n) {
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    SteinerTripleSystem s = build(n);
    const StsReport report = validate(s);
    if (!report.ok)
      throw ConstructionError("STS(" + std::to_string(n) + ") via " + s.construction + " failed validation: " +
                              report.summary());
    return memo_.emplace(n, std::move(s)).first->second;
  }

 private:
  SteinerTripleSystem build(std::uint32_t n) {
    if (n == 1 || n == 3 || n == 7 || n == 9 || n == 13 || n == 15) return sts_base(n);
    Rule rule;
    if (table_rule(n, rule)) {
      const auto& outer = get(rule.outer);
      const auto& inner = get(rule.inner);
      if (find_subsystem(inner, rule.n3).size() == rule.n3) {
        auto s = sts_extend(outer, inner, rule.n3);
        s.construction = describe(rule.name, rule.outer, rule.inner, rule.n3);
        return s;
      }
    }
    // Tracked subsystem unavailable: a product of admissible factors, else
    // a direct construction.
    for (std::uint32_t a = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(n))); a >= 3; --a) {
      if (n % a != 0 || !admissible_order(a) || !admissible_order(n / a)) continue;
      auto s = sts_product(get(a), get(n / a));
      s.construction = "fallback product(STS(" + std::to_string(a) + "), STS(" + std::to_string(n / a) + "))";
      return s;
    }
    auto s = sts_direct(n);
    s.construction = "fallback " + s.construction;
    return s;
  }

  std::map<std::uint32_t, SteinerTripleSystem> memo_;
};

}  // namespace

SteinerTripleSystem sts_construct(std::uint32_t n) {
  if (!admissible_order(n)) {
    std::uint32_t up = n + 1;
    while (!admissible_order(up)) ++up;
    throw AdmissibilityError("order " + std::to_string(n) + " is not 1 or 3 mod 6; nearest admissible order above is " +
                             std::to_string(up));
  }
  Builder builder;
  return builder.get(n);
}

StsReport validate(const SteinerTripleSystem& sts) {
  const std::uint32_t n = sts.order;
  StsReport r;
  r.expected_triples = static_cast<std::size_t>(n) * (n - 1) / 6;
  r.actual_triples = sts.triples.size();
  std::vector<std::uint32_t> cover(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  for (const Triple& t : sts.triples) {
    bool good = true;
    for (auto x : t) good = good && x >= 1 && x <= n;
    good = good && t[0] != t[1] && t[0] != t[2] && t[1] != t[2];
    if (!good) {
      r.bad_triples.push_back(t);
      continue;
    }
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const auto u = std::min(t[i], t[j]), v = std::max(t[i], t[j]);
        ++cover[static_cast<std::size_t>(u) * (n + 1) + v];
      }
  }
  for (std::uint32_t u = 1; u <= n; ++u)
    for (std::uint32_t v = u + 1; v <= n; ++v) {
      const auto c = cover[static_cast<std::size_t>(u) * (n + 1) + v];
      if (c == 0) r.uncovered.push_back({u, v});
      if (c > 1) r.multiply_covered.push_back({u, v});
    }
  r.ok = r.uncovered.empty() && r.multiply_covered.empty() && r.bad_triples.empty() &&
         r.actual_triples == r.expected_triples;
  return r;
}

StsReport validate_subsystem(const SteinerTripleSystem& sts, const Subsystem& sub) {
  std::vector<std::uint32_t> local(sts.order + 1, 0);
  for (std::uint32_t k = 0; k < sub.nodes.size(); ++k) local[sub.nodes[k]] = k + 1;
  SteinerTripleSystem restricted;
  restricted.order = static_cast<std::uint32_t>(sub.nodes.size());
  for (const Triple& t : sts.triples)
    if (local[t[0]] && local[t[1]] && local[t[2]])
      restricted.triples.push_back(make_triple(local[t[0]], local[t[1]], local[t[2]]));
  StsReport r = validate(restricted);
  if (sub.order != sub.nodes.size()) r.ok = false;
  return r;
}

void write_triples(std::ostream& out, const SteinerTripleSystem& sts) {
  for (const Triple& t : sts.triples) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

SteinerTripleSystem read_triples(std::istream& in) {
  SteinerTripleSystem s;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line.substr(0, line.find('#')));
    std::vector<long long> v;
    long long x;
    while (ss >> x) v.push_back(x);
    if (!ss.eof()) throw ParseError(line_no, "non-numeric token");
    if (v.empty()) continue;
    if (v.size() != 3) throw ParseError(line_no, "expected 3 labels");
    for (long long y : v) {
      if (y < 1) throw ParseError(line_no, "labels start at 1");
      s.order = std::max<std::uint32_t>(s.order, static_cast<std::uint32_t>(y));
    }
    // kept as written so the validator can see repeated labels
    s.triples.push_back({static_cast<std::uint32_t>(v[0]), static_cast<std::uint32_t>(v[1]),
                         static_cast<std::uint32_t>(v[2])});
  }
  s.construction = "input";
  return s;
}

}  // namespace triadnet
