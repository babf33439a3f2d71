#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace triadnet {

// Labels run 1..order. Each triple is stored ascending.
using Triple = std::array<std::uint32_t, 3>;

struct Subsystem {
  std::uint32_t order = 0;
  std::vector<std::uint32_t> nodes;  // ascending
};

struct SteinerTripleSystem {
  std::uint32_t order = 0;
  std::vector<Triple> triples;
  std::vector<Subsystem> subsystems;
  std::string construction;  // how the system was obtained
};

struct StsReport {
  bool ok = true;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> uncovered;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> multiply_covered;
  std::vector<Triple> bad_triples;  // repeated or out-of-range labels
  std::size_t expected_triples = 0;
  std::size_t actual_triples = 0;
  std::string summary() const;
};

// n = 1 or 3 mod 6; order 1 is the empty system.
bool admissible_order(std::uint64_t n);

SteinerTripleSystem sts_base(std::uint32_t n);  // n in {1, 3, 7, 9, 13, 15}
SteinerTripleSystem sts_product(const SteinerTripleSystem& a, const SteinerTripleSystem& b);
// Order n3 + n1 (n2 - n3), with n1 = outer.order and n2 = inner.order. The
// inner system must carry a subsystem of order n3 (orders 1 and 3 always do).
SteinerTripleSystem sts_extend(const SteinerTripleSystem& outer, const SteinerTripleSystem& inner,
                               std::uint32_t n3);
SteinerTripleSystem sts_construct(std::uint32_t n);

// Classical direct constructions: Bose (n = 3 mod 6), Skolem (n = 1 mod 6).
SteinerTripleSystem sts_bose(std::uint32_t n);
SteinerTripleSystem sts_skolem(std::uint32_t n);
SteinerTripleSystem sts_direct(std::uint32_t n);

StsReport validate(const SteinerTripleSystem& sts);
// Checks that the triples inside `sub` form a Steiner system on its nodes.
StsReport validate_subsystem(const SteinerTripleSystem& sts, const Subsystem& sub);

void write_triples(std::ostream& out, const SteinerTripleSystem& sts);
// Reads "a b c" lines; the order is the largest label seen.
SteinerTripleSystem read_triples(std::istream& in);

}  // namespace triadnet
