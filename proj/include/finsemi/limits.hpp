#pragma once

#include <cstdint>

namespace finsemi {

// Caps guarding the combinatorial constructions. Exceeding any of them is an
// error, never a silent truncation.
struct Limits {
  std::uint64_t max_order = 4096;            // semigroups, products, threads
  std::uint64_t max_congruences = 100000;    // members of a lattice
  std::uint64_t max_endomorphisms = 100000;  // |End S|
  std::uint64_t oracle_bound = 10000000;     // n^n for brute-force End
  std::uint64_t max_composition_entries = std::uint64_t{1} << 26;
};

}  // namespace finsemi
