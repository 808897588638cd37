// Feasibility gates for extensional (brute-force) computations.
#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

namespace pgcl {

struct Gate {
  // Largest group/subgroup order that may be enumerated element by element.
  std::uint64_t enum_limit = 15625;  // 5^6
  // Work budget for pair loops and orbit unions (k_set and friends).
  std::uint64_t work_limit = std::uint64_t(1) << 24;
  // Largest order for which dense multiplication tables are built.
  std::uint64_t table_limit = 500000;

  static Gate from_env() {
    Gate g;
    if (const char* s = std::getenv("PGCL_GATE")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(s, &end, 10);
      if (end && *end == '\0' && v > 0) g.enum_limit = v;
    }
    return g;
  }

  Gate with_enum_limit(std::uint64_t v) const {
    Gate g = *this;
    g.enum_limit = v;
    return g;
  }
};

}  // namespace pgcl
