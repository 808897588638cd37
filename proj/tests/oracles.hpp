// Brute-force oracles for the test suites.  These deliberately use only
// Element arithmetic (mul/inv/pow) and raw enumeration, independent of the
// echelon, quotient, and orbit machinery they are used to check.
#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <unordered_set>
#include <vector>

#include "pgcl/presentation.hpp"

namespace oracle {

using namespace pgcl;

// All p^n exponent vectors, lexicographic.
inline std::vector<Element> all_elements(const PcGroup& G) {
  std::vector<Element> out;
  out.reserve(std::size_t(G->order()));
  std::vector<long long> digits(std::size_t(G->n()), 0);
  for (std::uint64_t t = 0; t < G->order(); ++t) {
    out.push_back(G->element(digits));
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (++digits[i] < G->p()) break;
      digits[i] = 0;
    }
  }
  return out;
}

// BFS closure under right multiplication by the generators.
inline std::set<Element> bfs_closure(const PcGroup& G, const std::vector<Element>& gens) {
  std::set<Element> seen{G->identity()};
  std::vector<Element> frontier{G->identity()};
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const auto& a : frontier)
      for (const auto& g : gens) {
        Element b = G->mul(a, g);
        if (seen.insert(b).second) next.push_back(b);
        Element c = G->mul(a, G->inv(g));
        if (seen.insert(c).second) next.push_back(c);
      }
    frontier = std::move(next);
  }
  return seen;
}

inline std::vector<Element> naive_center(const PcGroup& G) {
  std::vector<Element> out;
  for (const auto& a : all_elements(G)) {
    bool central = true;
    for (int i = 1; i <= G->n() && central; ++i)
      if (!G->commutator(a, G->generator(i)).is_identity()) central = false;
    if (central) out.push_back(a);
  }
  return out;
}

// K(G) by the full |G|^2 pair loop; only for tiny groups.
inline std::set<Element> naive_k_set(const PcGroup& G) {
  std::set<Element> out;
  auto all = all_elements(G);
  for (const auto& a : all)
    for (const auto& b : all) out.insert(G->commutator(a, b));
  return out;
}

inline std::set<Element> naive_k_set_fixed(const PcGroup& G, const Element& x) {
  std::set<Element> out;
  for (const auto& b : all_elements(G)) out.insert(G->commutator(x, b));
  return out;
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  Element element(const PcGroup& G) {
    std::vector<long long> digits(std::size_t(G->n()), 0);
    std::uniform_int_distribution<int> d(0, G->p() - 1);
    for (auto& x : digits) x = d(eng);
    return G->element(digits);
  }

  Word word(const PcGroup& G, int max_len = 12) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> gen(1, G->n());
    std::uniform_int_distribution<int> exp(-2 * G->p(), 2 * G->p());
    Word w;
    int L = len(eng);
    for (int t = 0; t < L; ++t) w.push_back({gen(eng), exp(eng)});
    return w;
  }

  std::uint64_t uniform(std::uint64_t bound) {
    std::uniform_int_distribution<std::uint64_t> d(0, bound - 1);
    return d(eng);
  }
};

}  // namespace oracle
