// Commutator sets K(G) and K_x(G), and the rank oracle for commutator
// membership in free class-2 exponent-p quotients.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "pgcl/constructions.hpp"
#include "pgcl/dense.hpp"
#include "pgcl/subgroup.hpp"

namespace pgcl {

// Extensional, deduplicated, sorted set of normal forms.
struct ElementSet {
  PcGroup parent;
  std::vector<Element> elems;  // sorted, unique

  static ElementSet of(PcGroup G, std::vector<Element> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return ElementSet{std::move(G), std::move(v)};
  }

  std::size_t size() const { return elems.size(); }

  bool contains(const Element& a) const {
    return std::binary_search(elems.begin(), elems.end(), a);
  }

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.elems == b.elems;
  }
};

inline ElementSet subgroup_elements(const Subgroup& H,
                                    std::uint64_t limit = std::uint64_t(1) << 24) {
  return ElementSet::of(H.parent(), enumerate_elements(H, limit));
}

// K_x(G) = x^{-1} * (conjugacy class of x); size |G : C_G(x)|.
inline ElementSet k_set_fixed(const PcGroup& G, const Element& x,
                              const Gate& gate = Gate{}) {
  std::vector<Element> gens;
  for (int i = 1; i <= G->n(); ++i) gens.push_back(G->generator(i));
  ConjugacyOrbit orb = conjugacy_orbit(G, x, gens, gate.work_limit);
  std::vector<Element> out;
  out.reserve(orb.points.size());
  Element xi = G->inv(x);
  for (const auto& y : orb.points) out.push_back(G->mul(xi, y));
  return ElementSet::of(G, std::move(out));
}

// Result of a gated enumeration: either the set or an explicit reason it
// was not attempted.  Never a silent truncation.
struct KSetResult {
  std::optional<ElementSet> set;
  std::string skip_reason;
  bool feasible() const { return set.has_value(); }
};

// Full K(G): commutators depend only on the central cosets of their
// arguments, so the pair loop ranges over a transversal of Z(G).
inline KSetResult k_set(const PcGroup& G, const Gate& gate = Gate{}, int jobs = 1) {
  KSetResult res;
  if (G->order() > gate.work_limit) {
    res.skip_reason = "group order " + std::to_string(G->order()) +
                      " exceeds the enumeration work gate " + std::to_string(gate.work_limit);
    return res;
  }
  Subgroup Z = center(G);
  std::uint64_t reps_count = G->order() / Z.order();
  if (reps_count > gate.work_limit / std::max<std::uint64_t>(reps_count, 1)) {
    res.skip_reason = "coset pair space " + std::to_string(reps_count) + "^2 exceeds the work gate " +
                      std::to_string(gate.work_limit);
    return res;
  }
  std::vector<Element> reps = transversal(G, Z, gate.work_limit);

  std::optional<DenseGroup> dense = DenseGroup::build(G, gate);
  jobs = std::max(1, jobs);
  std::vector<std::vector<Element>> parts(std::size_t(jobs));

  auto run_rows = [&](std::size_t worker) {
    std::unordered_set<Element, ElementHash> seen;
    if (dense) {
      std::vector<std::uint32_t> rep_idx;
      rep_idx.reserve(reps.size());
      for (const auto& r : reps) rep_idx.push_back(dense->index_of(r));
      for (std::size_t i = worker; i < reps.size(); i += std::size_t(jobs))
        for (std::size_t j = 0; j < reps.size(); ++j)
          seen.insert(dense->element_at(dense->commutator(rep_idx[i], rep_idx[j])));
    } else {
      for (std::size_t i = worker; i < reps.size(); i += std::size_t(jobs)) {
        Element xi = G->inv(reps[i]);
        for (std::size_t j = 0; j < reps.size(); ++j)
          seen.insert(G->mul(G->mul(xi, G->inv(reps[j])), G->mul(reps[i], reps[j])));
      }
    }
    parts[worker].assign(seen.begin(), seen.end());
  };

  if (jobs == 1) {
    run_rows(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(run_rows, std::size_t(w));
    for (auto& t : pool) t.join();
  }

  std::vector<Element> all;
  for (auto& part : parts) all.insert(all.end(), part.begin(), part.end());
  res.set = ElementSet::of(G, std::move(all));
  return res;
}

// Rank of the alternating matrix attached to a derived-subgroup element of
// F_d / gamma_3(F_d) F_d^p.
inline int bivector_rank(const FreeClass2Group& F, const Element& c) {
  const int p = F.group->p();
  auto m = F.matrix_of(c);
  const int d = F.d;
  int rank = 0;
  int row = 0;
  for (int col = 0; col < d && row < d; ++col) {
    int pivot = -1;
    for (int r = row; r < d; ++r)
      if (m[std::size_t(r)][std::size_t(col)] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[std::size_t(pivot)], m[std::size_t(row)]);
    long long inv = detail::inverse_mod(m[std::size_t(row)][std::size_t(col)], p);
    for (int cc = 0; cc < d; ++cc)
      m[std::size_t(row)][std::size_t(cc)] = int(m[std::size_t(row)][std::size_t(cc)] * inv % p);
    for (int r = 0; r < d; ++r) {
      if (r == row) continue;
      int f = m[std::size_t(r)][std::size_t(col)];
      if (f == 0) continue;
      for (int cc = 0; cc < d; ++cc)
        m[std::size_t(r)][std::size_t(cc)] =
            int(((m[std::size_t(r)][std::size_t(cc)] - (long long)f * m[std::size_t(row)][std::size_t(cc)]) % p + p) % p);
    }
    ++row;
    ++rank;
  }
  return rank;
}

// c is a single commutator iff its bivector is decomposable iff the
// attached alternating form has rank at most 2.
inline bool decomposable_rank_oracle(const FreeClass2Group& F, const Element& c) {
  return bivector_rank(F, c) <= 2;
}

}  // namespace pgcl
