// The subgroups D(T) (with D(T)/T = Z(G/T) for T maximal in G' and normal
// in G) and their union D, which is the locus of x with [x,G] < G'.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pgcl/kset.hpp"
#include "pgcl/quotient.hpp"
#include "pgcl/series.hpp"

namespace pgcl {

// Index-p subgroups of H containing Phi(H); parameterized by the
// normalized nonzero functionals on the Frattini quotient.
inline std::vector<Subgroup> maximal_subgroups(const Subgroup& H) {
  const PcGroup& G = H.parent();
  const int p = G->p();
  Subgroup phi = frattini(H);
  // Basis of H modulo Phi(H).
  std::vector<Element> basis;
  Subgroup span = phi;
  for (const auto& u : H.igs()) {
    if (!span.contains(u)) {
      basis.push_back(u);
      std::vector<Element> gens = span.igs();
      gens.push_back(u);
      span = subgroup_closure(G, gens);
    }
  }
  const int r = int(basis.size());
  if (r == 0) return {};

  std::vector<Subgroup> out;
  // Functionals alpha with first nonzero entry 1.
  std::vector<int> alpha(std::size_t(r), 0);
  auto advance = [&]() {
    for (std::size_t i = alpha.size(); i-- > 0;) {
      if (++alpha[i] < p) return true;
      alpha[i] = 0;
    }
    return false;
  };
  while (advance()) {
    int t = -1;
    for (int i = 0; i < r; ++i)
      if (alpha[std::size_t(i)] != 0) {
        t = i;
        break;
      }
    if (alpha[std::size_t(t)] != 1) continue;
    // Kernel basis: b_s b_t^{-alpha_s} for s != t.
    std::vector<Element> gens = phi.igs();
    for (int s = 0; s < r; ++s) {
      if (s == t) continue;
      gens.push_back(G->mul(basis[std::size_t(s)],
                            G->pow(basis[std::size_t(t)], -(long long)alpha[std::size_t(s)])));
    }
    Subgroup T = subgroup_closure(G, gens);
    if (T.order() * std::uint64_t(p) != H.order()) fail("maximal_subgroups: bad hyperplane");
    out.push_back(T);
  }
  return out;
}

struct DSubgroups {
  std::vector<std::pair<Subgroup, Subgroup>> parts;  // (T, D(T))
  ElementSet union_set;                              // D, extensionally

  // Membership prefers the subgroup list; D is generally not a subgroup.
  bool contains(const Element& a) const {
    for (const auto& [t, dt] : parts)
      if (dt.contains(a)) return true;
    return false;
  }
};

inline DSubgroups d_subgroups(const PcGroup& G, const Gate& gate = Gate{}) {
  Subgroup der = derived_subgroup(G);
  if (der.is_trivial()) fail("d_subgroups: G must be non-abelian");
  DSubgroups out;
  std::vector<Element> all;
  for (const auto& T : maximal_subgroups(der)) {
    if (!is_normal_in_group(T)) continue;
    Subgroup DT = condition_subgroup(G, full_group(G), T);
    for (const auto& a : enumerate_elements(DT, gate.enum_limit)) all.push_back(a);
    out.parts.emplace_back(T, DT);
  }
  out.union_set = ElementSet::of(G, std::move(all));
  return out;
}

struct LemmaDReport {
  bool equivalence_holds = true;   // [x,G] = G'  iff  x not in D, all x
  bool frattini_contained = true;  // Phi(G) <= D(T) for every T
  bool index_log_even = true;      // log_p |G : D(T)| even for every T
  std::uint64_t elements_checked = 0;
  std::string detail;

  bool all() const { return equivalence_holds && frattini_contained && index_log_even; }
};

// [x, G] as a subgroup: the normal closure of the generator commutators.
inline Subgroup commutator_with_group(const PcGroup& G, const Element& x) {
  std::vector<Element> gens;
  for (int i = 1; i <= G->n(); ++i) gens.push_back(G->commutator(x, G->generator(i)));
  return normal_closure(G, gens, full_group(G));
}

inline LemmaDReport verify_lemma_D(const PcGroup& G, const Gate& gate = Gate{}) {
  LemmaDReport rep;
  if (G->order() > gate.enum_limit) {
    rep.detail = "group order exceeds the enumeration gate";
    rep.equivalence_holds = rep.frattini_contained = rep.index_log_even = false;
    return rep;
  }
  DSubgroups D = d_subgroups(G, gate);
  Subgroup der = derived_subgroup(G);
  Subgroup phi = frattini(G);
  for (const auto& [T, DT] : D.parts) {
    if (!DT.contains(phi)) rep.frattini_contained = false;
    std::uint64_t idx = index(full_group(G), DT);
    int log = 0;
    while (idx > 1) {
      idx /= std::uint64_t(G->p());
      ++log;
    }
    if (log % 2 != 0) rep.index_log_even = false;
  }
  Subgroup whole = full_group(G);
  for (const auto& x : enumerate_elements(whole, gate.enum_limit)) {
    bool full_image = commutator_with_group(G, x) == der;
    bool in_d = D.contains(x);
    if (full_image != !in_d) {
      rep.equivalence_holds = false;
      if (rep.detail.empty()) rep.detail = "equivalence fails at x = " + x.str();
    }
    ++rep.elements_checked;
  }
  return rep;
}

}  // namespace pgcl
