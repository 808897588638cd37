// Characteristic series and the classification predicates: powerful,
// potent, power abelian, uniserial actions, CF(m,p) parameters, and chief
// refinements.
#pragma once

#include <algorithm>
#include <optional>
#include <unordered_set>
#include <vector>

#include "pgcl/gates.hpp"
#include "pgcl/quotient.hpp"

namespace pgcl {

// Descending chain of subgroups of a common parent, each normal in the
// parent, each containing the next.
struct NormalSeries {
  PcGroup parent;
  std::vector<Subgroup> terms;  // terms[0] >= terms[1] >= ...

  std::size_t steps() const { return terms.empty() ? 0 : terms.size() - 1; }

  bool validate() const {
    for (const auto& t : terms)
      if (!is_normal_in_group(t)) return false;
    for (std::size_t i = 0; i + 1 < terms.size(); ++i)
      if (!terms[i].contains(terms[i + 1])) return false;
    return true;
  }
};

// [A, B] as a subgroup: generated by igs commutators, closed under
// conjugation by the ambient subgroup.
inline Subgroup commutator_subgroup(const PcGroup& G, const Subgroup& A, const Subgroup& B,
                                    const Subgroup& ambient) {
  std::vector<Element> gens;
  for (const auto& a : A.igs())
    for (const auto& b : B.igs()) gens.push_back(G->commutator(a, b));
  return normal_closure(G, gens, ambient);
}

inline Subgroup derived_subgroup(const Subgroup& H) {
  return commutator_subgroup(H.parent(), H, H, H);
}

inline Subgroup derived_subgroup(const PcGroup& G) { return derived_subgroup(full_group(G)); }

inline Subgroup lower_central(const PcGroup& G, int i) {
  Subgroup term = full_group(G);
  Subgroup whole = term;
  for (int t = 1; t < i; ++t) {
    if (term.is_trivial()) break;
    term = commutator_subgroup(G, term, whole, whole);
  }
  return term;
}

inline std::vector<Subgroup> lower_central_series(const PcGroup& G) {
  std::vector<Subgroup> out{full_group(G)};
  while (!out.back().is_trivial()) {
    Subgroup next = commutator_subgroup(G, out.back(), out.front(), out.front());
    if (next == out.back()) fail("lower_central_series: chain does not descend");
    out.push_back(next);
  }
  return out;
}

inline int nilpotency_class(const PcGroup& G) {
  return int(lower_central_series(G).size()) - 1;
}

inline bool is_abelian(const Subgroup& H) {
  const PcGroup& G = H.parent();
  for (std::size_t i = 0; i < H.igs().size(); ++i)
    for (std::size_t j = i + 1; j < H.igs().size(); ++j)
      if (!G->commutator(H.igs()[i], H.igs()[j]).is_identity()) return false;
  return true;
}

// Largest p^k dividing every element order; gate-free for abelian H.
inline std::uint64_t exponent_of(const Subgroup& H, const Gate& gate = Gate{}) {
  const PcGroup& G = H.parent();
  if (is_abelian(H)) {
    std::uint64_t e = 1;
    for (const auto& u : H.igs()) e = std::max(e, G->element_order(u));
    return e;
  }
  if (H.order() > gate.enum_limit) fail("exponent_of: order exceeds enumeration gate");
  std::uint64_t e = 1;
  for (const auto& a : enumerate_elements(H, gate.enum_limit))
    e = std::max(e, G->element_order(a));
  return e;
}

// H^{p^k} = <h^{p^k} : h in H>.  This is the generated subgroup; whether it
// equals the set of p^k-th powers is a separate predicate.  Exact closed
// forms are used for abelian and (p odd) class-at-most-2 subgroups; other
// subgroups are enumerated under the gate.
inline Subgroup power_subgroup(const Subgroup& H, int k, const Gate& gate = Gate{}) {
  const PcGroup& G = H.parent();
  if (k <= 0) return H;
  std::uint64_t q = 1;
  for (int t = 0; t < k; ++t) q *= std::uint64_t(G->p());

  std::vector<Element> gens;
  for (const auto& u : H.igs()) gens.push_back(G->pow(u, (long long)q));

  if (is_abelian(H)) return subgroup_closure(G, gens);

  Subgroup der = derived_subgroup(H);
  bool class_two = true;
  for (const auto& c : der.igs())
    for (const auto& u : H.igs())
      if (!G->commutator(c, u).is_identity()) class_two = false;
  if (class_two && G->p() > 2 && is_abelian(der)) {
    // (xy)^{p^k} = x^{p^k} y^{p^k} [y,x]^{C(p^k,2)} and C(p^k,2) = 0 mod p^k.
    for (const auto& c : der.igs()) gens.push_back(G->pow(c, (long long)q));
    return subgroup_closure(G, gens);
  }

  if (H.order() > gate.enum_limit) fail("power_subgroup: order exceeds enumeration gate");
  for (const auto& a : enumerate_elements(H, gate.enum_limit)) gens.push_back(G->pow(a, (long long)q));
  return subgroup_closure(G, gens);
}

// The set {h^{p^k} : h in H}; always gated.
inline std::vector<Element> power_set(const Subgroup& H, int k, const Gate& gate = Gate{}) {
  const PcGroup& G = H.parent();
  if (H.order() > gate.enum_limit) fail("power_set: order exceeds enumeration gate");
  std::uint64_t q = 1;
  for (int t = 0; t < k; ++t) q *= std::uint64_t(G->p());
  std::unordered_set<Element, ElementHash> seen;
  for (const auto& a : enumerate_elements(H, gate.enum_limit)) seen.insert(G->pow(a, (long long)q));
  std::vector<Element> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Phi(H) = H^p H' for p-groups; generator powers suffice modulo H'.
inline Subgroup frattini(const Subgroup& H) {
  const PcGroup& G = H.parent();
  std::vector<Element> gens = derived_subgroup(H).igs();
  for (const auto& u : H.igs()) gens.push_back(G->pow(u, G->p()));
  return subgroup_closure(G, gens);
}

inline Subgroup frattini(const PcGroup& G) { return frattini(full_group(G)); }

// d(H) = log_p |H : Phi(H)|, the minimal generator count of a p-group.
inline int rank(const Subgroup& H) {
  Subgroup phi = frattini(H);
  std::uint64_t idx = index(H, phi);
  int r = 0;
  const std::uint64_t p = std::uint64_t(H.parent()->p());
  while (idx > 1) {
    idx /= p;
    ++r;
  }
  return r;
}

// Omega_i(H) = <h in H : h^{p^i} = 1>; gated enumeration.
inline Subgroup omega(const Subgroup& H, int i, const Gate& gate = Gate{}) {
  const PcGroup& G = H.parent();
  if (H.order() > gate.enum_limit) fail("omega: order exceeds enumeration gate");
  std::uint64_t q = 1;
  for (int t = 0; t < i; ++t) q *= std::uint64_t(G->p());
  std::vector<Element> gens;
  for (const auto& a : enumerate_elements(H, gate.enum_limit))
    if (G->element_order(a) <= q) gens.push_back(a);
  return subgroup_closure(G, gens);
}

inline bool is_powerful(const Subgroup& H, const Gate& gate = Gate{}) {
  const PcGroup& G = H.parent();
  Subgroup der = derived_subgroup(H);
  if (der.is_trivial()) return true;
  Subgroup target = power_subgroup(H, G->p() == 2 ? 2 : 1, gate);
  return target.contains(der);
}

inline bool is_potent(const Subgroup& H, const Gate& gate = Gate{}) {
  const PcGroup& G = H.parent();
  if (G->p() == 2) return is_powerful(H, gate);
  Subgroup gamma = H;
  Subgroup whole = H;
  for (int t = 1; t < G->p() - 1; ++t)
    gamma = commutator_subgroup(G, gamma, whole, whole);
  if (gamma.is_trivial()) return true;
  return power_subgroup(H, 1, gate).contains(gamma);
}

inline bool is_potent(const PcGroup& G, const Gate& gate = Gate{}) {
  return is_potent(full_group(G), gate);
}

struct PowerAbelianReport {
  bool powers_are_power_sets = true;  // H^{p^i} = {h^{p^i}} for all i
  bool omegas_are_order_sets = true;  // Omega_i = {h : o(h) <= p^i}
  bool indices_match = true;          // |H : H^{p^i}| = |Omega_i|
  bool complete = true;               // false when the gate truncated the check

  bool all() const { return powers_are_power_sets && omegas_are_order_sets && indices_match; }
};

inline PowerAbelianReport is_power_abelian(const Subgroup& H, const Gate& gate = Gate{}) {
  PowerAbelianReport rep;
  const PcGroup& G = H.parent();
  if (H.order() > gate.enum_limit) {
    rep.complete = false;
    return rep;
  }
  std::vector<Element> all = enumerate_elements(H, gate.enum_limit);
  std::uint64_t exponent = 1;
  for (const auto& a : all) exponent = std::max(exponent, G->element_order(a));
  std::uint64_t q = std::uint64_t(G->p());
  for (int i = 1; q <= exponent; ++i, q *= std::uint64_t(G->p())) {
    Subgroup Pi = power_subgroup(H, i, gate);
    std::unordered_set<Element, ElementHash> powers;
    std::uint64_t omega_count = 0;
    for (const auto& a : all) {
      powers.insert(G->pow(a, (long long)q));
      if (G->element_order(a) <= q) ++omega_count;
    }
    if (powers.size() != Pi.order()) rep.powers_are_power_sets = false;
    Subgroup Oi = omega(H, i, gate);
    if (omega_count != Oi.order()) rep.omegas_are_order_sets = false;
    if (index(H, Pi) != omega_count) rep.indices_match = false;
  }
  return rep;
}

struct UniserialResult {
  bool uniserial = false;
  NormalSeries chain;  // [N M, [N,G] M, [N,G,G] M, ..., M]
};

// True iff the chain [N, G, ..., G] M descends to M in steps of order at
// most p.  Both M <= N expected, both normal in G.
inline UniserialResult is_uniserial_mod(const PcGroup& G, const Subgroup& N, const Subgroup& M) {
  if (!is_normal_in_group(N) || !is_normal_in_group(M))
    fail("is_uniserial_mod: subgroups must be normal");
  UniserialResult res;
  res.chain.parent = G;
  Subgroup whole = full_group(G);
  Subgroup cur = product(N, M);
  res.chain.terms.push_back(cur);
  res.uniserial = true;
  while (cur != M) {
    Subgroup next = product(commutator_subgroup(G, cur, whole, whole), M);
    if (index(cur, next) > std::uint64_t(G->p())) res.uniserial = false;
    if (next == cur) {
      // Stalled above M: not uniserial down to M.
      res.uniserial = false;
      break;
    }
    res.chain.terms.push_back(next);
    cur = next;
  }
  return res;
}

// Deterministic chief series of G between L and N: all factors of order p,
// every term normal in G.  At each step the order-p G-invariant subgroup
// of L/B with the smallest echelonized generator is chosen.
inline NormalSeries chief_refinement(const PcGroup& G, const Subgroup& L, const Subgroup& N,
                                     const Gate& gate = Gate{}) {
  if (!L.contains(N)) fail("chief_refinement: N not contained in L");
  if (!is_normal_in_group(L) || !is_normal_in_group(N))
    fail("chief_refinement: both ends must be normal in G");
  std::vector<Subgroup> ascending{N};
  Subgroup B = N;
  while (B != L) {
    QuotientMap q = quotient(G, B);
    Subgroup Lbar = q.project_subgroup(L);
    // Central part of Lbar in G/B.
    Subgroup central = Lbar;
    for (int i = 1; i <= q.target()->n(); ++i)
      central = centralizer_in(central, q.target()->generator(i));
    if (central.is_trivial()) fail("chief_refinement: no central layer found");
    std::optional<Element> best;
    for (const auto& a : enumerate_elements(central, gate.enum_limit)) {
      if (a.is_identity()) continue;
      if (!q.target()->pow(a, q.target()->p()).is_identity()) continue;
      Element key = subgroup_closure(q.target(), {a}).igs().front();
      if (!best || key.leading() < best->leading() ||
          (key.leading() == best->leading() && key < *best))
        best = key;
    }
    if (!best) fail("chief_refinement: central layer has no order-p element");
    std::vector<Element> gens = B.igs();
    gens.push_back(q.section(*best));
    Subgroup next = subgroup_closure(G, gens);
    if (index(next, B) != std::uint64_t(G->p()))
      fail("chief_refinement: step is not of order p");
    ascending.push_back(next);
    B = next;
  }
  NormalSeries series;
  series.parent = G;
  series.terms.assign(ascending.rbegin(), ascending.rend());
  return series;
}

struct CfParameters {
  int m = 0;
  int degree_of_commutativity = 0;
};

// CF(m,p): nilpotency class m-1 with uniserial action of G on G'.  The
// degree of commutativity is computed over G_1 = C_2 (the first two-step
// centralizer) and G_i = gamma_i(G).
inline std::optional<CfParameters> cf_parameters(const PcGroup& G, const Gate& gate = Gate{}) {
  std::vector<Subgroup> gamma = lower_central_series(G);
  int cls = int(gamma.size()) - 1;
  if (cls < 2) return std::nullopt;
  Subgroup derived = gamma[1];
  if (!is_uniserial_mod(G, derived, trivial_subgroup(G)).uniserial) return std::nullopt;

  CfParameters out;
  out.m = cls + 1;

  Subgroup gp = power_subgroup(derived, 1, gate);
  Subgroup g4 = int(gamma.size()) > 3 ? gamma[3] : trivial_subgroup(G);
  Subgroup c2 = condition_subgroup(G, derived, product(g4, gp));

  auto term = [&](int i) -> Subgroup {
    if (i == 1) return c2;
    if (i - 1 < int(gamma.size())) return gamma[std::size_t(i - 1)];
    return trivial_subgroup(G);
  };

  for (int k = out.m - 2; k >= 0; --k) {
    bool ok = true;
    for (int i = 1; i <= out.m && ok; ++i)
      for (int j = 1; j <= out.m && ok; ++j) {
        Subgroup lhs = commutator_subgroup(G, term(i), term(j), full_group(G));
        Subgroup rhs = term(i + j + k);
        if (!rhs.contains(lhs)) ok = false;
      }
    if (ok) {
      out.degree_of_commutativity = k;
      break;
    }
  }
  return out;
}

}  // namespace pgcl
