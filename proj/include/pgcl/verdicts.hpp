// Top-level verdicts: the union decomposition for [x,G](G')^p, power
// compatibility of the commutator set under exponents 1 mod p, the full
// three-generator commutator-width verdict, and the X_N sets used in the
// quotient-tower checks.
#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pgcl/witness.hpp"

namespace pgcl {

struct UnionDecomposition {
  std::vector<Subgroup> subgroups;  // H_0, ..., H_p
  std::vector<Subgroup> derived;    // H_0', ..., H_p'
  Subgroup target;                  // [x,G](G')^p
};

// Under the hypotheses G' = <[u,v],[x,u],[x,v]>, G' != [x,G] and
// [x,G,G] <= (G')^p (with p >= 5, G' powerful, d(G') = 3), the p+1
// subgroups H_i = <x, u v^i, v^p> and H_p = <x, v, u^p> have powerful
// derived subgroups whose union is exactly [x,G](G')^p.
inline UnionDecomposition lemma_union_decomposition(const PcGroup& G, const Element& x,
                                                    const Element& u, const Element& v,
                                                    const Gate& gate = Gate{}) {
  const int p = G->p();
  Subgroup der = derived_subgroup(G);
  Subgroup gp = power_subgroup(der, 1, gate);

  if (p < 5) throw NotApplicableError("union lemma: p >= 5 required");
  if (!is_powerful(der, gate)) throw NotApplicableError("union lemma: G' is not powerful");
  if (rank(der) != 3) throw NotApplicableError("union lemma: d(G') != 3");
  Subgroup gens3 = subgroup_closure(
      G, {G->commutator(u, v), G->commutator(x, u), G->commutator(x, v)});
  if (gens3 != der)
    throw NotApplicableError("union lemma: G' != <[u,v],[x,u],[x,v]>");
  Subgroup xg = commutator_with_group(G, x);
  if (xg == der) throw NotApplicableError("union lemma: G' = [x,G]");
  Subgroup xgg = commutator_subgroup(G, xg, full_group(G), full_group(G));
  if (!gp.contains(xgg)) throw NotApplicableError("union lemma: [x,G,G] not inside (G')^p");

  UnionDecomposition out;
  out.target = product(xg, gp);
  Element vp = G->pow(v, p);
  Element up = G->pow(u, p);
  for (int i = 0; i <= p - 1; ++i) {
    Element uvi = G->mul(u, G->pow(v, i));
    out.subgroups.push_back(subgroup_closure(G, {x, uvi, vp}));
    Subgroup Hd = derived_subgroup(out.subgroups.back());
    if (Hd != product(subgroup_closure(G, {G->commutator(x, uvi)}), gp))
      fail("union lemma: H_i' != <[x, u v^i]>(G')^p at i = " + std::to_string(i));
    out.derived.push_back(Hd);
  }
  out.subgroups.push_back(subgroup_closure(G, {x, v, up}));
  {
    Subgroup Hd = derived_subgroup(out.subgroups.back());
    if (Hd != product(subgroup_closure(G, {G->commutator(x, v)}), gp))
      fail("union lemma: H_p' != <[x,v]>(G')^p");
    out.derived.push_back(Hd);
  }
  for (const auto& Hd : out.derived)
    if (!is_powerful(Hd, gate)) fail("union lemma: a derived subgroup is not powerful");

  // Union equality, extensionally.
  std::vector<Element> pool;
  for (const auto& Hd : out.derived)
    for (const auto& a : enumerate_elements(Hd, gate.enum_limit)) pool.push_back(a);
  if (!(ElementSet::of(G, std::move(pool)) == subgroup_elements(out.target, gate.enum_limit)))
    fail("union lemma: the union of the derived subgroups is not [x,G](G')^p");
  return out;
}

struct HondaReport {
  bool pass = true;
  bool vacuous = false;  // exponent-p derived subgroup: e = 1 mod p collapses
  std::uint64_t checks = 0;
  std::string detail;
};

// For commutators c and exponents e = 1 mod p below the exponent of G',
// c^e must again be a commutator.
inline HondaReport honda_power_check(const PcGroup& G, std::size_t sample_size,
                                     std::uint64_t seed = 1, const Gate& gate = Gate{},
                                     int jobs = 1) {
  HondaReport rep;
  KSetResult k = k_set(G, gate, jobs);
  if (!k.feasible()) {
    rep.pass = false;
    rep.detail = "K(G) infeasible: " + k.skip_reason;
    return rep;
  }
  Subgroup der = derived_subgroup(G);
  std::uint64_t exp = der.is_trivial() ? 1 : exponent_of(der, gate);
  if (exp <= std::uint64_t(G->p())) {
    rep.vacuous = true;
    rep.detail = "exponent of G' is p: e = 1 mod p reduces to e = 1";
  }
  std::vector<Element> sample = k.set->elems;
  if (sample.size() > sample_size) {
    std::mt19937_64 eng(seed);
    std::shuffle(sample.begin(), sample.end(), eng);
    sample.resize(sample_size);
  }
  for (const auto& c : sample)
    for (std::uint64_t e = 1; e < exp; e += std::uint64_t(G->p())) {
      if (!k.set->contains(G->pow(c, (long long)e))) {
        rep.pass = false;
        rep.detail = "c^e not a commutator for c = " + c.str() + ", e = " + std::to_string(e);
        return rep;
      }
      ++rep.checks;
    }
  return rep;
}

struct TheoremAVerdict {
  bool equality = false;          // K(G) = G' extensionally
  std::string branch;             // case classification
  std::optional<WitnessCertificate> certificate;  // for the uniserial routes
  std::uint64_t k_size = 0;
};

// Hypotheses: p >= 5 and d(G') <= 3; rejected otherwise.  Reports the
// extensional truth of G' = K(G) and the case route: Gamma = (G')^p
// gamma_3(G) splits the powerful case, and the non-powerful case passes
// through the CF(6,p) reduction to the fixed-witness theorem.
inline TheoremAVerdict theorem_a_verdict(const PcGroup& G, const Gate& gate = Gate{},
                                         int jobs = 1) {
  if (G->p() < 5) throw NotApplicableError("theorem A: p >= 5 required");
  Subgroup der = derived_subgroup(G);
  if (rank(der) > 3)
    throw NotApplicableError("theorem A: d(G') = " + std::to_string(rank(der)) +
                             " exceeds 3");

  TheoremAVerdict out;
  KSetResult k = k_set(G, gate, jobs);
  if (!k.feasible()) throw NotApplicableError("theorem A: " + k.skip_reason);
  out.k_size = k.set->size();
  out.equality = (*k.set == subgroup_elements(der, gate.enum_limit));

  if (der.is_trivial()) {
    out.branch = "abelian";
    return out;
  }

  Subgroup gp = power_subgroup(der, 1, gate);
  Subgroup g3 = lower_central(G, 3);
  if (is_powerful(der, gate)) {
    if (gp.contains(g3)) {
      out.branch = "powerful: case 3 (gamma_3 <= (G')^p)";
    } else {
      Subgroup gamma = product(gp, g3);
      std::uint64_t idx = index(der, gamma);
      if (idx == std::uint64_t(G->p())) {
        out.branch = "powerful: case 1 (|G' : Gamma| = p)";
        Subgroup g4 = lower_central(G, 4);
        if (index(gamma, product(g4, gp)) == std::uint64_t(G->p())) {
          out.branch += " -> uniserial mod (G')^p -> theorem B";
          TheoremBOptions opt;
          opt.gate = gate;
          out.certificate = find_theorem_b_witness(G, opt);
        }
      } else if (idx == std::uint64_t(G->p()) * std::uint64_t(G->p())) {
        out.branch = "powerful: case 2 (|G' : Gamma| = p^2)";
      } else {
        out.branch = "powerful: unexpected |G' : Gamma|";
      }
    }
  } else {
    // Non-powerful: only d(G') = 3 can occur; G/(G')^p is CF(6,p).
    if (rank(der) != 3) fail("theorem A: non-powerful G' with d(G') < 3");
    QuotientMap q = quotient(G, gp);
    auto cf = cf_parameters(q.target(), gate);
    if (!cf || cf->m != 6)
      fail("theorem A: non-powerful branch but G/(G')^p is not CF(6,p)");
    std::uint64_t dm = index(der, gp);
    std::uint64_t p4 = std::uint64_t(G->p());
    p4 = p4 * p4 * p4 * p4;
    if (dm != p4) fail("theorem A: non-powerful branch but |G' : (G')^p| != p^4");
    if (!is_uniserial_mod(G, der, gp).uniserial)
      fail("theorem A: non-powerful branch but action not uniserial mod (G')^p");
    out.branch = "non-powerful -> CF(6," + std::to_string(G->p()) + ") -> theorem B";
    TheoremBOptions opt;
    opt.gate = gate;
    out.certificate = find_theorem_b_witness(G, opt);
  }
  return out;
}

// X_N = { x in G : (G/N)' = K_{xN}(G/N) }, as an explicit union of cosets
// of N.  The verdict for x depends only on its central coset in G/N, so
// the quotient is scanned by transversal of its center.
inline ElementSet x_n_set(const PcGroup& G, const Subgroup& N, const Gate& gate = Gate{}) {
  QuotientMap q = quotient(G, N);
  const PcGroup& Q = q.target();
  if (Q->order() > gate.enum_limit) fail("x_n_set: quotient exceeds the enumeration gate");
  ElementSet derived_elems = subgroup_elements(derived_subgroup(Q), gate.enum_limit);
  Subgroup Zq = center(Q);
  std::unordered_set<Element, ElementHash> good;  // qualifying elements of Q
  for (const auto& rep : transversal(Q, Zq, gate.work_limit)) {
    ElementSet kx = k_set_fixed(Q, rep, gate);
    if (!(kx == derived_elems)) continue;
    // Every element of rep Z(Q) qualifies alongside rep.
    for (const auto& z : enumerate_elements(Zq, gate.enum_limit)) good.insert(Q->mul(rep, z));
  }
  if (G->order() > gate.work_limit) fail("x_n_set: source group exceeds the work gate");
  // Expand to cosets of N in G.
  std::vector<Element> xs;
  std::vector<Element> n_elems = enumerate_elements(N, gate.enum_limit);
  for (const auto& xbar : good) {
    Element lift = q.section(xbar);
    for (const auto& h : n_elems) xs.push_back(G->mul(lift, h));
  }
  return ElementSet::of(G, std::move(xs));
}

}  // namespace pgcl
