// Subgroups as echelonized induced generating sequences (igs).  Membership
// is decided by sequential exponent elimination; two subgroups are equal
// iff their igs sequences are identical.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pgcl/presentation.hpp"

namespace pgcl {

class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(PcGroup parent, std::vector<Element> igs)
      : parent_(std::move(parent)), igs_(std::move(igs)) {}

  const PcGroup& parent() const { return parent_; }
  const std::vector<Element>& igs() const { return igs_; }
  int length() const { return int(igs_.size()); }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (std::size_t i = 0; i < igs_.size(); ++i) o *= std::uint64_t(parent_->p());
    return o;
  }

  bool is_trivial() const { return igs_.empty(); }

  // 1-based leading generator indices, strictly increasing.
  std::vector<int> leading_indices() const {
    std::vector<int> out;
    out.reserve(igs_.size());
    for (const auto& u : igs_) out.push_back(u.leading());
    return out;
  }

  bool contains(const Element& a) const {
    Element r = sift(a);
    return r.is_identity();
  }

  bool contains(const Subgroup& other) const {
    for (const auto& u : other.igs_)
      if (!contains(u)) return false;
    return true;
  }

  // Residue of a after eliminating igs leading exponents from the left.
  Element sift(Element a) const {
    const auto& G = *parent_;
    while (!a.is_identity()) {
      int l = a.leading();
      const Element* slot = slot_at(l);
      if (!slot) return a;
      int e = a.exp_at(l);
      // slot has leading exponent 1; kill position l from the left.
      a = G.mul(G.pow(*slot, G.p() - e), a);
    }
    return a;
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.igs_ == b.igs_;
  }
  friend bool operator!=(const Subgroup& a, const Subgroup& b) { return !(a == b); }

 private:
  const Element* slot_at(int lead) const {
    for (const auto& u : igs_)
      if (u.leading() == lead) return &u;
    return nullptr;
  }

  PcGroup parent_;
  std::vector<Element> igs_;  // echelon form, reduced, leading exponents 1
};

namespace detail {

inline long long inverse_mod(long long a, long long p) {
  long long r = 1, b = a % p, e = p - 2;  // p prime
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

// Worklist echelon construction.  The slot set is driven to a fixpoint
// closed under p-th powers and mutual conjugation, which is exactly the
// condition that makes sequential elimination a membership test.
class EchelonBuilder {
 public:
  explicit EchelonBuilder(PcGroup G) : G_(std::move(G)), slots_(std::size_t(G_->n()) + 1) {}

  bool add(Element w) {
    w = sift(w);
    if (w.is_identity()) return false;
    int l = w.leading();
    long long inv = inverse_mod(w.exp_at(l), G_->p());
    w = G_->pow(w, inv);
    slots_[std::size_t(l)] = w;
    return true;
  }

  Element sift(Element a) const {
    while (!a.is_identity()) {
      int l = a.leading();
      const auto& slot = slots_[std::size_t(l)];
      if (!slot) return a;
      a = G_->mul(G_->pow(*slot, G_->p() - a.exp_at(l)), a);
    }
    return a;
  }

  // Close the slot set under powers and conjugation among slots.
  void close() {
    bool changed = true;
    while (changed) {
      changed = false;
      auto list = slot_list();
      for (const auto& u : list) {
        if (add(G_->pow(u, G_->p()))) changed = true;
        for (const auto& v : list) {
          if (add(G_->conjugate(v, u))) changed = true;
          if (add(G_->conjugate(v, G_->inv(u)))) changed = true;
        }
        if (changed) break;  // restart with the enlarged slot set
      }
    }
  }

  std::vector<Element> slot_list() const {
    std::vector<Element> out;
    for (const auto& s : slots_)
      if (s) out.push_back(*s);
    return out;
  }

  // Reduced echelon form: every slot has zero exponent at the other slots'
  // leading positions.
  std::vector<Element> reduced_igs() {
    std::vector<Element> igs = slot_list();
    for (std::size_t i = igs.size(); i-- > 0;) {
      for (std::size_t j = i + 1; j < igs.size(); ++j) {
        int l = igs[j].leading();
        int e = igs[i].exp_at(l);
        if (e != 0) igs[i] = G_->mul(igs[i], G_->pow(igs[j], G_->p() - e));
      }
    }
    return igs;
  }

 private:
  PcGroup G_;
  std::vector<std::optional<Element>> slots_;
};

}  // namespace detail

// Smallest subgroup containing gens; idempotent, result canonical.
inline Subgroup subgroup_closure(const PcGroup& G, const std::vector<Element>& gens) {
  detail::EchelonBuilder b(G);
  for (const auto& g : gens) b.add(g);
  b.close();
  return Subgroup(G, b.reduced_igs());
}

inline Subgroup trivial_subgroup(const PcGroup& G) { return Subgroup(G, {}); }

inline Subgroup full_group(const PcGroup& G) {
  std::vector<Element> gens;
  for (int i = 1; i <= G->n(); ++i) gens.push_back(G->generator(i));
  return subgroup_closure(G, gens);
}

// Smallest subgroup containing gens that is invariant under conjugation by
// the ambient subgroup.
inline Subgroup normal_closure(const PcGroup& G, const std::vector<Element>& gens,
                               const Subgroup& ambient) {
  if (ambient.parent() != G) fail("normal_closure: ambient has a different parent");
  detail::EchelonBuilder b(G);
  for (const auto& g : gens) b.add(g);
  b.close();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& u : b.slot_list()) {
      for (const auto& c : ambient.igs()) {
        if (b.add(G->conjugate(u, c))) changed = true;
        if (b.add(G->conjugate(u, G->inv(c)))) changed = true;
      }
    }
    if (changed) b.close();
  }
  return Subgroup(G, b.reduced_igs());
}

inline bool is_normal(const Subgroup& H, const Subgroup& ambient) {
  const PcGroup& G = H.parent();
  for (const auto& u : H.igs())
    for (const auto& c : ambient.igs()) {
      if (!H.contains(G->conjugate(u, c))) return false;
      if (!H.contains(G->conjugate(u, G->inv(c)))) return false;
    }
  return true;
}

inline bool is_normal_in_group(const Subgroup& H) {
  const PcGroup& G = H.parent();
  for (const auto& u : H.igs())
    for (int i = 1; i <= G->n(); ++i)
      if (!H.contains(G->conjugate(u, G->generator(i)))) return false;
  return true;
}

// |H : K| for K <= H.
inline std::uint64_t index(const Subgroup& H, const Subgroup& K) {
  if (H.parent() != K.parent()) fail("index: different parents");
  if (!H.contains(K)) fail("index: second subgroup is not contained in the first");
  return H.order() / K.order();
}

// All p^m elements of H, in echelon product order.
inline std::vector<Element> enumerate_elements(const Subgroup& H,
                                               std::uint64_t limit = std::uint64_t(1) << 24) {
  if (H.order() > limit) fail("enumerate_elements: subgroup order exceeds gate");
  const PcGroup& G = H.parent();
  std::vector<Element> out{G->identity()};
  for (auto it = H.igs().rbegin(); it != H.igs().rend(); ++it) {
    std::vector<Element> next;
    next.reserve(out.size() * std::size_t(G->p()));
    Element power = G->identity();
    for (int e = 0; e < G->p(); ++e) {
      for (const auto& tail : out) next.push_back(G->mul(power, tail));
      power = G->mul(power, *it);
    }
    out = std::move(next);
  }
  return out;
}

inline Subgroup intersection(const Subgroup& H, const Subgroup& K,
                             std::uint64_t limit = std::uint64_t(1) << 24) {
  if (H.parent() != K.parent()) fail("intersection: different parents");
  const Subgroup& small = H.order() <= K.order() ? H : K;
  const Subgroup& big = H.order() <= K.order() ? K : H;
  std::vector<Element> found;
  for (const auto& a : enumerate_elements(small, limit))
    if (big.contains(a)) found.push_back(a);
  return subgroup_closure(H.parent(), found);
}

// HK; requires one factor to normalize the other.
inline Subgroup product(const Subgroup& H, const Subgroup& K) {
  if (H.parent() != K.parent()) fail("product: different parents");
  if (!is_normal(K, H) && !is_normal(H, K))
    fail("product: neither factor normalizes the other");
  std::vector<Element> gens = H.igs();
  gens.insert(gens.end(), K.igs().begin(), K.igs().end());
  return subgroup_closure(H.parent(), gens);
}

// Canonical representative of the coset aH: exponents at the leading
// positions of H are eliminated from the right, smallest position first.
inline Element coset_representative(const Subgroup& H, Element a) {
  const PcGroup& G = H.parent();
  for (const auto& u : H.igs()) {
    int l = u.leading();
    int e = a.exp_at(l);
    if (e != 0) a = G->mul(a, G->pow(u, G->p() - e));
  }
  return a;
}

// Transversal of H in G: all exponent vectors supported on the complement
// of H's leading positions.  Size |G| / |H|.
inline std::vector<Element> transversal(const PcGroup& G, const Subgroup& H,
                                        std::uint64_t limit = std::uint64_t(1) << 24) {
  std::vector<int> free_pos;
  {
    std::vector<bool> taken(std::size_t(G->n()) + 1, false);
    for (int l : H.leading_indices()) taken[std::size_t(l)] = true;
    for (int i = 1; i <= G->n(); ++i)
      if (!taken[std::size_t(i)]) free_pos.push_back(i);
  }
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < free_pos.size(); ++i) count *= std::uint64_t(G->p());
  if (count > limit) fail("transversal: coset count exceeds gate");
  std::vector<Element> out;
  out.reserve(std::size_t(count));
  Element cur = G->identity();
  // Odometer over the free positions, lexicographic from the left.
  std::vector<int> digits(free_pos.size(), 0);
  for (std::uint64_t t = 0; t < count; ++t) {
    Element a = G->identity();
    for (std::size_t i = 0; i < free_pos.size(); ++i)
      a.e[std::size_t(free_pos[i] - 1)] = std::uint8_t(digits[i]);
    out.push_back(a);
    for (std::size_t i = free_pos.size(); i-- > 0;) {
      if (++digits[i] < G->p()) break;
      digits[i] = 0;
    }
  }
  (void)cur;
  return out;
}

// Conjugacy class of a under the subgroup generated by `gens`, with a
// transversal element for each orbit point.
struct ConjugacyOrbit {
  std::vector<Element> points;
  std::unordered_map<Element, Element, ElementHash> transversal;  // point -> conjugator
};

inline ConjugacyOrbit conjugacy_orbit(const PcGroup& G, const Element& a,
                                      const std::vector<Element>& gens,
                                      std::uint64_t limit = std::uint64_t(1) << 24) {
  ConjugacyOrbit orb;
  orb.points.push_back(a);
  orb.transversal.emplace(a, G->identity());
  for (std::size_t head = 0; head < orb.points.size(); ++head) {
    Element y = orb.points[head];
    Element t = orb.transversal.at(y);
    for (const auto& s : gens) {
      Element z = G->conjugate(y, s);
      if (orb.transversal.find(z) == orb.transversal.end()) {
        orb.transversal.emplace(z, G->mul(t, s));
        orb.points.push_back(z);
        if (orb.points.size() > limit) fail("conjugacy_orbit: orbit exceeds gate");
      }
    }
  }
  return orb;
}

// Stabilizer of a under conjugation by C, via Schreier generators.
inline Subgroup centralizer_in(const Subgroup& C, const Element& a) {
  const PcGroup& G = C.parent();
  std::vector<Element> gens = C.igs();
  if (gens.empty()) return C;
  ConjugacyOrbit orb = conjugacy_orbit(G, a, gens);
  detail::EchelonBuilder b(G);
  for (const auto& y : orb.points) {
    const Element& t = orb.transversal.at(y);
    for (const auto& s : gens) {
      Element z = G->conjugate(y, s);
      // Schreier generator t s t_z^{-1} fixes a.
      Element schreier = G->mul(G->mul(t, s), G->inv(orb.transversal.at(z)));
      b.add(schreier);
    }
  }
  b.close();
  Subgroup stab(G, b.reduced_igs());
  if (stab.order() * orb.points.size() != C.order())
    fail("centralizer_in: orbit-stabilizer mismatch");
  return stab;
}

inline Subgroup centralizer(const PcGroup& G, const Element& a) {
  return centralizer_in(full_group(G), a);
}

// Z(G), by iterated generator stabilizers; no enumeration of G.
inline Subgroup center(const PcGroup& G) {
  Subgroup C = full_group(G);
  for (int i = 1; i <= G->n(); ++i) C = centralizer_in(C, G->generator(i));
  return C;
}

}  // namespace pgcl
