// Quotients G/N as fresh consistent presentations, with projection and
// section maps, plus the commutator-condition subgroups built on them.
#pragma once

#include <vector>

#include "pgcl/subgroup.hpp"

namespace pgcl {

// Surjective homomorphism G -> G/N.  The target presentation keeps the pc
// generators whose leading indices avoid the kernel's and reduces relation
// tails modulo the kernel, so it stays refined-order-p; consistency is
// re-verified on construction.
class QuotientMap {
 public:
  QuotientMap(PcGroup source, Subgroup kernel, PcGroup target,
              std::vector<int> kept_positions, std::vector<Element> images)
      : source_(std::move(source)),
        kernel_(std::move(kernel)),
        target_(std::move(target)),
        kept_positions_(std::move(kept_positions)),
        images_(std::move(images)) {}

  const PcGroup& source() const { return source_; }
  const PcGroup& target() const { return target_; }
  const Subgroup& kernel() const { return kernel_; }

  // Image of a source element.
  Element project(const Element& a) const {
    Element r = coset_representative(kernel_, a);
    Element out = target_->identity();
    for (std::size_t k = 0; k < kept_positions_.size(); ++k)
      out.e[k] = r.e[std::size_t(kept_positions_[k] - 1)];
    return out;
  }

  // Canonical preimage; project(section(x)) == x.
  Element section(const Element& a) const {
    Element out = source_->identity();
    for (std::size_t k = 0; k < kept_positions_.size(); ++k)
      out.e[std::size_t(kept_positions_[k] - 1)] = a.e[k];
    return out;
  }

  Subgroup project_subgroup(const Subgroup& H) const {
    std::vector<Element> gens;
    for (const auto& u : H.igs()) gens.push_back(project(u));
    return subgroup_closure(target_, gens);
  }

  // Full preimage of a subgroup of the target.
  Subgroup preimage_subgroup(const Subgroup& Hbar) const {
    std::vector<Element> gens = kernel_.igs();
    for (const auto& u : Hbar.igs()) gens.push_back(section(u));
    Subgroup pre = subgroup_closure(source_, gens);
    if (pre.order() != Hbar.order() * kernel_.order())
      fail("preimage_subgroup: order mismatch");
    return pre;
  }

 private:
  PcGroup source_;
  Subgroup kernel_;
  PcGroup target_;
  std::vector<int> kept_positions_;  // source positions kept in the quotient
  std::vector<Element> images_;      // image of every source generator
};

inline QuotientMap quotient(const PcGroup& G, const Subgroup& N) {
  if (N.parent() != G) fail("quotient: kernel has a different parent");
  if (!is_normal_in_group(N)) fail("quotient: kernel is not normal");

  std::vector<bool> taken(std::size_t(G->n()) + 1, false);
  for (int l : N.leading_indices()) taken[std::size_t(l)] = true;
  std::vector<int> kept;
  for (int i = 1; i <= G->n(); ++i)
    if (!taken[std::size_t(i)]) kept.push_back(i);

  const int m = int(kept.size());
  PcData data;
  data.p = G->p();
  data.n = m;
  data.resize_relations();
  if (!G->names().empty()) {
    for (int k : kept) data.names.push_back(G->names()[std::size_t(k - 1)]);
  }

  auto to_target_word = [&](const Element& r) {
    Word w;
    for (int k = 0; k < m; ++k) {
      int e = r.exp_at(kept[std::size_t(k)]);
      if (e != 0) w.push_back({k + 1, e});
    }
    return w;
  };

  for (int k = 0; k < m; ++k) {
    Element r = coset_representative(N, G->pow(G->generator(kept[std::size_t(k)]), G->p()));
    data.set_power(k + 1, to_target_word(r));
  }
  for (int k2 = 1; k2 < m; ++k2)
    for (int k1 = 0; k1 < k2; ++k1) {
      Element c = G->commutator(G->generator(kept[std::size_t(k2)]),
                                G->generator(kept[std::size_t(k1)]));
      Element r = coset_representative(N, c);
      data.set_comm(k2 + 1, k1 + 1, to_target_word(r));
    }

  PcGroup target = PcPresentation::create(data);  // throws if not consistent

  std::vector<Element> images;
  QuotientMap q(G, N, target, kept, {});
  for (int i = 1; i <= G->n(); ++i) images.push_back(q.project(G->generator(i)));
  QuotientMap out(G, N, target, kept, images);

  // Verify the map on all defining relations and the stated kernel.
  for (int i = 1; i <= G->n(); ++i) {
    Element lhs = target->pow(out.project(G->generator(i)), G->p());
    Element rhs = out.project(G->pow(G->generator(i), G->p()));
    if (lhs != rhs) fail("quotient: power relation image mismatch");
  }
  for (int j = 2; j <= G->n(); ++j)
    for (int i = 1; i < j; ++i) {
      Element lhs = target->commutator(out.project(G->generator(j)), out.project(G->generator(i)));
      Element rhs = out.project(G->commutator(G->generator(j), G->generator(i)));
      if (lhs != rhs) fail("quotient: commutator relation image mismatch");
    }
  for (const auto& u : N.igs())
    if (!out.project(u).is_identity()) fail("quotient: kernel element with nontrivial image");

  return out;
}

// {z in G : [z, t] in modulus for all t in target}.  The modulus must be
// normal in G; the condition then only needs to be imposed on the igs
// generators of `target` and the solution set is a subgroup.
inline Subgroup condition_subgroup(const PcGroup& G, const Subgroup& target,
                                   const Subgroup& modulus) {
  if (target.parent() != G || modulus.parent() != G)
    fail("condition_subgroup: mixed parents");
  if (!is_normal_in_group(modulus))
    fail("condition_subgroup: modulus is not normal in G");

  QuotientMap q = quotient(G, modulus);
  Subgroup C = full_group(q.target());
  for (const auto& t : target.igs()) C = centralizer_in(C, q.project(t));
  Subgroup result = q.preimage_subgroup(C);

  // The defining condition must hold on the generators of the result.
  for (const auto& z : result.igs())
    for (const auto& t : target.igs())
      if (!modulus.contains(G->commutator(z, t)))
        fail("condition_subgroup: hypothesis check failed on result");
  return result;
}

}  // namespace pgcl
