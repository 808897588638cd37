// Builders for the concrete groups and generic families used throughout:
// elementary abelian groups, extraspecial groups, free class-2 exponent-p
// quotients, the order-p^6 maximal-class example, and polycyclic
// extensions given by automorphism action tables.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgcl/series.hpp"

namespace pgcl {

inline PcGroup build_elementary_abelian(int p, int n) {
  PcData data;
  data.p = p;
  data.n = n;
  data.resize_relations();
  return PcPresentation::create(data);
}

// F_d / gamma_3(F_d) F_d^p: generators a_1..a_d, then one central generator
// c_{ij} = [a_j, a_i] per pair i < j, in lexicographic pair order.
struct FreeClass2Group {
  PcGroup group;
  int d = 0;
  std::vector<std::pair<int, int>> pairs;  // pairs[t] = (i, j), generator d + t + 1

  int pair_position(int i, int j) const {
    for (std::size_t t = 0; t < pairs.size(); ++t)
      if (pairs[t] == std::make_pair(i, j)) return d + int(t) + 1;
    fail("pair_position: no such pair");
  }

  // Element of G' given by an alternating exponent matrix entry list:
  // product of c_{ij}^{m_ij}.
  Element bivector(const std::vector<std::vector<long long>>& m) const {
    std::vector<long long> exps(std::size_t(group->n()), 0);
    for (std::size_t t = 0; t < pairs.size(); ++t)
      exps[std::size_t(d + int(t))] = m[std::size_t(pairs[t].first - 1)][std::size_t(pairs[t].second - 1)];
    return group->element(exps);
  }

  // d x d alternating matrix of a derived-subgroup element.
  std::vector<std::vector<int>> matrix_of(const Element& c) const {
    const int p = group->p();
    std::vector<std::vector<int>> m(std::size_t(d), std::vector<int>(std::size_t(d), 0));
    for (int i = 1; i <= d; ++i)
      if (c.exp_at(i) != 0) fail("matrix_of: element is not in the derived subgroup");
    for (std::size_t t = 0; t < pairs.size(); ++t) {
      int e = c.exp_at(d + int(t) + 1);
      auto [i, j] = pairs[t];
      m[std::size_t(i - 1)][std::size_t(j - 1)] = e;
      m[std::size_t(j - 1)][std::size_t(i - 1)] = (p - e) % p;
    }
    return m;
  }
};

inline FreeClass2Group build_free_class2(int p, int d) {
  if (d < 1) fail("build_free_class2: d must be >= 1");
  FreeClass2Group out;
  out.d = d;
  for (int i = 1; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j) out.pairs.emplace_back(i, j);

  PcData data;
  data.p = p;
  data.n = d + int(out.pairs.size());
  data.resize_relations();
  for (int i = 1; i <= d; ++i) data.names.push_back("a" + std::to_string(i));
  for (auto [i, j] : out.pairs)
    data.names.push_back("c" + std::to_string(i) + std::to_string(j));
  for (std::size_t t = 0; t < out.pairs.size(); ++t) {
    auto [i, j] = out.pairs[t];
    data.set_comm(j, i, Word{{d + int(t) + 1, 1}});
  }
  out.group = PcPresentation::create(data);
  return out;
}

inline PcGroup build_heisenberg(int p) { return build_free_class2(p, 2).group; }

// Extraspecial group of order p^3: exponent p (Heisenberg) or exponent p^2
// (the group with presentation <a,b | a^{p^2} = b^p = 1, a^b = a^{1+p}>).
inline PcGroup build_extraspecial(int p, bool exponent_p) {
  if (exponent_p) return build_heisenberg(p);
  PcData data;
  data.p = p;
  data.n = 3;
  data.resize_relations();
  data.names = {"a", "b", "ap"};
  data.set_power(1, Word{{3, 1}});
  data.set_comm(2, 1, Word{{3, p - 1}});
  return PcPresentation::create(data);
}

// Adjoining one left-most generator per entry to a base presentation.  The
// adjoined generators commute pairwise; each acts on the base by the given
// conjugation images (words in base numbering) and may have a designated
// p-th power (word in final numbering, supported to its right).
struct AdjoinedGenerator {
  std::string name;
  std::vector<Word> base_images;  // size base->n(); image of each base generator
  Word power;                     // empty = trivial
};

inline PcGroup build_semidirect(const PcGroup& base, const std::vector<AdjoinedGenerator>& adjoined) {
  const int k = int(adjoined.size());
  const int nb = base->n();
  const int p = base->p();

  // Validate the action tables in base arithmetic first.
  for (const auto& adj : adjoined) {
    if (int(adj.base_images.size()) != nb)
      fail("build_semidirect: action table has wrong size for '" + adj.name + "'");
    std::vector<Element> images;
    for (const auto& w : adj.base_images) images.push_back(base->collect(w));
    // Conjugation must fix each <g_j, ..., g_nb> layer: [g_j, t] supported > j.
    for (int j = 1; j <= nb; ++j) {
      Element tail = base->mul(base->inv(base->generator(j)), images[std::size_t(j - 1)]);
      if (!tail.is_identity() && tail.leading() <= j)
        fail("build_semidirect: image of base generator " + std::to_string(j) +
             " under '" + adj.name + "' violates the pc ordering");
    }
    auto apply = [&](const Element& a) {
      Element out = base->identity();
      for (int j = 1; j <= nb; ++j)
        if (a.exp_at(j) != 0) out = base->mul(out, base->pow(images[std::size_t(j - 1)], a.exp_at(j)));
      return out;
    };
    // Relation preservation.
    for (int j = 1; j <= nb; ++j) {
      Element lhs = base->pow(images[std::size_t(j - 1)], p);
      Element rhs = apply(base->pow(base->generator(j), p));
      if (lhs != rhs)
        fail("build_semidirect: action of '" + adj.name + "' breaks the power relation of g" +
             std::to_string(j));
    }
    for (int j2 = 2; j2 <= nb; ++j2)
      for (int j1 = 1; j1 < j2; ++j1) {
        Element lhs = base->commutator(images[std::size_t(j2 - 1)], images[std::size_t(j1 - 1)]);
        Element rhs = apply(base->commutator(base->generator(j2), base->generator(j1)));
        if (lhs != rhs)
          fail("build_semidirect: action of '" + adj.name + "' breaks the relation [g" +
               std::to_string(j2) + ",g" + std::to_string(j1) + "]");
      }
    // Bijectivity: the images must generate the base.
    if (subgroup_closure(base, images).order() != base->order())
      fail("build_semidirect: action of '" + adj.name + "' is not surjective");
    // Without a designated power the action must have order dividing p.
    if (adj.power.empty()) {
      for (int j = 1; j <= nb; ++j) {
        Element a = base->generator(j);
        for (int t = 0; t < p; ++t) a = apply(a);
        if (a != base->generator(j))
          fail("build_semidirect: action of '" + adj.name + "' does not have p-power order");
      }
    }
  }

  PcData data;
  data.p = p;
  data.n = k + nb;
  data.resize_relations();
  for (const auto& adj : adjoined) data.names.push_back(adj.name);
  for (int j = 1; j <= nb; ++j) data.names.push_back(base->generator_name(j));

  auto shift_element = [&](const Element& a) {
    Word w;
    for (int j = 1; j <= nb; ++j)
      if (a.exp_at(j) != 0) w.push_back({j + k, a.exp_at(j)});
    return w;
  };

  for (int i = 1; i <= k; ++i) {
    const auto& adj = adjoined[std::size_t(i - 1)];
    data.set_power(i, adj.power);
    for (const auto& s : adj.power)
      if (s.gen <= i) fail("build_semidirect: power word of '" + adj.name + "' not right-supported");
    for (int j = 1; j <= nb; ++j) {
      Element img = base->collect(adj.base_images[std::size_t(j - 1)]);
      Element tail = base->mul(base->inv(base->generator(j)), img);
      data.set_comm(j + k, i, shift_element(tail));
    }
  }
  for (int j = 1; j <= nb; ++j) {
    Element pw = base->power_relation(j);
    data.set_power(j + k, shift_element(pw));
  }
  for (int j2 = 2; j2 <= nb; ++j2)
    for (int j1 = 1; j1 < j2; ++j1)
      data.set_comm(j2 + k, j1 + k, shift_element(base->comm_relation(j2, j1)));

  ConsistencyReport rep = check_consistency(data);
  if (!rep.ok) fail("build_semidirect: extension rejected: " + rep.failure);
  return PcPresentation::create(data);
}

// The order-p^6 maximal-class example: G = (A x B) x <x> with
// A = C_p^3, B = C_p^2, actions
//   a1^b1 = a1 a3^{-1}, a2^b1 = a2 a3, a1^b2 = a1 a3^{-1},
//   a1^x = a1 a2^{-1},  b1^x = b1 b2^{-1}, b2^x = b2 a1^{-1},
// all other images trivial.  The pc commutator relations below are read
// off via [g, t] = g^{-1} g^t and machine-verified against the conjugation
// table by the construction tests.
inline PcGroup build_huppert_example(int p) {
  if (p < 5) fail("build_huppert_example: requires p >= 5");
  PcData data;
  data.p = p;
  data.n = 6;
  data.resize_relations();
  data.names = {"x", "b1", "b2", "a1", "a2", "a3"};
  // positions: x=1, b1=2, b2=3, a1=4, a2=5, a3=6
  data.set_comm(2, 1, Word{{3, p - 1}});  // [b1, x] = b2^{-1}
  data.set_comm(3, 1, Word{{4, p - 1}});  // [b2, x] = a1^{-1}
  data.set_comm(4, 1, Word{{5, p - 1}});  // [a1, x] = a2^{-1}
  data.set_comm(4, 2, Word{{6, p - 1}});  // [a1, b1] = a3^{-1}
  data.set_comm(5, 2, Word{{6, 1}});      // [a2, b1] = a3
  data.set_comm(4, 3, Word{{6, p - 1}});  // [a1, b2] = a3^{-1}
  return PcPresentation::create(data);
}

// Rebuild of the same group through the two-stage extension, used to
// cross-check build_semidirect against the direct presentation.
inline PcGroup build_huppert_via_semidirect(int p) {
  PcGroup A = build_elementary_abelian(p, 3);  // a1, a2, a3
  AdjoinedGenerator b1{"b1",
                       {Word{{1, 1}, {3, p - 1}}, Word{{2, 1}, {3, 1}}, Word{{3, 1}}},
                       {}};
  AdjoinedGenerator b2{"b2",
                       {Word{{1, 1}, {3, p - 1}}, Word{{2, 1}}, Word{{3, 1}}},
                       {}};
  PcGroup Y = build_semidirect(A, {b1, b2});
  // Y numbering: b1=1, b2=2, a1=3, a2=4, a3=5
  AdjoinedGenerator x{"x",
                      {Word{{1, 1}, {2, p - 1}},  // b1 -> b1 b2^{-1}
                       Word{{2, 1}, {3, p - 1}},  // b2 -> b2 a1^{-1}
                       Word{{3, 1}, {4, p - 1}},  // a1 -> a1 a2^{-1}
                       Word{{4, 1}}, Word{{5, 1}}},
                      {}};
  return build_semidirect(Y, {x});
}

// Class-2 group of order p^6 with cyclic derived subgroup of order p^2:
// C_{p^2} x C_{p^2} base <y, c> extended by <x> of order p^2 acting by
// y -> y c.  Corpus name "sd-c25" at p = 5.
inline PcGroup build_class2_cyclic_derived(int p) {
  PcData base_data;
  base_data.p = p;
  base_data.n = 4;
  base_data.resize_relations();
  base_data.names = {"y", "c", "yp", "cp"};
  base_data.set_power(1, Word{{3, 1}});
  base_data.set_power(2, Word{{4, 1}});
  PcGroup base = PcPresentation::create(base_data);

  AdjoinedGenerator x{"x",
                      {Word{{1, 1}, {2, 1}}, Word{{2, 1}}, Word{{3, 1}, {4, 1}}, Word{{4, 1}}},
                      Word{{2, 1}}};  // x^p = t2
  AdjoinedGenerator t2{"xp",
                       {Word{{1, 1}, {4, 1}}, Word{{2, 1}}, Word{{3, 1}}, Word{{4, 1}}},
                       {}};
  return build_semidirect(base, {x, t2});
}

// Class-2 group of order p^10 with derived subgroup C_{p^2} x C_{p^2}:
// base <y, z, a, b> = C_{p^2}^4 extended by <x> of order p^2 acting by
// y -> y a, z -> z b.  Corpus name "sd-c25sq" at p = 5.
inline PcGroup build_class2_c25sq(int p) {
  PcData base_data;
  base_data.p = p;
  base_data.n = 8;
  base_data.resize_relations();
  base_data.names = {"y", "z", "a", "b", "yp", "zp", "ap", "bp"};
  for (int i = 1; i <= 4; ++i) base_data.set_power(i, Word{{i + 4, 1}});
  PcGroup base = PcPresentation::create(base_data);

  AdjoinedGenerator x{"x",
                      {Word{{1, 1}, {3, 1}}, Word{{2, 1}, {4, 1}}, Word{{3, 1}}, Word{{4, 1}},
                       Word{{5, 1}, {7, 1}}, Word{{6, 1}, {8, 1}}, Word{{7, 1}}, Word{{8, 1}}},
                      Word{{2, 1}}};
  AdjoinedGenerator t2{"xp",
                       {Word{{1, 1}, {7, 1}}, Word{{2, 1}, {8, 1}}, Word{{3, 1}}, Word{{4, 1}},
                        Word{{5, 1}}, Word{{6, 1}}, Word{{7, 1}}, Word{{8, 1}}},
                       {}};
  return build_semidirect(base, {x, t2});
}

// C_p^3 extended by a single Jordan block: t acts by a1 -> a1 a2,
// a2 -> a2 a3.  Maximal class of order p^4.  Corpus name "sd-jordan".
inline PcGroup build_jordan_block_group(int p) {
  PcGroup A = build_elementary_abelian(p, 3);
  AdjoinedGenerator t{"t",
                      {Word{{1, 1}, {2, 1}}, Word{{2, 1}, {3, 1}}, Word{{3, 1}}},
                      {}};
  return build_semidirect(A, {t});
}

// A well-formed but inconsistent presentation: [g2,g1] = g3 together with
// g3^p = g4 forces [g2,g1] to have order p^2 while g1, g2 have order p.
inline PcData planted_inconsistent_data(int p) {
  PcData data;
  data.p = p;
  data.n = 4;
  data.resize_relations();
  data.set_comm(2, 1, Word{{3, 1}});
  data.set_power(3, Word{{4, 1}});
  return data;
}

}  // namespace pgcl
